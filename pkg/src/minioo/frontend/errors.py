from __future__ import annotations

from .ast import Span


class FrontendError(Exception):
    """Any failure turning source text into a resolved program."""

    kind = "error"

    def __init__(self, message: str, span: Span):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        return f"{self.span}: {self.kind}: {self.message}"


class LexError(FrontendError):
    kind = "lex error"


class ParseError(FrontendError):
    kind = "parse error"

    def __init__(self, message: str, span: Span, expected: frozenset[str] = frozenset()):
        super().__init__(message, span)
        self.expected = expected


class ResolveError(FrontendError):
    kind = "resolve error"


class ResolveErrors(Exception):
    """All resolve errors of one program, in deterministic order."""

    def __init__(self, errors: list[ResolveError]):
        super().__init__("\n".join(str(e) for e in errors))
        self.errors = errors
