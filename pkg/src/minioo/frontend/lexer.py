from __future__ import annotations

from dataclasses import dataclass

from .ast import Span
from .errors import LexError

KEYWORD = "keyword"
IDENT = "identifier"
INT = "integer-literal"
STRING = "string-literal"
PUNCT = "punctuation"
EOF = "end-of-input"

KEYWORDS = frozenset(
    """class export public private virtual friend ref constref let if else while
    return assert new int bool unit list true false nil cons head tail is_nil""".split()
)

# longest first so that "==" wins over "="
PUNCTUATION = (
    "==", "!=", "<=", ">=", "&&", "||",
    "{", "}", "(", ")", ";", ":", ",", ".", "=", "<", ">", "+", "-", "*", "/", "%", "!",
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span

    def is_(self, kind: str, text: str | None = None) -> bool:
        return self.kind == kind and (text is None or self.text == text)

    def __repr__(self) -> str:
        return f"{self.kind}({self.text})"


def tokenize(source: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def span(length: int) -> Span:
        return Span(file, line, col, max(length, 1))

    while i < n:
        c = source[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if c.isascii() and (c.isalpha() or c == "_"):
            j = i + 1
            while j < n and source[j].isascii() and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            tokens.append(Token(KEYWORD if text in KEYWORDS else IDENT, text, span(j - i)))
            col += j - i
            i = j
            continue
        if c.isascii() and c.isdigit():
            j = i + 1
            while j < n and source[j].isascii() and source[j].isdigit():
                j += 1
            tokens.append(Token(INT, source[i:j], span(j - i)))
            col += j - i
            i = j
            continue
        if c == '"':
            j = i + 1
            while j < n and source[j] != '"':
                if source[j] == "\n":
                    raise LexError("unterminated string literal", span(1))
                j += 2 if source[j] == "\\" else 1
            if j >= n:
                raise LexError("unterminated string literal", span(1))
            tokens.append(Token(STRING, source[i : j + 1], span(j + 1 - i)))
            col += j + 1 - i
            i = j + 1
            continue
        for p in PUNCTUATION:
            if source.startswith(p, i):
                tokens.append(Token(PUNCT, p, span(len(p))))
                i += len(p)
                col += len(p)
                break
        else:
            raise LexError(f"unexpected character {c!r}", span(1))
    tokens.append(Token(EOF, "", span(1)))
    return tokens


def string_value(text: str) -> str:
    """Decode the text of a string-literal token (``\\"`` and ``\\\\`` escapes)."""
    out, i, body = [], 0, text[1:-1]
    while i < len(body):
        if body[i] == "\\" and i + 1 < len(body):
            out.append(body[i + 1])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


def string_text(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
