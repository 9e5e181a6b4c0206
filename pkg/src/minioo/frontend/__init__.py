"""MiniOO frontend: tokens, syntax tree, parser, resolver, printer."""

from .ast import Program, Span
from .errors import FrontendError, LexError, ParseError, ResolveError, ResolveErrors
from .lexer import Token, tokenize
from .parser import parse_program, parse_source, parse_sources
from .printer import pretty_print
from .resolver import Callable, ResolvedProgram, resolve


def load(paths, read=None) -> ResolvedProgram:
    """Parse and resolve the concatenation of ``paths`` (in order)."""
    sources = []
    for p in paths:
        if read is None:
            with open(p, encoding="utf-8") as fh:
                sources.append((str(p), fh.read()))
        else:
            sources.append((str(p), read(p)))
    return resolve(parse_sources(sources))


__all__ = [
    "Callable", "FrontendError", "LexError", "ParseError", "Program", "ResolveError",
    "ResolveErrors", "ResolvedProgram", "Span", "Token", "load", "parse_program",
    "parse_source", "parse_sources", "pretty_print", "resolve", "tokenize",
]
