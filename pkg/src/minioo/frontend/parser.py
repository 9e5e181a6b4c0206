"""Recursive-descent parser for MiniOO."""

from __future__ import annotations

from typing import Optional

from . import ast
from .errors import ParseError
from .lexer import EOF, IDENT, INT, KEYWORD, PUNCT, STRING, Token, string_value, tokenize

PRIMITIVE_TYPES = ("int", "bool", "unit", "list")
BUILTIN_OPS = {"cons": 2, "head": 1, "tail": 1, "is_nil": 1}

# binary operators from loosest to tightest; all left-associative
BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)


class Parser:
    def __init__(self, tokens: list[Token]):
        if not tokens or tokens[-1].kind != EOF:
            raise ValueError("token stream must end with end-of-input")
        self.tokens = tokens
        self.pos = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.tok.is_(kind, text)

    def at_punct(self, text: str) -> bool:
        return self.tok.is_(PUNCT, text)

    def at_kw(self, text: str) -> bool:
        return self.tok.is_(KEYWORD, text)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != EOF:
            self.pos += 1
        return t

    def fail(self, *expected: str) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == EOF else repr(t.text)
        exp = frozenset(expected)
        return ParseError(f"expected {' or '.join(sorted(exp))}, found {found}", t.span, exp)

    def expect_punct(self, text: str) -> Token:
        if not self.at_punct(text):
            raise self.fail(repr(text))
        return self.advance()

    def expect_kw(self, text: str) -> Token:
        if not self.at_kw(text):
            raise self.fail(repr(text))
        return self.advance()

    def expect_ident(self) -> Token:
        if not self.at(IDENT):
            raise self.fail("identifier")
        return self.advance()

    def at_type(self) -> bool:
        return self.at(IDENT) or (self.tok.kind == KEYWORD and self.tok.text in PRIMITIVE_TYPES)

    def parse_type(self) -> str:
        if not self.at_type():
            raise self.fail("type")
        return self.advance().text

    # -- declarations --------------------------------------------------------

    def parse_program(self) -> ast.Program:
        decls: list[ast.Decl] = []
        while not self.at(EOF):
            if self.at_kw("export") or self.at_kw("class"):
                decls.append(self.parse_class())
            elif self.at_type():
                decls.append(self.parse_function())
            else:
                raise self.fail("'class'", "'export'", "type")
        return ast.Program(decls)

    def parse_class(self) -> ast.ClassDecl:
        exported = False
        if self.at_kw("export"):
            self.advance()
            exported = True
        self.expect_kw("class")
        name_tok = self.expect_ident()
        base: Optional[str] = None
        base_span = None
        if self.at_punct(":"):
            self.advance()
            base_tok = self.expect_ident()
            base, base_span = base_tok.text, base_tok.span
        self.expect_punct("{")
        cls = ast.ClassDecl(name_tok.text, exported, base, span=name_tok.span, base_span=base_span)
        while not self.at_punct("}"):
            if self.at_kw("public") or self.at_kw("private"):
                self.parse_section(cls)
            elif self.at_kw("friend"):
                self.advance()
                t = self.expect_ident()
                self.expect_punct(";")
                cls.friends.append(ast.Friend(t.text, t.span))
            elif self.at(IDENT) and self.peek().is_(PUNCT, "("):
                cls.ctors.append(self.parse_ctor(cls))
            else:
                raise self.fail("'public'", "'private'", "'friend'", "constructor", "'}'")
        self.expect_punct("}")
        return cls

    def _at_member(self) -> bool:
        if self.at_kw("virtual"):
            return True
        return self.at_type() and self.peek().kind == IDENT

    def parse_section(self, cls: ast.ClassDecl) -> None:
        visibility = self.advance().text
        self.expect_punct(":")
        while self._at_member():
            virtual_span = None
            if self.at_kw("virtual"):
                virtual_span = self.advance().span
            type_ = self.parse_type()
            name = self.expect_ident()
            if virtual_span is None and self.at_punct(";"):
                self.advance()
                cls.fields.append(ast.FieldDecl(name.text, type_, visibility, name.span))
                continue
            params = self.parse_params()
            body = self.parse_block()
            cls.methods.append(
                ast.MethodDecl(
                    name.text, params, type_, virtual_span is not None, visibility, body,
                    span=name.span, virtual_span=virtual_span,
                )
            )

    def parse_ctor(self, cls: ast.ClassDecl) -> ast.CtorDecl:
        name = self.expect_ident()
        if name.text != cls.name:
            raise ParseError(
                f"constructor name {name.text!r} does not match class {cls.name!r}",
                name.span, frozenset({repr(cls.name)}),
            )
        params = self.parse_params()
        base_init: Optional[ast.Init] = None
        field_inits: list[ast.Init] = []
        if self.at_punct(":"):
            self.advance()
            while True:
                t = self.expect_ident()
                self.expect_punct("(")
                args = self.parse_args()
                init = ast.Init(t.text, args, t.span)
                if cls.base is not None and t.text == cls.base:
                    if base_init is not None or field_inits:
                        raise ParseError("base constructor call must come first", t.span)
                    base_init = init
                else:
                    field_inits.append(init)
                if not self.at_punct(","):
                    break
                self.advance()
        body = self.parse_block()
        return ast.CtorDecl(params, base_init, field_inits, body, name.span)

    def parse_function(self) -> ast.FunDecl:
        type_ = self.parse_type()
        name = self.expect_ident()
        params = self.parse_params()
        body = self.parse_block()
        return ast.FunDecl(name.text, params, type_, body, name.span)

    def parse_params(self) -> list[ast.Param]:
        self.expect_punct("(")
        params: list[ast.Param] = []
        if not self.at_punct(")"):
            while True:
                mode = ast.VALUE
                if self.at_kw("ref") or self.at_kw("constref"):
                    mode = self.advance().text
                type_ = self.parse_type()
                name = self.expect_ident()
                params.append(ast.Param(name.text, type_, mode, name.span))
                if not self.at_punct(","):
                    break
                self.advance()
        self.expect_punct(")")
        return params

    # -- statements ----------------------------------------------------------

    def parse_block(self) -> list[ast.Stmt]:
        self.expect_punct("{")
        stmts: list[ast.Stmt] = []
        while not self.at_punct("}"):
            if self.at(EOF):
                raise self.fail("'}'")
            stmts.append(self.parse_stmt())
        self.advance()
        return stmts

    def parse_stmt(self) -> ast.Stmt:
        t = self.tok
        if self.at_kw("let"):
            self.advance()
            name = self.expect_ident()
            self.expect_punct("=")
            value = self.parse_expr()
            self.expect_punct(";")
            return ast.Let(name.text, value, name.span)
        if self.at_kw("if"):
            self.advance()
            self.expect_punct("(")
            cond = self.parse_expr()
            self.expect_punct(")")
            then = self.parse_block()
            orelse = None
            if self.at_kw("else"):
                self.advance()
                orelse = self.parse_block()
            return ast.If(cond, then, orelse, t.span)
        if self.at_kw("while"):
            self.advance()
            self.expect_punct("(")
            cond = self.parse_expr()
            self.expect_punct(")")
            return ast.While(cond, self.parse_block(), t.span)
        if self.at_kw("return"):
            self.advance()
            value = None if self.at_punct(";") else self.parse_expr()
            self.expect_punct(";")
            return ast.Return(value, t.span)
        if self.at_kw("assert"):
            self.advance()
            self.expect_punct("(")
            cond = self.parse_expr()
            self.expect_punct(")")
            self.expect_punct(";")
            return ast.Assert(cond, t.span)
        expr = self.parse_expr()
        if self.at_punct("="):
            eq = self.advance()
            if not isinstance(expr, (ast.Var, ast.FieldAccess)):
                raise ParseError("assignment target must be a variable or a field", eq.span)
            value = self.parse_expr()
            self.expect_punct(";")
            return ast.Assign(expr, value, eq.span)
        self.expect_punct(";")
        return ast.ExprStmt(expr, t.span)

    # -- expressions ---------------------------------------------------------

    def parse_expr(self) -> ast.Expr:
        return self.parse_binary(0)

    def parse_binary(self, level: int) -> ast.Expr:
        if level == len(BINARY_LEVELS):
            return self.parse_unary()
        left = self.parse_binary(level + 1)
        while self.tok.kind == PUNCT and self.tok.text in BINARY_LEVELS[level]:
            op = self.advance()
            right = self.parse_binary(level + 1)
            left = ast.Binary(op.text, left, right, op.span)
        return left

    def parse_unary(self) -> ast.Expr:
        if self.at_punct("!") or self.at_punct("-"):
            op = self.advance()
            return ast.Unary(op.text, self.parse_unary(), op.span)
        return self.parse_postfix()

    def parse_postfix(self) -> ast.Expr:
        e = self.parse_primary()
        while self.at_punct("."):
            self.advance()
            name = self.expect_ident()
            if self.at_punct("("):
                self.advance()
                e = ast.MethodCall(e, name.text, self.parse_args(), name.span)
            else:
                e = ast.FieldAccess(e, name.text, name.span)
        return e

    def parse_args(self) -> list[ast.Expr]:
        """Arguments after an already-consumed '(' up to and including ')'."""
        args: list[ast.Expr] = []
        if not self.at_punct(")"):
            while True:
                args.append(self.parse_expr())
                if not self.at_punct(","):
                    break
                self.advance()
        self.expect_punct(")")
        return args

    def parse_primary(self) -> ast.Expr:
        t = self.tok
        if t.kind == INT:
            self.advance()
            return ast.IntLit(int(t.text), t.span)
        if t.kind == STRING:
            self.advance()
            return ast.StrLit(string_value(t.text), t.span)
        if t.kind == KEYWORD:
            if t.text in ("true", "false"):
                self.advance()
                return ast.BoolLit(t.text == "true", t.span)
            if t.text == "nil":
                self.advance()
                return ast.NilLit(t.span)
            if t.text == "new":
                self.advance()
                cls = self.expect_ident()
                self.expect_punct("(")
                return ast.New(cls.text, self.parse_args(), cls.span)
            if t.text in BUILTIN_OPS:
                self.advance()
                self.expect_punct("(")
                args = self.parse_args()
                if len(args) != BUILTIN_OPS[t.text]:
                    raise ParseError(
                        f"{t.text} takes {BUILTIN_OPS[t.text]} argument(s), got {len(args)}", t.span
                    )
                return ast.Builtin(t.text, args, t.span)
        if t.kind == IDENT:
            self.advance()
            if self.at_punct("("):
                self.advance()
                return ast.Call(t.text, self.parse_args(), t.span)
            return ast.Var(t.text, t.span)
        if self.at_punct("("):
            self.advance()
            e = self.parse_expr()
            self.expect_punct(")")
            return e
        raise self.fail("expression")


def parse_program(tokens: list[Token]) -> ast.Program:
    return Parser(tokens).parse_program()


def parse_source(source: str, file: str = "<input>") -> ast.Program:
    return parse_program(tokenize(source, file))


def parse_sources(sources: list[tuple[str, str]]) -> ast.Program:
    """Parse several ``(file, text)`` pairs as one concatenated program."""
    tokens: list[Token] = []
    for file, text in sources:
        tokens.extend(tokenize(text, file)[:-1])
    last_file = sources[-1][0] if sources else "<input>"
    eof_span = tokens[-1].span if tokens else ast.Span(last_file, 1, 1)
    tokens.append(Token(EOF, "", eof_span))
    return parse_program(tokens)
