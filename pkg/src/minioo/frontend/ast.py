"""MiniOO syntax tree.

Spans and resolver annotations (``static_type``, ``virtual``,
``ctor_index`` ...) never take part in equality, so two trees compare equal
when they have the same structure regardless of layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


@dataclass(frozen=True)
class Span:
    file: str
    line: int
    col: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.col < 1 or self.length < 1:
            raise ValueError(f"invalid span {self.file}:{self.line}:{self.col}+{self.length}")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


NO_SPAN = Span("<builtin>", 1, 1, 1)


def _span() -> Span:
    return field(default=NO_SPAN, compare=False, repr=False)


# -- expressions -------------------------------------------------------------


@dataclass(eq=True)
class Expr:
    pass


@dataclass(eq=True)
class IntLit(Expr):
    value: int
    span: Span = _span()
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class BoolLit(Expr):
    value: bool
    span: Span = _span()
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class StrLit(Expr):
    value: str
    span: Span = _span()
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class NilLit(Expr):
    span: Span = _span()
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Var(Expr):
    name: str
    span: Span = _span()
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class FieldAccess(Expr):
    obj: Expr
    name: str
    span: Span = _span()  # at the field name
    static_type: Optional[str] = field(default=None, compare=False, repr=False)
    owner: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class MethodCall(Expr):
    obj: Expr
    name: str
    args: list[Expr]
    span: Span = _span()  # at the method name
    static_type: Optional[str] = field(default=None, compare=False, repr=False)
    # filled by resolve: static receiver class, defining class, dispatch mode
    receiver_class: Optional[str] = field(default=None, compare=False, repr=False)
    owner: Optional[str] = field(default=None, compare=False, repr=False)
    virtual: Optional[bool] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Call(Expr):
    name: str
    args: list[Expr]
    span: Span = _span()
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class New(Expr):
    cls: str
    args: list[Expr]
    span: Span = _span()  # at the class name
    static_type: Optional[str] = field(default=None, compare=False, repr=False)
    ctor_index: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Builtin(Expr):
    """cons / head / tail / is_nil."""

    op: str
    args: list[Expr]
    span: Span = _span()
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr
    span: Span = _span()  # at the operator
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Unary(Expr):
    op: str
    operand: Expr
    span: Span = _span()
    static_type: Optional[str] = field(default=None, compare=False, repr=False)


# -- statements --------------------------------------------------------------


@dataclass(eq=True)
class Stmt:
    pass


@dataclass(eq=True)
class Let(Stmt):
    name: str
    value: Expr
    span: Span = _span()  # at the bound name


@dataclass(eq=True)
class Assign(Stmt):
    target: Union[Var, FieldAccess]
    value: Expr
    span: Span = _span()  # at the '=' token


@dataclass(eq=True)
class If(Stmt):
    cond: Expr
    then: list[Stmt]
    orelse: Optional[list[Stmt]] = None
    span: Span = _span()


@dataclass(eq=True)
class While(Stmt):
    cond: Expr
    body: list[Stmt]
    span: Span = _span()


@dataclass(eq=True)
class Return(Stmt):
    value: Optional[Expr] = None
    span: Span = _span()


@dataclass(eq=True)
class Assert(Stmt):
    cond: Expr
    span: Span = _span()


@dataclass(eq=True)
class ExprStmt(Stmt):
    expr: Expr
    span: Span = _span()


# -- declarations ------------------------------------------------------------

VALUE, REF, CONSTREF = "value", "ref", "constref"
PUBLIC, PRIVATE = "public", "private"


@dataclass(eq=True)
class Param:
    name: str
    type: str
    mode: str = VALUE
    span: Span = _span()


@dataclass(eq=True)
class FieldDecl:
    name: str
    type: str
    visibility: str
    span: Span = _span()  # at the field name


@dataclass(eq=True)
class MethodDecl:
    name: str
    params: list[Param]
    return_type: str
    is_virtual: bool
    visibility: str
    body: list[Stmt]
    span: Span = _span()  # at the method name
    virtual_span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Init:
    """One entry of a constructor initializer list: ``NAME(args)``."""

    name: str
    args: list[Expr]
    span: Span = _span()
    ctor_index: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class CtorDecl:
    params: list[Param]
    base_init: Optional[Init]
    field_inits: list[Init]
    body: list[Stmt]
    span: Span = _span()  # at the constructor name


@dataclass(eq=True)
class Friend:
    name: str
    span: Span = _span()


@dataclass(eq=True)
class ClassDecl:
    name: str
    exported: bool
    base: Optional[str]
    fields: list[FieldDecl] = field(default_factory=list)
    methods: list[MethodDecl] = field(default_factory=list)
    ctors: list[CtorDecl] = field(default_factory=list)
    friends: list[Friend] = field(default_factory=list)
    span: Span = _span()  # at the class name
    base_span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class FunDecl:
    name: str
    params: list[Param]
    return_type: str
    body: list[Stmt]
    span: Span = _span()


Decl = Union[ClassDecl, FunDecl]


@dataclass(eq=True)
class Program:
    decls: list[Decl] = field(default_factory=list)
    hierarchy: dict[str, Optional[str]] = field(default_factory=dict)

    @property
    def classes(self) -> list[ClassDecl]:
        return [d for d in self.decls if isinstance(d, ClassDecl)]

    @property
    def functions(self) -> list[FunDecl]:
        return [d for d in self.decls if isinstance(d, FunDecl)]


def walk_stmts(stmts: list[Stmt]):
    """Yield every statement in ``stmts``, depth first, in source order."""
    for s in stmts:
        yield s
        if isinstance(s, If):
            yield from walk_stmts(s.then)
            if s.orelse is not None:
                yield from walk_stmts(s.orelse)
        elif isinstance(s, While):
            yield from walk_stmts(s.body)


def child_exprs(e: Expr) -> list[Expr]:
    if isinstance(e, FieldAccess):
        return [e.obj]
    if isinstance(e, MethodCall):
        return [e.obj, *e.args]
    if isinstance(e, (Call, New, Builtin)):
        return list(e.args)
    if isinstance(e, Binary):
        return [e.left, e.right]
    if isinstance(e, Unary):
        return [e.operand]
    return []


def walk_expr(e: Expr):
    yield e
    for c in child_exprs(e):
        yield from walk_expr(c)


def stmt_exprs(s: Stmt) -> list[Expr]:
    """Expressions held directly by ``s`` (not by nested statements)."""
    if isinstance(s, (Let, Assign)):
        out = [s.value]
        if isinstance(s, Assign):
            out.insert(0, s.target)
        return out
    if isinstance(s, (If, While, Assert)):
        return [s.cond]
    if isinstance(s, Return):
        return [] if s.value is None else [s.value]
    if isinstance(s, ExprStmt):
        return [s.expr]
    return []


def body_exprs(stmts: list[Stmt]):
    """Every expression node in a statement list, in source order."""
    for s in walk_stmts(stmts):
        for e in stmt_exprs(s):
            yield from walk_expr(e)
