"""Tree-walking evaluator with C++-style dispatch.

Virtual methods dispatch on the receiver's dynamic class, everything else
is bound statically by the resolver.  ``ref`` parameters alias the caller's
variable or field; ``constref`` parameters are write-protected views, and
any write through them aborts with ``constref-write``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from ..frontend import ast
from ..frontend.resolver import THIS, ResolvedProgram
from .values import (
    NIL,
    UNINIT,
    UNIT,
    Cons,
    ObjectStore,
    ObjRef,
    Value,
    format_value,
    from_iterable,
    kind_of,
    values_equal,
    wrap,
)

DEFAULT_FUEL = 2_000_000
DEFAULT_MAX_DEPTH = 300

sys.setrecursionlimit(max(sys.getrecursionlimit(), 30_000))


class ExecError(Exception):
    """A MiniOO runtime error; aborts the evaluation."""

    def __init__(self, kind: str, message: str, span: Optional[ast.Span] = None):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.span = span

    def __str__(self) -> str:
        where = f"{self.span}: " if self.span is not None else ""
        return f"{where}runtime error ({self.kind}): {self.message}"


@dataclass
class ExecOutcome:
    result: Union[Value, ExecError]
    output: list[str] = field(default_factory=list)
    assertions_failed: list[ast.Span] = field(default_factory=list)

    @property
    def error(self) -> Optional[ExecError]:
        return self.result if isinstance(self.result, ExecError) else None

    @property
    def ok(self) -> bool:
        return self.error is None and not self.assertions_failed


class Cell:
    __slots__ = ("value", "readonly")

    def __init__(self, value: object, readonly: bool = False):
        self.value = value
        self.readonly = readonly

    def get(self) -> object:
        return self.value

    def set(self, value: object, span: ast.Span) -> None:
        if self.readonly:
            raise ExecError("constref-write", "write through a constref parameter", span)
        self.value = value


class FieldCell:
    """A ``ref`` argument bound to an object field."""

    __slots__ = ("interp", "obj", "name")

    def __init__(self, interp: "Interpreter", obj: ObjRef, name: str):
        self.interp = interp
        self.obj = obj
        self.name = name

    @property
    def readonly(self) -> bool:
        return self.obj.readonly

    def get(self) -> object:
        return self.interp.read_field(self.obj, self.name, None)

    def set(self, value: object, span: ast.Span) -> None:
        self.interp.write_field(self.obj, self.name, value, span)


class _Return(Exception):
    def __init__(self, value: Value):
        self.value = value


@dataclass(frozen=True)
class Build:
    """Host-side argument built inside the interpreter by calling
    ``factory(list of elements)`` before the entry function runs."""

    factory: str
    elements: tuple[int, ...] = ()


def _default(type_: str) -> object:
    return {"int": 0, "bool": False, "unit": UNIT, "list": NIL}.get(type_, UNINIT)


class Interpreter:
    def __init__(self, program: ResolvedProgram, fuel: int = DEFAULT_FUEL, max_depth: int = DEFAULT_MAX_DEPTH):
        self.rp = program
        self.store = ObjectStore()
        self.output: list[str] = []
        self.assertions_failed: list[ast.Span] = []
        self.fuel = fuel
        self.max_depth = max_depth
        self.depth = 0

    # -- host entry points ---------------------------------------------------

    def call_function(self, name: str, args: Sequence[object]) -> Value:
        f = self.rp.function(name, len(args))
        if f is None:
            if name in self.rp.functions:
                raise ExecError("arity-mismatch", f"{name} does not take {len(args)} argument(s)")
            raise ExecError("missing-function", f"no function {name!r}")
        values = [self.materialize(a) for a in args]
        for p, v in zip(f.params, values):
            self.check_arg(p, v, name)
        return self.invoke(f.params, f.body, f.return_type, None, [self._host_cell(p, v) for p, v in zip(f.params, values)], f.span)

    def call_method(self, receiver: ObjRef, owner: str, name: str, args: Sequence[object]) -> Value:
        """Run ``owner::name`` on ``receiver`` without dynamic dispatch."""
        m = self.rp.own_method(owner, name)
        if m is None:
            raise ExecError("missing-method", f"no method {owner}::{name}")
        values = [self.materialize(a) for a in args]
        for p, v in zip(m.params, values):
            self.check_arg(p, v, f"{owner}::{name}")
        cells = [self._host_cell(p, v) for p, v in zip(m.params, values)]
        return self.invoke(m.params, m.body, m.return_type, receiver, cells, m.span)

    def construct(self, cls: str, ctor_index: int, args: Sequence[object]) -> ObjRef:
        k = self.rp.ctors(cls)[ctor_index]
        values = [self.materialize(a) for a in args]
        for p, v in zip(k.params, values):
            self.check_arg(p, v, cls)
        obj = self.allocate(cls)
        self.run_ctor(cls, ctor_index, obj, [self._host_cell(p, v) for p, v in zip(k.params, values)])
        return obj

    def materialize(self, a: object) -> object:
        if isinstance(a, Build):
            return self.call_function(a.factory, [from_iterable(a.elements)])
        return a

    def _host_cell(self, p: ast.Param, v: object):
        if isinstance(v, (Cell, FieldCell)):
            return v if p.mode == ast.REF else Cell(self._param_value(p, v.get()), p.mode == ast.CONSTREF)
        return Cell(self._param_value(p, v), p.mode == ast.CONSTREF)

    def check_arg(self, p: ast.Param, v: object, where: str) -> None:
        if isinstance(v, (Cell, FieldCell)):
            v = v.get()
        if not self.value_has_type(v, p.type):
            raise ExecError(
                "type-mismatch", f"argument {p.name!r} of {where} expects {p.type}, got {self.describe(v)}"
            )

    def value_has_type(self, v: object, t: str) -> bool:
        k = kind_of(v)
        if t == "any":
            return True
        if k == "object":
            return t in self.rp.classes and self.rp.is_subclass(self.store.class_of(v), t)
        return k == t

    def describe(self, v: object) -> str:
        if isinstance(v, ObjRef):
            return self.store.class_of(v)
        return kind_of(v)

    # -- objects -------------------------------------------------------------

    def allocate(self, cls: str) -> ObjRef:
        fields = {fd.name: _default(fd.type) for _, fd in self.rp.all_fields(cls)}
        return self.store.alloc(cls, fields)

    def read_field(self, obj: object, name: str, span: Optional[ast.Span]) -> object:
        if not isinstance(obj, ObjRef):
            raise ExecError("bad-value", f"field access on {kind_of(obj)}", span)
        fields = self.store[obj].fields
        if name not in fields:
            raise ExecError("missing-field", f"{self.store.class_of(obj)} has no field {name!r}", span)
        v = fields[name]
        if v is UNINIT:
            raise ExecError("uninitialized-field", f"field {name!r} read before initialization", span)
        if obj.readonly and isinstance(v, ObjRef):
            return v.view(True)
        return v

    def write_field(self, obj: object, name: str, value: object, span: ast.Span) -> None:
        if not isinstance(obj, ObjRef):
            raise ExecError("bad-value", f"field assignment on {kind_of(obj)}", span)
        if obj.readonly:
            raise ExecError("constref-write", f"write to field {name!r} through a constref parameter", span)
        fields = self.store[obj].fields
        if name not in fields:
            raise ExecError("missing-field", f"{self.store.class_of(obj)} has no field {name!r}", span)
        fields[name] = value

    def run_ctor(self, cls: str, index: int, this: ObjRef, cells: list) -> None:
        k = self.rp.ctors(cls)[index]
        self._enter(k.span)
        try:
            env = {THIS: Cell(this)}
            for p, c in zip(k.params, cells):
                env[p.name] = c
            base = self.rp.base_of(cls)
            if base is not None:
                if k.base_init is not None:
                    base_k = self.rp.ctors(base)[k.base_init.ctor_index]
                    base_cells = self.bind_args(base_k.params, k.base_init.args, env)
                    self.run_ctor(base, k.base_init.ctor_index, this, base_cells)
                else:
                    zero = [i for i, bk in enumerate(self.rp.ctors(base)) if not bk.params]
                    if not zero:
                        raise ExecError("missing-ctor", f"{base} has no zero-argument constructor", k.span)
                    self.run_ctor(base, zero[0], this, [])
            for init in k.field_inits:
                self.store[this].fields[init.name] = self.eval(init.args[0], env)
            try:
                self.exec_block(k.body, env)
            except _Return:
                pass
        finally:
            self.depth -= 1

    # -- calls ---------------------------------------------------------------

    def _enter(self, span: Optional[ast.Span]) -> None:
        self.depth += 1
        if self.depth > self.max_depth:
            self.depth -= 1
            raise ExecError("depth-limit", "call depth exceeded", span)

    def _param_value(self, p: ast.Param, v: object) -> object:
        if p.mode == ast.CONSTREF and isinstance(v, ObjRef):
            return v.view(True)
        return v

    def bind_args(self, params: list[ast.Param], args: list[ast.Expr], env: dict) -> list:
        cells = []
        for p, a in zip(params, args):
            if p.mode == ast.REF:
                if isinstance(a, ast.Var):
                    cells.append(env[a.name])
                    continue
                if isinstance(a, ast.FieldAccess):
                    cells.append(FieldCell(self, self.eval(a.obj, env), a.name))
                    continue
            cells.append(Cell(self._param_value(p, self.eval(a, env)), p.mode == ast.CONSTREF))
        return cells

    def invoke(self, params, body, return_type, this: Optional[ObjRef], cells: list, span) -> Value:
        self._enter(span)
        try:
            env: dict = {}
            if this is not None:
                env[THIS] = Cell(this)
            for p, c in zip(params, cells):
                env[p.name] = c
            try:
                self.exec_block(body, env)
            except _Return as r:
                return r.value
            if return_type != "unit":
                raise ExecError("missing-return", "function ended without returning a value", span)
            return UNIT
        finally:
            self.depth -= 1

    def dispatch(self, receiver: ObjRef, e: ast.MethodCall) -> tuple[str, ast.MethodDecl]:
        return dispatch(self.rp, self.store, receiver, e.name, e.receiver_class, e.virtual, e.span)

    # -- statements ----------------------------------------------------------

    def tick(self, span: Optional[ast.Span]) -> None:
        self.fuel -= 1
        if self.fuel < 0:
            raise ExecError("step-limit", "step limit exceeded", span)

    def exec_block(self, stmts: list[ast.Stmt], env: dict) -> None:
        for s in stmts:
            self.exec_stmt(s, env)

    def exec_stmt(self, s: ast.Stmt, env: dict) -> None:
        self.tick(s.span)
        if isinstance(s, ast.Let):
            env[s.name] = Cell(self.eval(s.value, env))
        elif isinstance(s, ast.Assign):
            value = self.eval(s.value, env)
            if isinstance(s.target, ast.Var):
                env[s.target.name].set(value, s.span)
            else:
                obj = self.eval(s.target.obj, env)
                self.write_field(obj, s.target.name, value, s.span)
        elif isinstance(s, ast.If):
            if self.eval(s.cond, env):
                self.exec_block(s.then, env)
            elif s.orelse is not None:
                self.exec_block(s.orelse, env)
        elif isinstance(s, ast.While):
            while self.eval(s.cond, env):
                self.tick(s.span)
                self.exec_block(s.body, env)
        elif isinstance(s, ast.Return):
            raise _Return(UNIT if s.value is None else self.eval(s.value, env))
        elif isinstance(s, ast.Assert):
            if not self.eval(s.cond, env):
                self.assertions_failed.append(s.span)
        elif isinstance(s, ast.ExprStmt):
            self.eval(s.expr, env)
        else:
            raise TypeError(f"unknown statement {s!r}")

    # -- expressions ---------------------------------------------------------

    def eval(self, e: ast.Expr, env: dict) -> object:
        if isinstance(e, ast.IntLit):
            return wrap(e.value)
        if isinstance(e, ast.BoolLit):
            return e.value
        if isinstance(e, ast.NilLit):
            return NIL
        if isinstance(e, ast.StrLit):
            return e.value
        if isinstance(e, ast.Var):
            return env[THIS if e.name == "super" else e.name].get()
        if isinstance(e, ast.FieldAccess):
            return self.read_field(self.eval(e.obj, env), e.name, e.span)
        if isinstance(e, ast.MethodCall):
            receiver = self.eval(e.obj, env)
            if not isinstance(receiver, ObjRef):
                raise ExecError("bad-value", f"method call on {kind_of(receiver)}", e.span)
            _, m = self.dispatch(receiver, e)
            cells = self.bind_args(m.params, e.args, env)
            return self.invoke(m.params, m.body, m.return_type, receiver, cells, e.span)
        if isinstance(e, ast.Call):
            if e.name == "print":
                vals = [self.eval(a, env) for a in e.args]
                self.output.append(" ".join(format_value(v, self.store) for v in vals))
                return UNIT
            f = self.rp.function(e.name, len(e.args))
            cells = self.bind_args(f.params, e.args, env)
            for p, a, c in zip(f.params, e.args, cells):
                if a.static_type != "any":
                    continue
                v = c.get()
                if not self.value_has_type(v, p.type):
                    raise ExecError(
                        "type-mismatch", f"argument {p.name!r} of {e.name} expects {p.type}, got {self.describe(v)}", e.span
                    )
            return self.invoke(f.params, f.body, f.return_type, None, cells, e.span)
        if isinstance(e, ast.New):
            k = self.rp.ctors(e.cls)[e.ctor_index]
            cells = self.bind_args(k.params, e.args, env)
            obj = self.allocate(e.cls)
            self.run_ctor(e.cls, e.ctor_index, obj, cells)
            return obj
        if isinstance(e, ast.Builtin):
            args = [self.eval(a, env) for a in e.args]
            if e.op == "cons":
                return Cons(args[0], args[1])
            xs = args[0]
            if e.op == "is_nil":
                return xs is NIL
            if xs is NIL:
                raise ExecError(f"{e.op}-of-nil", f"{e.op} of an empty list", e.span)
            if not isinstance(xs, Cons):
                raise ExecError("bad-value", f"{e.op} of {kind_of(xs)}", e.span)
            return xs.head if e.op == "head" else xs.tail
        if isinstance(e, ast.Unary):
            v = self.eval(e.operand, env)
            return (not v) if e.op == "!" else wrap(-v)
        if isinstance(e, ast.Binary):
            return self.binary(e, env)
        raise TypeError(f"unknown expression {e!r}")

    def binary(self, e: ast.Binary, env: dict) -> object:
        op = e.op
        if op == "&&":
            return bool(self.eval(e.left, env)) and bool(self.eval(e.right, env))
        if op == "||":
            return bool(self.eval(e.left, env)) or bool(self.eval(e.right, env))
        a, b = self.eval(e.left, env), self.eval(e.right, env)
        if op == "==":
            return values_equal(a, b)
        if op == "!=":
            return not values_equal(a, b)
        if type(a) is not int or type(b) is not int:
            raise ExecError("bad-value", f"operator {op} on {kind_of(a)} and {kind_of(b)}", e.span)
        if op == "+":
            return wrap(a + b)
        if op == "-":
            return wrap(a - b)
        if op == "*":
            return wrap(a * b)
        if op in ("/", "%"):
            if b == 0:
                raise ExecError("division-by-zero", "division by zero", e.span)
            q = abs(a) // abs(b)
            if (a < 0) != (b < 0):
                q = -q
            return wrap(q) if op == "/" else wrap(a - b * q)
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        if op == ">=":
            return a >= b
        raise TypeError(f"unknown operator {op}")


def dispatch(
    program: ResolvedProgram,
    store: ObjectStore,
    receiver: ObjRef,
    method: str,
    static_class: str,
    virtual: Optional[bool] = None,
    span: Optional[ast.Span] = None,
) -> tuple[str, ast.MethodDecl]:
    """Select the body a call ``receiver.method(...)`` runs.

    A method that is virtual anywhere in its family binds to the most-derived
    override for the receiver's dynamic class; otherwise the body resolved
    from ``static_class`` runs.  ``virtual`` overrides the family test (the
    resolver passes ``False`` for ``super`` calls).
    """
    if virtual is None:
        virtual = program.is_virtual(static_class, method)
    start = store.class_of(receiver) if virtual else static_class
    found = program.lookup_method(start, method)
    if found is None:
        raise ExecError("missing-method", f"no method {method!r} for {store.class_of(receiver)}", span)
    return found
