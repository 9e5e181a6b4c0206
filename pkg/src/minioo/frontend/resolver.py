"""Name binding, light static typing and class-hierarchy tables.

Resolution annotates the tree in place (expression ``static_type``, method
call dispatch mode, chosen constructor overload) and wraps it in a
:class:`ResolvedProgram` that the checker, interpreter and harness share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import ast
from .errors import ResolveError, ResolveErrors

PRIMITIVES = frozenset({"int", "bool", "unit", "list"})
ANY = "any"
STRING = "string"
RESERVED_FUNCTIONS = frozenset({"print"})
THIS, SUPER = "this", "super"

_ARITH = {"+", "-", "*", "/", "%"}
_ORDER = {"<", "<=", ">", ">="}
_LOGIC = {"&&", "||"}


@dataclass
class Callable:
    """A function, method or constructor body, identified for analyses."""

    id: str
    kind: str  # "function" | "method" | "ctor"
    decl: object
    cls: Optional[str] = None
    ctor_index: Optional[int] = None

    @property
    def params(self) -> list[ast.Param]:
        return self.decl.params

    @property
    def body(self) -> list[ast.Stmt]:
        return self.decl.body

    @property
    def has_receiver(self) -> bool:
        return self.kind in ("method", "ctor")

    @property
    def span(self) -> ast.Span:
        return self.decl.span

    @property
    def display(self) -> str:
        return self.id


@dataclass
class ResolvedProgram:
    program: ast.Program
    classes: dict[str, ast.ClassDecl]
    functions: dict[str, dict[int, ast.FunDecl]]
    friends_of: dict[str, set[str]] = field(default_factory=dict)  # function -> classes
    _implicit_ctors: dict[str, ast.CtorDecl] = field(default_factory=dict)

    # -- hierarchy -----------------------------------------------------------

    @property
    def hierarchy(self) -> dict[str, Optional[str]]:
        return self.program.hierarchy

    def base_of(self, cls: str) -> Optional[str]:
        return self.hierarchy.get(cls)

    def ancestors(self, cls: str) -> list[str]:
        """``cls`` followed by its bases, nearest first."""
        out = []
        cur: Optional[str] = cls
        while cur is not None and cur not in out:
            out.append(cur)
            cur = self.hierarchy.get(cur)
        return out

    def is_subclass(self, sub: str, sup: str) -> bool:
        return sup in self.ancestors(sub)

    def related(self, a: str, b: str) -> bool:
        return self.is_subclass(a, b) or self.is_subclass(b, a)

    def descendants(self, cls: str) -> list[str]:
        """Strict subclasses of ``cls`` in declaration order."""
        return [c for c in self.classes if c != cls and self.is_subclass(c, cls)]

    # -- members -------------------------------------------------------------

    def own_method(self, cls: str, name: str) -> Optional[ast.MethodDecl]:
        for m in self.classes[cls].methods:
            if m.name == name:
                return m
        return None

    def lookup_method(self, cls: str, name: str) -> Optional[tuple[str, ast.MethodDecl]]:
        for c in self.ancestors(cls):
            if c in self.classes:
                m = self.own_method(c, name)
                if m is not None:
                    return c, m
        return None

    def lookup_field(self, cls: str, name: str) -> Optional[tuple[str, ast.FieldDecl]]:
        for c in self.ancestors(cls):
            if c in self.classes:
                for f in self.classes[c].fields:
                    if f.name == name:
                        return c, f
        return None

    def all_fields(self, cls: str) -> list[tuple[str, ast.FieldDecl]]:
        out = []
        for c in reversed(self.ancestors(cls)):
            if c in self.classes:
                out.extend((c, f) for f in self.classes[c].fields)
        return out

    def method_family(self, cls: str, name: str) -> list[tuple[str, ast.MethodDecl]]:
        """The method ``name`` as seen from ``cls``: definitions above the
        statically resolved one, the resolved one, and all overrides below."""
        found = self.lookup_method(cls, name)
        if found is None:
            return []
        owner = found[0]
        out = []
        for c in self.ancestors(owner):
            m = self.own_method(c, name)
            if m is not None:
                out.append((c, m))
        for c in self.descendants(owner):
            m = self.own_method(c, name)
            if m is not None:
                out.append((c, m))
        return out

    def is_virtual(self, cls: str, name: str) -> bool:
        return any(m.is_virtual for _, m in self.method_family(cls, name))

    def dispatch_targets(self, cls: str, name: str) -> list[tuple[str, ast.MethodDecl]]:
        """Possible bodies for a virtual call on static type ``cls``."""
        found = self.lookup_method(cls, name)
        if found is None:
            return []
        out = [found]
        for c in self.descendants(cls):
            m = self.own_method(c, name)
            if m is not None:
                out.append((c, m))
        return out

    def ctors(self, cls: str) -> list[ast.CtorDecl]:
        decl = self.classes[cls]
        if decl.ctors:
            return decl.ctors
        if cls not in self._implicit_ctors:
            self._implicit_ctors[cls] = ast.CtorDecl([], None, [], [], decl.span)
        return [self._implicit_ctors[cls]]

    def function(self, name: str, arity: int) -> Optional[ast.FunDecl]:
        return self.functions.get(name, {}).get(arity)

    # -- callables -----------------------------------------------------------

    def function_id(self, f: ast.FunDecl) -> str:
        if len(self.functions.get(f.name, {})) > 1:
            return f"{f.name}({', '.join(p.type for p in f.params)})"
        return f.name

    def method_id(self, cls: str, name: str) -> str:
        return f"{cls}::{name}"

    def ctor_id(self, cls: str, index: int) -> str:
        k = self.ctors(cls)[index]
        return f"{cls}::{cls}({', '.join(p.type for p in k.params)})"

    def callables(self) -> list[Callable]:
        """Every body in declaration order (implicit constructors included)."""
        out: list[Callable] = []
        for d in self.program.decls:
            if isinstance(d, ast.FunDecl):
                out.append(Callable(self.function_id(d), "function", d))
            else:
                for m in d.methods:
                    out.append(Callable(self.method_id(d.name, m.name), "method", m, d.name))
                for i, k in enumerate(self.ctors(d.name)):
                    out.append(Callable(self.ctor_id(d.name, i), "ctor", k, d.name, i))
        return out

    def callable_for_function(self, name: str, arity: int) -> Optional[Callable]:
        f = self.function(name, arity)
        return None if f is None else Callable(self.function_id(f), "function", f)

    def callable_for_method(self, cls: str, name: str) -> Callable:
        return Callable(self.method_id(cls, name), "method", self.own_method(cls, name), cls)

    def callable_for_ctor(self, cls: str, index: int) -> Callable:
        return Callable(self.ctor_id(cls, index), "ctor", self.ctors(cls)[index], cls, index)

    # -- types ---------------------------------------------------------------

    def compatible(self, actual: str, expected: str) -> bool:
        if actual == ANY or expected == ANY or actual == expected:
            return True
        if actual in self.classes and expected in self.classes:
            return self.is_subclass(actual, expected)
        return False

    def type_exists(self, t: str) -> bool:
        return t in PRIMITIVES or t in self.classes


def resolve(program: ast.Program) -> ResolvedProgram:
    """Bind names and build the hierarchy table; raise ResolveErrors on failure."""
    return _Resolver(program).run()


class _Scope:
    def __init__(self) -> None:
        self.frames: list[dict[str, str]] = [{}]
        self.declared: set[str] = set()

    def push(self) -> None:
        self.frames.append({})

    def pop(self) -> None:
        self.frames.pop()

    def bind(self, name: str, type_: str) -> bool:
        if name in self.declared:
            return False
        self.declared.add(name)
        self.frames[-1][name] = type_
        return True

    def lookup(self, name: str) -> Optional[str]:
        for f in reversed(self.frames):
            if name in f:
                return f[name]
        return None


class _Resolver:
    def __init__(self, program: ast.Program):
        self.program = program
        self.errors: list[ResolveError] = []
        self.rp = ResolvedProgram(program, {}, {})
        # per-body context
        self.cls: Optional[str] = None
        self.fun_name: Optional[str] = None
        self.return_type = "unit"
        self.scope = _Scope()

    def error(self, message: str, span: ast.Span) -> None:
        self.errors.append(ResolveError(message, span))

    def run(self) -> ResolvedProgram:
        self.collect()
        self.check_hierarchy()
        self.check_members()
        for d in self.program.decls:
            if isinstance(d, ast.FunDecl):
                self.check_function(d)
            else:
                self.check_class_bodies(d)
        if self.errors:
            raise ResolveErrors(self.errors)
        return self.rp

    # -- declarations --------------------------------------------------------

    def collect(self) -> None:
        rp = self.rp
        for d in self.program.decls:
            if isinstance(d, ast.ClassDecl):
                if d.name in rp.classes:
                    self.error(f"duplicate definition of class {d.name!r}", d.span)
                    continue
                if d.name in PRIMITIVES or d.name in (THIS, SUPER):
                    self.error(f"reserved name {d.name!r} used as class name", d.span)
                    continue
                rp.classes[d.name] = d
            else:
                if d.name in RESERVED_FUNCTIONS:
                    self.error(f"{d.name!r} is a built-in function", d.span)
                    continue
                overloads = rp.functions.setdefault(d.name, {})
                if len(d.params) in overloads:
                    self.error(
                        f"duplicate definition of function {d.name!r} with {len(d.params)} parameter(s)",
                        d.span,
                    )
                    continue
                overloads[len(d.params)] = d
        for name in rp.classes:
            if name in rp.functions:
                self.error(f"name {name!r} is both a class and a function", rp.classes[name].span)
        mains = rp.functions.get("main", {})
        for arity, f in mains.items():
            if arity != 0:
                self.error("main must take no parameters", f.span)

    def check_hierarchy(self) -> None:
        rp = self.rp
        hierarchy: dict[str, Optional[str]] = {}
        for name, d in rp.classes.items():
            base = d.base
            if base is not None and base not in rp.classes:
                self.error(f"unknown base class {base!r}", d.base_span or d.span)
                base = None
            hierarchy[name] = base
        cyclic: set[str] = set()
        for name in rp.classes:
            seen: list[str] = []
            cur: Optional[str] = name
            while cur is not None and cur not in seen:
                seen.append(cur)
                cur = hierarchy.get(cur)
            if cur is not None and cur == name:
                cyclic.add(name)
        for name in rp.classes:
            if name in cyclic:
                d = rp.classes[name]
                self.error(f"cyclic inheritance involving class {name!r}", d.base_span or d.span)
        for name in cyclic:
            hierarchy[name] = None
        self.program.hierarchy = hierarchy

    def check_type(self, t: str, span: ast.Span) -> str:
        if not self.rp.type_exists(t):
            self.error(f"unknown type {t!r}", span)
            return ANY
        return t

    def check_members(self) -> None:
        rp = self.rp
        for name, d in rp.classes.items():
            seen: set[str] = set()
            base = rp.base_of(name)
            for f in d.fields:
                self.check_type(f.type, f.span)
                if f.name in seen:
                    self.error(f"duplicate member {f.name!r} in class {name!r}", f.span)
                seen.add(f.name)
                if base is not None and rp.lookup_field(base, f.name) is not None:
                    self.error(f"field {f.name!r} already declared in a base of {name!r}", f.span)
            for m in d.methods:
                self.check_type(m.return_type, m.span)
                self.check_params(m.params)
                if m.name in seen:
                    self.error(f"duplicate member {m.name!r} in class {name!r}", m.span)
                seen.add(m.name)
                if base is None:
                    continue
                if rp.lookup_field(base, m.name) is not None:
                    self.error(f"method {m.name!r} clashes with an inherited field", m.span)
                inherited = rp.lookup_method(base, m.name)
                if inherited is not None:
                    _, bm = inherited
                    if [p.type for p in bm.params] != [p.type for p in m.params] or [
                        p.mode for p in bm.params
                    ] != [p.mode for p in m.params]:
                        self.error(f"override {name}::{m.name} changes the parameter list", m.span)
                    elif not rp.compatible(m.return_type, bm.return_type):
                        self.error(f"override {name}::{m.name} has an incompatible return type", m.span)
            signatures: set[tuple[str, ...]] = set()
            for k in d.ctors:
                self.check_params(k.params)
                sig = tuple(p.type for p in k.params)
                if sig in signatures:
                    self.error(f"duplicate constructor {name}({', '.join(sig)})", k.span)
                signatures.add(sig)
            for fr in d.friends:
                if fr.name not in rp.functions:
                    self.error(f"friend {fr.name!r} is not a declared function", fr.span)
                else:
                    rp.friends_of.setdefault(fr.name, set()).add(name)
        for overloads in rp.functions.values():
            for f in overloads.values():
                self.check_type(f.return_type, f.span)
                self.check_params(f.params)

    def check_params(self, params: list[ast.Param]) -> None:
        names: set[str] = set()
        for p in params:
            self.check_type(p.type, p.span)
            if p.name in names:
                self.error(f"duplicate parameter {p.name!r}", p.span)
            if p.name in (THIS, SUPER):
                self.error(f"{p.name!r} cannot be a parameter name", p.span)
            names.add(p.name)

    # -- bodies --------------------------------------------------------------

    def enter(self, cls: Optional[str], fun_name: Optional[str], params: list[ast.Param], return_type: str) -> None:
        self.cls = cls
        self.fun_name = fun_name
        self.return_type = return_type
        self.scope = _Scope()
        if cls is not None:
            self.scope.bind(THIS, cls)
            self.scope.declared.add(SUPER)
        for p in params:
            self.scope.bind(p.name, p.type if self.rp.type_exists(p.type) else ANY)

    def check_function(self, f: ast.FunDecl) -> None:
        if self.rp.functions.get(f.name, {}).get(len(f.params)) is not f:
            return
        self.enter(None, f.name, f.params, f.return_type)
        self.block(f.body)

    def check_class_bodies(self, d: ast.ClassDecl) -> None:
        if self.rp.classes.get(d.name) is not d:
            return
        for m in d.methods:
            self.enter(d.name, None, m.params, m.return_type)
            self.block(m.body)
        base = self.rp.base_of(d.name)
        for k in d.ctors:
            self.enter(d.name, None, k.params, "unit")
            if k.base_init is not None:
                if base is None:
                    self.error(f"class {d.name!r} has no base class", k.base_init.span)
                else:
                    arg_types = [self.expr(a) for a in k.base_init.args]
                    k.base_init.ctor_index = self.pick_ctor(base, arg_types, k.base_init.span)
            elif base is not None:
                self.pick_ctor(base, [], k.span)
            own = {f.name: f for f in d.fields}
            seen: set[str] = set()
            for init in k.field_inits:
                arg_types = [self.expr(a) for a in init.args]
                fd = own.get(init.name)
                if fd is None:
                    self.error(f"{init.name!r} is not a field of {d.name!r}", init.span)
                    continue
                if init.name in seen:
                    self.error(f"field {init.name!r} initialized twice", init.span)
                seen.add(init.name)
                if len(arg_types) != 1:
                    self.error(f"field initializer {init.name!r} takes exactly one expression", init.span)
                elif not self.rp.compatible(arg_types[0], fd.type):
                    self.error(
                        f"cannot initialize field {init.name!r} of type {fd.type} with {arg_types[0]}",
                        init.span,
                    )
            self.block(k.body)
        if not d.ctors and base is not None:
            self.cls = d.name
            self.pick_ctor(base, [], d.span)

    def pick_ctor(self, cls: str, arg_types: list[str], span: ast.Span) -> Optional[int]:
        candidates = []
        for i, k in enumerate(self.rp.ctors(cls)):
            if len(k.params) == len(arg_types) and all(
                self.rp.compatible(a, p.type) for a, p in zip(arg_types, k.params)
            ):
                candidates.append(i)
        if len(candidates) == 1:
            return candidates[0]
        sig = ", ".join(arg_types)
        if not candidates:
            self.error(f"no constructor {cls}({sig})", span)
        else:
            self.error(f"ambiguous constructor call {cls}({sig})", span)
        return None

    def block(self, stmts: list[ast.Stmt]) -> None:
        self.scope.push()
        for s in stmts:
            self.stmt(s)
        self.scope.pop()

    def expect(self, actual: str, expected: str, what: str, span: ast.Span) -> None:
        if not self.rp.compatible(actual, expected):
            self.error(f"{what}: expected {expected}, found {actual}", span)

    def stmt(self, s: ast.Stmt) -> None:
        if isinstance(s, ast.Let):
            t = self.expr(s.value)
            if t == "unit":
                self.error(f"cannot bind {s.name!r} to a unit value", s.span)
            if s.name in (THIS, SUPER) or not self.scope.bind(s.name, t):
                self.error(f"name {s.name!r} is already bound in this function", s.span)
        elif isinstance(s, ast.Assign):
            vt = self.expr(s.value)
            if isinstance(s.target, ast.Var):
                if s.target.name in (THIS, SUPER):
                    self.error(f"cannot assign to {s.target.name!r}", s.span)
                    return
                tt = self.expr(s.target)
            else:
                tt = self.expr(s.target)
            self.expect(vt, tt, "assignment", s.span)
        elif isinstance(s, ast.If):
            self.expect(self.expr(s.cond), "bool", "condition", s.span)
            self.block(s.then)
            if s.orelse is not None:
                self.block(s.orelse)
        elif isinstance(s, ast.While):
            self.expect(self.expr(s.cond), "bool", "condition", s.span)
            self.block(s.body)
        elif isinstance(s, ast.Return):
            if s.value is None:
                if self.return_type != "unit":
                    self.error(f"missing return value of type {self.return_type}", s.span)
            else:
                self.expect(self.expr(s.value), self.return_type, "return value", s.value.span)
        elif isinstance(s, ast.Assert):
            self.expect(self.expr(s.cond), "bool", "assertion", s.span)
        elif isinstance(s, ast.ExprStmt):
            self.expr(s.expr)

    def can_access(self, owner: str) -> bool:
        if self.cls == owner:
            return True
        return self.fun_name is not None and owner in self.rp.friends_of.get(self.fun_name, set())

    def args(self, args: list[ast.Expr], params: list[ast.Param], what: str, span: ast.Span) -> None:
        types = [self.expr(a) for a in args]
        if len(types) != len(params):
            self.error(f"{what} expects {len(params)} argument(s), got {len(types)}", span)
            return
        for a, t, p in zip(args, types, params):
            self.expect(t, p.type, f"argument {p.name!r} of {what}", a.span)

    def expr(self, e: ast.Expr) -> str:
        t = self._expr(e)
        e.static_type = t
        return t

    def _expr(self, e: ast.Expr) -> str:
        rp = self.rp
        if isinstance(e, ast.IntLit):
            return "int"
        if isinstance(e, ast.BoolLit):
            return "bool"
        if isinstance(e, ast.NilLit):
            return "list"
        if isinstance(e, ast.StrLit):
            self.error("string literals may only appear as arguments of print", e.span)
            return STRING
        if isinstance(e, ast.Var):
            if e.name == SUPER:
                self.error("'super' may only be used to call a base-class method", e.span)
                return ANY
            t = self.scope.lookup(e.name)
            if t is None:
                self.error(f"unbound name {e.name!r}", e.span)
                return ANY
            return t
        if isinstance(e, ast.FieldAccess):
            ot = self.expr(e.obj)
            if ot == ANY:
                return ANY
            if ot not in rp.classes:
                self.error(f"field access on non-object of type {ot}", e.span)
                return ANY
            found = rp.lookup_field(ot, e.name)
            if found is None:
                self.error(f"class {ot!r} has no field {e.name!r}", e.span)
                return ANY
            owner, fd = found
            e.owner = owner
            if fd.visibility == ast.PRIVATE and not self.can_access(owner):
                self.error(f"private field {owner}::{e.name} is not accessible here", e.span)
            return fd.type
        if isinstance(e, ast.MethodCall):
            if isinstance(e.obj, ast.Var) and e.obj.name == SUPER:
                base = rp.base_of(self.cls) if self.cls else None
                if base is None:
                    self.error("'super' used outside a derived class", e.obj.span)
                    for a in e.args:
                        self.expr(a)
                    return ANY
                e.obj.static_type = base
                cls, virtual = base, False
            else:
                cls = self.expr(e.obj)
                virtual = None
            if cls not in rp.classes:
                if cls != ANY:
                    self.error(f"method call on non-object of type {cls}", e.span)
                else:
                    self.error(f"cannot resolve method {e.name!r} on a value of unknown type", e.span)
                for a in e.args:
                    self.expr(a)
                return ANY
            found = rp.lookup_method(cls, e.name)
            if found is None:
                self.error(f"class {cls!r} has no method {e.name!r}", e.span)
                for a in e.args:
                    self.expr(a)
                return ANY
            owner, md = found
            if md.visibility == ast.PRIVATE and not self.can_access(owner):
                self.error(f"private method {owner}::{e.name} is not accessible here", e.span)
            e.receiver_class = cls
            e.owner = owner
            e.virtual = rp.is_virtual(cls, e.name) if virtual is None else False
            self.args(e.args, md.params, f"{owner}::{e.name}", e.span)
            return md.return_type
        if isinstance(e, ast.Call):
            if e.name == "print":
                if not e.args:
                    self.error("print expects at least one argument", e.span)
                for a in e.args:
                    if isinstance(a, ast.StrLit):
                        a.static_type = STRING
                    elif self.expr(a) == "unit":
                        pass
                return "unit"
            overloads = rp.functions.get(e.name)
            if not overloads:
                self.error(f"unbound function {e.name!r}", e.span)
                for a in e.args:
                    self.expr(a)
                return ANY
            f = overloads.get(len(e.args))
            if f is None:
                self.error(f"no overload of {e.name!r} takes {len(e.args)} argument(s)", e.span)
                for a in e.args:
                    self.expr(a)
                return ANY
            self.args(e.args, f.params, e.name, e.span)
            return f.return_type
        if isinstance(e, ast.New):
            arg_types = [self.expr(a) for a in e.args]
            if e.cls not in rp.classes:
                self.error(f"unknown class {e.cls!r}", e.span)
                return ANY
            e.ctor_index = self.pick_ctor(e.cls, arg_types, e.span)
            return e.cls
        if isinstance(e, ast.Builtin):
            types = [self.expr(a) for a in e.args]
            if e.op == "cons":
                self.expect(types[1], "list", "cons tail", e.args[1].span)
                if types[0] == "unit":
                    self.error("cannot store a unit value in a list", e.args[0].span)
                return "list"
            self.expect(types[0], "list", e.op, e.args[0].span)
            return {"head": ANY, "tail": "list", "is_nil": "bool"}[e.op]
        if isinstance(e, ast.Binary):
            lt, rt = self.expr(e.left), self.expr(e.right)
            if e.op in _ARITH:
                self.expect(lt, "int", f"operand of {e.op}", e.left.span)
                self.expect(rt, "int", f"operand of {e.op}", e.right.span)
                return "int"
            if e.op in _ORDER:
                self.expect(lt, "int", f"operand of {e.op}", e.left.span)
                self.expect(rt, "int", f"operand of {e.op}", e.right.span)
                return "bool"
            if e.op in _LOGIC:
                self.expect(lt, "bool", f"operand of {e.op}", e.left.span)
                self.expect(rt, "bool", f"operand of {e.op}", e.right.span)
                return "bool"
            if not (rp.compatible(lt, rt) or rp.compatible(rt, lt)):
                self.error(f"cannot compare {lt} with {rt}", e.span)
            return "bool"
        if isinstance(e, ast.Unary):
            t = self.expr(e.operand)
            want = "bool" if e.op == "!" else "int"
            self.expect(t, want, f"operand of {e.op}", e.operand.span)
            return want
        raise TypeError(f"unknown expression {e!r}")

