"""Closed-world call graph over functions, methods and constructors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..frontend import ast
from ..frontend.resolver import Callable, ResolvedProgram


@dataclass
class CallGraph:
    nodes: list[str]
    edges: list[tuple[str, str]]
    _out: dict[str, list[str]] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        for a, b in self.edges:
            self._out.setdefault(a, []).append(b)

    def callees(self, node: str) -> list[str]:
        return list(self._out.get(node, []))


def zero_arg_ctor(rp: ResolvedProgram, cls: str) -> Optional[int]:
    for i, k in enumerate(rp.ctors(cls)):
        if not k.params:
            return i
    return None


def site_targets(rp: ResolvedProgram, e: ast.Expr) -> list[Callable]:
    """Bodies a call expression may enter; empty for non-calls and print."""
    if isinstance(e, ast.Call):
        c = rp.callable_for_function(e.name, len(e.args))
        return [] if c is None else [c]
    if isinstance(e, ast.MethodCall):
        if e.virtual:
            return [rp.callable_for_method(c, e.name) for c, _ in rp.dispatch_targets(e.receiver_class, e.name)]
        return [rp.callable_for_method(e.owner, e.name)]
    if isinstance(e, ast.New):
        return [rp.callable_for_ctor(e.cls, e.ctor_index)]
    return []


def base_target(rp: ResolvedProgram, c: Callable) -> Optional[Callable]:
    """The base constructor a constructor runs, explicitly or implicitly."""
    if c.kind != "ctor":
        return None
    base = rp.base_of(c.cls)
    if base is None:
        return None
    init = c.decl.base_init
    index = init.ctor_index if init is not None else zero_arg_ctor(rp, base)
    return None if index is None else rp.callable_for_ctor(base, index)


def callable_exprs(c: Callable) -> Iterator[ast.Expr]:
    """Every expression evaluated by a body, initializer lists included."""
    if c.kind == "ctor":
        k: ast.CtorDecl = c.decl
        inits = ([k.base_init] if k.base_init is not None else []) + list(k.field_inits)
        for init in inits:
            for a in init.args:
                yield from ast.walk_expr(a)
    yield from ast.body_exprs(c.body)


def build_call_graph(rp: ResolvedProgram) -> CallGraph:
    callables = rp.callables()
    edges: set[tuple[str, str]] = set()
    for c in callables:
        b = base_target(rp, c)
        if b is not None:
            edges.add((c.id, b.id))
        for e in callable_exprs(c):
            for t in site_targets(rp, e):
                edges.add((c.id, t.id))
    return CallGraph(sorted(c.id for c in callables), sorted(edges))
