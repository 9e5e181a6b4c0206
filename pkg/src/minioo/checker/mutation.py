"""Which arguments may a body mutate, directly or through its callees?

Positions: the receiver is 0 and declared parameters are 1..n, for methods
and free functions alike.  The analysis is flow-insensitive.  Every
object-typed local carries the set of parameter positions whose reachable
state it may alias ("origins").  Integers, booleans and lists are copied
and carry none.  Two summaries are solved together to a least fixpoint:

* ``state``: positions whose reachable object state the body may change;
* ``rebinds``: ref parameters the body may rebind;
* ``aliases``: positions whose origins may reach the returned value.

A position is marked when it is in ``state`` or ``rebinds``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..frontend import ast
from ..frontend.resolver import ANY, THIS, SUPER, Callable, ResolvedProgram
from .callgraph import CallGraph, base_target, build_call_graph, site_targets
from .rules import Diagnostic, RuleId


@dataclass(frozen=True)
class MutationSummary:
    state: dict[str, frozenset[int]]
    rebinds: dict[str, frozenset[int]]
    aliases: dict[str, frozenset[int]]

    @property
    def marks(self) -> dict[str, frozenset[int]]:
        return {k: v | self.rebinds.get(k, frozenset()) for k, v in self.state.items()}

    def marked(self, callable_id: str) -> frozenset[int]:
        return self.state.get(callable_id, frozenset()) | self.rebinds.get(callable_id, frozenset())


def position_name(c: Callable, pos: int) -> str:
    return THIS if pos == 0 else c.params[pos - 1].name


class _Body:
    """Per-body origin environment, recomputed against the current summaries."""

    def __init__(self, rp: ResolvedProgram, c: Callable, summary: MutationSummary):
        self.rp = rp
        self.c = c
        self.summary = summary
        self.env: dict[str, set[int]] = {}
        self.ref_params: dict[str, int] = {}
        if c.has_receiver:
            self.env[THIS] = {0}
        for i, p in enumerate(c.params, start=1):
            self.env[p.name] = {i} if self.tracked(p.type) else set()
            if p.mode == ast.REF:
                self.ref_params[p.name] = i
        self.mutated: set[int] = set()
        self.rebound_params: set[int] = set()
        self.returned: set[int] = set()

    def tracked(self, t: Optional[str]) -> bool:
        return t == ANY or t in self.rp.classes

    def origins(self, e: ast.Expr) -> set[int]:
        if not self.tracked(e.static_type):
            return set()
        if isinstance(e, ast.Var):
            name = THIS if e.name == SUPER else e.name
            return set(self.env.get(name, ()))
        if isinstance(e, ast.FieldAccess):
            return self.origins(e.obj)
        if isinstance(e, ast.New):
            out: set[int] = set()
            for a in e.args:
                out |= self.origins(a)
            return out
        if isinstance(e, (ast.Call, ast.MethodCall)):
            out = set()
            for t in site_targets(self.rp, e):
                for pos in self.summary.aliases.get(t.id, ()):
                    out |= self.actual_origins(e, pos)
            return out
        return set()

    def actual_origins(self, e: ast.Expr, pos: int) -> set[int]:
        """Origins of the actual bound to callee position ``pos`` at site ``e``."""
        if pos == 0:
            return self.origins(e.obj) if isinstance(e, ast.MethodCall) else set()
        if pos - 1 < len(e.args):
            return self.origins(e.args[pos - 1])
        return set()

    def mark(self, origins: set[int]) -> None:
        self.mutated |= origins

    def root_var(self, e: ast.Expr) -> Optional[str]:
        while isinstance(e, ast.FieldAccess):
            e = e.obj
        if isinstance(e, ast.Var):
            return THIS if e.name == SUPER else e.name
        return None

    def flow(self, name: Optional[str], origins: set[int]) -> None:
        if name is not None and origins:
            self.env.setdefault(name, set()).update(origins)

    def call_effects(self, e: ast.Expr, actuals: list[ast.Expr], receiver: Optional[ast.Expr]) -> None:
        for t in site_targets(self.rp, e):
            for pos in self.summary.state.get(t.id, ()):
                if pos == 0:
                    if receiver is not None and t.kind != "ctor":
                        self.mark(self.origins(receiver))
                elif pos - 1 < len(actuals):
                    self.mark(self.origins(actuals[pos - 1]))
            for pos in self.summary.rebinds.get(t.id, ()):
                if 0 < pos <= len(actuals):
                    self.rebound(actuals[pos - 1], actuals, receiver)

    def rebound(self, arg: ast.Expr, actuals: list[ast.Expr], receiver: Optional[ast.Expr]) -> None:
        """A callee may have stored into ``arg`` through a ref parameter."""
        if isinstance(arg, ast.Var) and arg.name in self.ref_params:
            self.rebound_params.add(self.ref_params[arg.name])
        if isinstance(arg, ast.FieldAccess):
            self.mark(self.origins(arg.obj))
        incoming: set[int] = set()
        for a in actuals:
            incoming |= self.origins(a)
        if receiver is not None:
            incoming |= self.origins(receiver)
        self.flow(self.root_var(arg), incoming)

    def expr_effects(self, e: ast.Expr) -> None:
        for sub in ast.walk_expr(e):
            if isinstance(sub, ast.MethodCall):
                self.call_effects(sub, sub.args, sub.obj)
            elif isinstance(sub, (ast.Call, ast.New)):
                self.call_effects(sub, sub.args, None)

    def stmt(self, s: ast.Stmt) -> None:
        for e in ast.stmt_exprs(s):
            self.expr_effects(e)
        if isinstance(s, ast.Let):
            self.flow(s.name, self.origins(s.value))
        elif isinstance(s, ast.Assign):
            value = self.origins(s.value)
            if isinstance(s.target, ast.FieldAccess):
                self.mark(self.origins(s.target.obj))
                self.flow(self.root_var(s.target.obj), value)
            else:
                name = s.target.name
                if name in self.ref_params:
                    self.rebound_params.add(self.ref_params[name])
                self.flow(name, value)
        elif isinstance(s, ast.Return) and s.value is not None:
            self.returned |= self.origins(s.value)

    def snapshot(self) -> tuple:
        env = {k: set(v) for k, v in self.env.items()}
        return env, set(self.mutated), set(self.rebound_params), set(self.returned)

    def run(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        c = self.c
        while True:
            before = self.snapshot()
            if c.kind == "ctor":
                k: ast.CtorDecl = c.decl
                base = base_target(self.rp, c)
                if k.base_init is not None:
                    for a in k.base_init.args:
                        self.expr_effects(a)
                        self.flow(THIS, self.origins(a))
                    if base is not None:
                        for pos in self.summary.state.get(base.id, ()):
                            if 0 < pos <= len(k.base_init.args):
                                self.mark(self.origins(k.base_init.args[pos - 1]))
                for init in k.field_inits:
                    for a in init.args:
                        self.expr_effects(a)
                        self.flow(THIS, self.origins(a))
            for s in ast.walk_stmts(c.body):
                self.stmt(s)
            if self.snapshot() == before:
                break
        mutated = self.mutated - {0} if c.kind == "ctor" else self.mutated
        return frozenset(mutated), frozenset(self.rebound_params), frozenset(self.returned)


def mutation_summaries(rp: ResolvedProgram, graph: Optional[CallGraph] = None) -> MutationSummary:
    """Least fixpoint of the three summaries.

    ``graph`` only fixes the iteration order; call targets are read from the
    same closed-world dispatch tables the graph was built from.
    """
    graph = graph or build_call_graph(rp)
    callables = {c.id: c for c in rp.callables()}
    order = [n for n in graph.nodes if n in callables]
    empty = frozenset()
    summary = MutationSummary({n: empty for n in order}, {n: empty for n in order}, {n: empty for n in order})
    changed = True
    while changed:
        changed = False
        for n in order:
            found = _Body(rp, callables[n], summary).run()
            for table, new in zip((summary.state, summary.rebinds, summary.aliases), found):
                if not new <= table[n]:
                    table[n] = table[n] | new
                    changed = True
    return summary


def check_r3_relaxed(rp: ResolvedProgram, summaries: Optional[MutationSummary] = None) -> list[Diagnostic]:
    summaries = summaries or mutation_summaries(rp)
    out = []
    for c in rp.callables():
        marked = sorted(summaries.marked(c.id))
        if not marked:
            continue
        names = [position_name(c, p) for p in marked]
        what = ", ".join(repr(n) for n in names)
        noun = "argument" if len(names) == 1 else "arguments"
        out.append(Diagnostic(RuleId.R3R_NO_ARG_MUTATION, c.span, f"{c.id} may mutate {noun} {what}", c.id))
    return out
