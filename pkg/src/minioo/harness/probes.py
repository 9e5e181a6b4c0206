"""Cross-checks between the checker and execution.

``probe_soundness`` runs every body on enumerated small inputs and compares
argument state before and after, for each position the mutation summary
leaves unmarked.  ``headline`` asks whether every rule-conforming program
family passes its substitution tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..checker import CheckConfig, MutationSummary, RuleId, check_all, mutation_summaries
from ..frontend import ast, load
from ..frontend.resolver import Callable, ResolvedProgram
from ..interp import Build, Cell, ExecError, Interpreter, from_iterable
from ..interp.values import snapshot
from .diff import multisets
from .suites import SubstitutionReport, load_suite, substitution_test

PROBE_FUEL = 200_000


@dataclass(frozen=True)
class ProbeViolation:
    callable_id: str
    position: int
    param: str
    args: str


@dataclass
class SoundnessReport:
    runs: int = 0
    probed: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    violations: list[ProbeViolation] = field(default_factory=list)


def _builders(rp: ResolvedProgram, cls: str) -> list[str]:
    """``make_*`` list builders whose result type fits ``cls``."""
    out = []
    for name in sorted(rp.functions):
        f = rp.function(name, 1)
        if name.startswith("make_") and f is not None and f.params[0].type == "list" \
                and f.return_type in rp.classes and rp.compatible(f.return_type, cls):
            out.append(name)
    return out


def _factories(rp: ResolvedProgram, cls: str) -> list[str]:
    """Zero-argument ``make_*`` factories whose result type fits ``cls``."""
    out = []
    for name in sorted(rp.functions):
        f = rp.function(name, 0)
        if name.startswith("make_") and f is not None and f.return_type in rp.classes \
                and rp.compatible(f.return_type, cls):
            out.append(name)
    return out


def _domain(rp: ResolvedProgram, type_: str, universe: Sequence[int], max_size: int) -> Optional[list]:
    if type_ == "int":
        return list(universe)
    if type_ == "bool":
        return [False, True]
    if type_ == "list":
        seqs = []
        for n in range(max_size + 1):
            seqs.extend(itertools.product(sorted(universe), repeat=n))
        return [("list", s) for s in seqs]
    if type_ in rp.classes:
        values: list = [Build(b, m) for b in _builders(rp, type_) for m in multisets(universe, max_size)]
        values += [("factory", f) for f in _factories(rp, type_) if not _builders(rp, type_)]
        return values or None
    return None


def _materialize(interp: Interpreter, spec) -> object:
    if isinstance(spec, tuple) and spec[0] == "list":
        return from_iterable(spec[1])
    if isinstance(spec, tuple) and spec[0] == "factory":
        return interp.call_function(spec[1], [])
    return interp.materialize(spec)


def _describe(spec) -> str:
    if isinstance(spec, Build):
        return f"{spec.factory}([{' '.join(map(str, spec.elements))}])"
    if isinstance(spec, tuple):
        return f"[{' '.join(map(str, spec[1]))}]" if spec[0] == "list" else f"{spec[1]}()"
    return str(spec).lower() if isinstance(spec, bool) else str(spec)


def probe_callable(rp: ResolvedProgram, c: Callable, summary: MutationSummary, report: SoundnessReport,
                   universe: Sequence[int] = (1, 2), max_size: int = 2) -> None:
    if c.kind == "ctor" or not c.params and not c.has_receiver:
        return
    marked = summary.marked(c.id)
    positions = ([0] if c.has_receiver else []) + list(range(1, len(c.params) + 1))
    unmarked = [p for p in positions if p not in marked]
    if not unmarked:
        return
    types = ([c.cls] if c.has_receiver else []) + [p.type for p in c.params]
    domains = [_domain(rp, t, universe, max_size) for t in types]
    if any(d is None for d in domains):
        report.skipped.append(c.id)
        return
    report.probed.append(c.id)
    for combo in itertools.product(*domains):
        report.runs += 1
        interp = Interpreter(rp, fuel=PROBE_FUEL)
        try:
            values = [_materialize(interp, s) for s in combo]
        except ExecError:
            continue
        if c.has_receiver:
            receiver, values = values[0], values[1:]
            if interp.store.class_of(receiver) not in rp.classes or not rp.is_subclass(interp.store.class_of(receiver), c.cls):
                continue
        cells = [Cell(v) if p.mode == ast.REF else v for p, v in zip(c.params, values)]
        state = ([receiver] if c.has_receiver else []) + cells
        before = [snapshot(_peek(x), interp.store) for x in state]
        try:
            if c.has_receiver:
                interp.call_method(receiver, c.cls, c.decl.name, cells)
            else:
                interp.call_function(c.decl.name, cells)
        except ExecError:
            pass
        after = [snapshot(_peek(x), interp.store) for x in state]
        for i, pos in enumerate(positions):
            if pos in unmarked and before[i] != after[i]:
                name = "this" if pos == 0 else c.params[pos - 1].name
                report.violations.append(ProbeViolation(c.id, pos, name, ", ".join(_describe(s) for s in combo)))


def _peek(x: object) -> object:
    return x.get() if isinstance(x, Cell) else x


def probe_soundness(rp: ResolvedProgram, universe: Sequence[int] = (1, 2), max_size: int = 2,
                    summary: Optional[MutationSummary] = None) -> SoundnessReport:
    """Look for argument state changes at positions the summary leaves unmarked."""
    summary = summary or mutation_summaries(rp)
    report = SoundnessReport()
    for c in rp.callables():
        if c.kind == "function" and c.decl.name == "main":
            continue
        probe_callable(rp, c, summary, report, universe, max_size)
    return report


BRULES = CheckConfig(frozenset({
    RuleId.R1_NO_VIRTUAL, RuleId.R2_OPAQUE_EXPORTS, RuleId.R3S_NO_MUTATION, RuleId.R4_CTOR_DELEGATION,
}))


@dataclass(frozen=True)
class Family:
    """Source files, the base suite and the factories of every subclass."""

    name: str
    files: tuple[str, ...]
    suite: str
    derived_factories: tuple[str, ...]


@dataclass
class FamilyResult:
    family: Family
    violations: int
    reports: list[SubstitutionReport]

    @property
    def conforms(self) -> bool:
        return self.violations == 0

    @property
    def substitutable(self) -> bool:
        return all(r.substitutable for r in self.reports)

    @property
    def holds(self) -> bool:
        """Conformance implies substitutability."""
        return not self.conforms or self.substitutable


def headline(family: Family, read=None) -> FamilyResult:
    rp = load(list(family.files), read=read)
    diags = check_all(rp, BRULES)
    suite = load_suite(family.suite)
    reports = [substitution_test(rp, suite, f) for f in family.derived_factories]
    return FamilyResult(family, len(diags), reports)
