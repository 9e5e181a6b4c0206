"""Contract suites and the substitution test."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..frontend.resolver import ResolvedProgram
from ..interp import ExecError, Interpreter, ObjRef


class SuiteError(ValueError):
    """Malformed suite description."""


class ConfigError(ValueError):
    """A suite or factory that does not fit the program."""


@dataclass(frozen=True)
class ContractCase:
    name: str
    driver: str


@dataclass(frozen=True)
class ContractSuite:
    base_class: str
    factory_base: str
    cases: tuple[ContractCase, ...] = ()
    name: str = "suite"


def parse_suite(text: str, name: str = "suite") -> ContractSuite:
    base = factory = None
    cases: list[ContractCase] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        where = f"{name}:{lineno}"
        if words[0] == "base" and len(words) == 2:
            if base is not None:
                raise SuiteError(f"{where}: duplicate base directive")
            base = words[1]
        elif words[0] == "factory" and len(words) == 2:
            if factory is not None:
                raise SuiteError(f"{where}: duplicate factory directive")
            factory = words[1]
        elif words[0] == "case" and len(words) == 3:
            if any(c.name == words[1] for c in cases):
                raise SuiteError(f"{where}: duplicate case {words[1]!r}")
            cases.append(ContractCase(words[1], words[2]))
        else:
            raise SuiteError(f"{where}: cannot parse {raw.strip()!r}")
    if base is None or factory is None:
        raise SuiteError(f"{name}: a suite needs both a base and a factory directive")
    return ContractSuite(base, factory, tuple(cases), name)


def load_suite(path: str | Path) -> ContractSuite:
    p = Path(path)
    return parse_suite(p.read_text(encoding="utf-8"), p.stem)


@dataclass(frozen=True)
class CaseResult:
    name: str
    passed: bool
    note: str = ""


def _check_factory(rp: ResolvedProgram, factory: str) -> None:
    f = rp.function(factory, 0)
    if f is None:
        raise ConfigError(f"factory {factory!r} must be a zero-argument function")
    if f.return_type not in rp.classes:
        raise ConfigError(f"factory {factory!r} does not return an object")


def _check_driver(rp: ResolvedProgram, case: ContractCase) -> None:
    f = rp.function(case.driver, 1)
    if f is None:
        raise ConfigError(f"case {case.name!r}: driver {case.driver!r} must take exactly one argument")
    if f.return_type != "bool":
        raise ConfigError(f"case {case.name!r}: driver {case.driver!r} must return bool")


def factory_class(rp: ResolvedProgram, factory: str, **limits) -> str:
    """Dynamic class of the value ``factory()`` builds."""
    _check_factory(rp, factory)
    interp = Interpreter(rp, **limits)
    try:
        v = interp.call_function(factory, [])
    except ExecError as err:
        raise ConfigError(f"factory {factory!r} failed: {err}") from err
    if not isinstance(v, ObjRef):
        raise ConfigError(f"factory {factory!r} did not build an object")
    return interp.store.class_of(v)


def run_case(rp: ResolvedProgram, case: ContractCase, factory: str, **limits) -> CaseResult:
    interp = Interpreter(rp, **limits)
    try:
        value = interp.call_function(factory, [])
        result = interp.call_function(case.driver, [value])
    except ExecError as err:
        return CaseResult(case.name, False, f"{err.kind}: {err.message}")
    if interp.assertions_failed:
        return CaseResult(case.name, False, f"{len(interp.assertions_failed)} assertion(s) failed")
    if result is not True:
        return CaseResult(case.name, False, "contract returned false")
    return CaseResult(case.name, True)


def run_suite(rp: ResolvedProgram, suite: ContractSuite, factory: Optional[str] = None, **limits) -> list[CaseResult]:
    """Evaluate ``driver(factory())`` per case, each in a fresh interpreter."""
    factory = factory or suite.factory_base
    _check_factory(rp, factory)
    for case in suite.cases:
        _check_driver(rp, case)
    return [run_case(rp, case, factory, **limits) for case in suite.cases]


@dataclass(frozen=True)
class CaseVerdict:
    name: str
    driver: str
    base: CaseResult
    derived: CaseResult

    @property
    def regression(self) -> bool:
        return self.base.passed and not self.derived.passed


@dataclass
class SubstitutionReport:
    suite: ContractSuite
    derived_factory: str
    derived_class: str
    cases: list[CaseVerdict] = field(default_factory=list)

    @property
    def substitutable(self) -> bool:
        return not any(c.regression for c in self.cases)

    @property
    def verdict(self) -> str:
        return "substitutable" if self.substitutable else "not substitutable"

    def failures(self) -> list[str]:
        """Cases that pass for the base value and fail for the derived one."""
        return [c.name for c in self.cases if c.regression]

    def to_dict(self) -> dict:
        def outcome(r: CaseResult) -> str:
            return "pass" if r.passed else "fail"

        cases = []
        for c in self.cases:
            entry = {
                "name": c.name,
                "driver": c.driver,
                "base_result": outcome(c.base),
                "derived_result": outcome(c.derived),
            }
            notes = {k: r.note for k, r in (("base_note", c.base), ("derived_note", c.derived)) if r.note}
            entry.update(notes)
            cases.append(entry)
        return {
            "version": 1,
            "suite": self.suite.name,
            "base_class": self.suite.base_class,
            "base_factory": self.suite.factory_base,
            "derived_factory": self.derived_factory,
            "derived_class": self.derived_class,
            "cases": cases,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"suite {self.suite.name}: base {self.suite.factory_base} ({self.suite.base_class}), "
                 f"derived {self.derived_factory} ({self.derived_class})"]
        for c in self.cases:
            b = "pass" if c.base.passed else "fail"
            d = "pass" if c.derived.passed else "fail"
            mark = "  <- breaks" if c.regression else ""
            lines.append(f"  {c.name}: base {b}, derived {d}{mark}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def substitution_test(rp: ResolvedProgram, suite: ContractSuite, derived_factory: str, **limits) -> SubstitutionReport:
    """Run ``suite`` under its own factory and under ``derived_factory``.

    The derived value must belong to a class related to the suite's base
    class, either below it or above it.  Running a set suite on a bag is
    how the failure in the other direction is shown.
    """
    if suite.base_class not in rp.classes:
        raise ConfigError(f"suite base class {suite.base_class!r} is not declared")
    base_cls = factory_class(rp, suite.factory_base, **limits)
    if base_cls != suite.base_class:
        raise ConfigError(
            f"factory {suite.factory_base!r} builds a {base_cls}, not a {suite.base_class}"
        )
    derived_cls = factory_class(rp, derived_factory, **limits)
    if not rp.related(derived_cls, suite.base_class):
        raise ConfigError(
            f"factory {derived_factory!r} builds a {derived_cls}, unrelated to {suite.base_class}"
        )
    base_results = run_suite(rp, suite, suite.factory_base, **limits)
    derived_results = run_suite(rp, suite, derived_factory, **limits)
    report = SubstitutionReport(suite, derived_factory, derived_cls)
    for case, b, d in zip(suite.cases, base_results, derived_results):
        report.cases.append(CaseVerdict(case.name, case.driver, b, d))
    return report
