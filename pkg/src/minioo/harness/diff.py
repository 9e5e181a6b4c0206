"""Differential search: run two entry points on every small input."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from ..frontend.resolver import ResolvedProgram
from ..interp import Build, evaluate_function, format_value
from ..interp.machine import ExecOutcome


class DiffConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DiffSpec:
    entry_a: str
    entry_b: str
    universe: tuple[int, ...]
    max_size: int
    factory: str

    def __post_init__(self) -> None:
        if self.max_size < 0:
            raise DiffConfigError("max_size must be non-negative")
        if not self.universe:
            raise DiffConfigError("the universe must not be empty")


@dataclass(frozen=True)
class Outcome:
    value: Optional[str]
    output: tuple[str, ...]
    error: Optional[str]
    asserts_failed: int

    @classmethod
    def of(cls, o: ExecOutcome) -> "Outcome":
        err = o.error
        value = None if err is not None else format_value(o.result)
        return cls(value, tuple(o.output), None if err is None else err.kind, len(o.assertions_failed))

    def describe(self) -> str:
        parts = [f"error {self.error}" if self.error else self.value]
        if self.output:
            parts.append("output " + " | ".join(self.output))
        if self.asserts_failed:
            parts.append(f"{self.asserts_failed} failed assertion(s)")
        return ", ".join(parts)


@dataclass(frozen=True)
class Witness:
    params: tuple[str, ...]
    args: tuple[tuple[int, ...], ...]
    out_a: Outcome
    out_b: Outcome

    def describe_args(self) -> str:
        return " ".join(f"{p}={{{' '.join(map(str, a))}}}" for p, a in zip(self.params, self.args))


def multisets(universe: Sequence[int], max_size: int) -> list[tuple[int, ...]]:
    """All multisets over ``universe`` up to ``max_size``, by (size, lex)."""
    elems = sorted(set(universe))
    out: list[tuple[int, ...]] = []
    for n in range(max_size + 1):
        out.extend(itertools.combinations_with_replacement(elems, n))
    return out


def argument_tuples(arity: int, universe: Sequence[int], max_size: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    return itertools.product(multisets(universe, max_size), repeat=arity)


def differential_search(rp: ResolvedProgram, spec: DiffSpec, **limits) -> Optional[Witness]:
    """First argument tuple on which the two entries behave differently."""
    fa = _entry(rp, spec.entry_a)
    fb = _entry(rp, spec.entry_b)
    if len(fa.params) != len(fb.params):
        raise DiffConfigError(f"{spec.entry_a} and {spec.entry_b} take different numbers of arguments")
    if rp.function(spec.factory, 1) is None:
        raise DiffConfigError(f"factory {spec.factory!r} must have a one-argument (list) overload")
    params = tuple(p.name for p in fa.params)
    for args in argument_tuples(len(params), spec.universe, spec.max_size):
        built = [Build(spec.factory, a) for a in args]
        out_a = Outcome.of(evaluate_function(rp, spec.entry_a, built, **limits))
        out_b = Outcome.of(evaluate_function(rp, spec.entry_b, built, **limits))
        if out_a != out_b:
            return Witness(params, args, out_a, out_b)
    return None


def _entry(rp: ResolvedProgram, name: str):
    overloads = rp.functions.get(name)
    if not overloads:
        raise DiffConfigError(f"no function {name!r}")
    if len(overloads) > 1:
        raise DiffConfigError(f"function {name!r} is overloaded; pick an unambiguous entry")
    return next(iter(overloads.values()))
