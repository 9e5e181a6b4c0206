"""Bags of integers as products of codes, and the identities that make the
encoding an isomorphism: merge is multiplication, subtraction is
``a / gcd(a, b)``, sets are the squarefree numbers and coercion to a set
is the radical."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .diff import multisets

WORKED_ELEMENTS = (42, 43)


class EncodingError(ValueError):
    pass


def prime_factors(n: int) -> dict[int, int]:
    """Trial division; the encoded values stay small enough for it."""
    if n < 1:
        raise ValueError("only positive integers factor")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in prime_factors(n).values())


def radical(n: int) -> int:
    return math.prod(prime_factors(n))


def reduce(a: int, b: int) -> int:
    return a // math.gcd(a, b)


@dataclass(frozen=True)
class UfEncoding:
    codes: Mapping[int, int]

    def __post_init__(self) -> None:
        for elem, code in self.codes.items():
            if code <= 1:
                raise EncodingError(f"code of {elem} must exceed 1")
            if not is_squarefree(code):
                raise EncodingError(f"code {code} of {elem} is not squarefree")
        for (x, cx), (y, cy) in itertools.combinations(self.codes.items(), 2):
            if math.gcd(cx, cy) != 1:
                raise EncodingError(f"codes of {x} and {y} share a factor")

    @classmethod
    def identity(cls, elements: Iterable[int] = WORKED_ELEMENTS) -> "UfEncoding":
        return cls({e: e for e in elements})

    @classmethod
    def default(cls, universe: Iterable[int]) -> "UfEncoding":
        """Identity codes for 42 and 43; every other element gets the next
        prime not dividing them, in increasing element order."""
        universe = sorted(set(universe))
        codes = {e: e for e in universe if e in WORKED_ELEMENTS}
        taken = {p for e in codes for p in prime_factors(e)}
        primes = (p for p in itertools.count(2) if prime_factors(p) == {p: 1})
        for e in universe:
            if e in codes:
                continue
            p = next(primes)
            while p in taken:
                p = next(primes)
            codes[e] = p
            taken.add(p)
        return cls(codes)


def encode_bag(bag: Iterable[int] | Counter, enc: UfEncoding) -> int:
    counts = bag if isinstance(bag, Counter) else Counter(bag)
    out = 1
    for elem, mult in counts.items():
        if elem not in enc.codes:
            raise EncodingError(f"element {elem} has no code")
        out *= enc.codes[elem] ** mult
    return out


def merge(a: Counter, b: Counter) -> Counter:
    return a + b


def subtract(a: Counter, b: Counter) -> Counter:
    return a - b


def is_set(a: Counter) -> bool:
    return all(m <= 1 for m in a.values())


def coerce_to_set(a: Counter) -> Counter:
    return Counter(set(a.elements()))


@dataclass(frozen=True)
class TableRow:
    label: str
    bags: str
    ints: str
    bag_value: int
    int_value: int

    @property
    def agrees(self) -> bool:
        return self.bag_value == self.int_value


@dataclass
class IsoReport:
    universe: tuple[int, ...]
    max_size: int
    checked: int = 0
    counterexamples: list[str] = field(default_factory=list)
    rows: list[TableRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and all(r.agrees for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "universe": list(self.universe),
            "max_size": self.max_size,
            "checked": self.checked,
            "rows": [
                {"label": r.label, "bags": r.bags, "integers": r.ints, "bag_value": r.bag_value,
                 "int_value": r.int_value}
                for r in self.rows
            ],
            "counterexamples": list(self.counterexamples),
        }

    def to_text(self) -> str:
        lines = [f"{r.label}: {r.bags} -> {r.bag_value}; {r.ints} -> {r.int_value}" for r in self.rows]
        lines.append(f"checked {self.checked} pairs over {{{','.join(map(str, self.universe))}}} "
                     f"up to size {self.max_size}: {len(self.counterexamples)} counterexample(s)")
        lines.extend(self.counterexamples)
        return "\n".join(lines) + "\n"


def table_rows(enc: UfEncoding) -> list[TableRow]:
    """The six worked rows over the bags of 42 and 43."""
    vB, vC = Counter([42]), Counter([43])
    vD = merge(vB, vC)
    vE = merge(vB, vD)
    e = lambda bag: encode_bag(bag, enc)
    iB, iC = e(vB), e(vC)
    iD = iB * iC
    iE = iB * iD
    return [
        TableRow("vD", "vB+vC", "vB*vC", e(vD), iD),
        TableRow("vE", "vB+vD", "vB*vD", e(vE), iE),
        TableRow("vE+vE", "vE+vE", "vE*vE", e(merge(vE, vE)), iE * iE),
        TableRow("vD%vC", "vD-vC", "vD%vC", e(subtract(vD, vC)), reduce(iD, iC)),
        TableRow("vE%vC", "vE-vC", "vE%vC", e(subtract(vE, vC)), reduce(iE, iC)),
        TableRow("vE%vE", "vE-vE", "vE%vE", e(subtract(vE, vE)), reduce(iE, iE)),
    ]


def check_isomorphism(enc: UfEncoding, universe: Sequence[int], max_size: int) -> IsoReport:
    report = IsoReport(tuple(sorted(set(universe))), max_size)
    bags = [Counter(m) for m in multisets(universe, max_size)]
    for a in bags:
        ea = encode_bag(a, enc)
        if is_set(a) != is_squarefree(ea):
            report.counterexamples.append(f"set/squarefree: {sorted(a.elements())} encodes to {ea}")
        if encode_bag(coerce_to_set(a), enc) != radical(ea):
            report.counterexamples.append(f"coercion/radical: {sorted(a.elements())}")
        for b in bags:
            eb = encode_bag(b, enc)
            report.checked += 1
            if encode_bag(merge(a, b), enc) != ea * eb:
                report.counterexamples.append(f"merge: {sorted(a.elements())} + {sorted(b.elements())}")
            if encode_bag(subtract(a, b), enc) != reduce(ea, eb):
                report.counterexamples.append(f"subtract: {sorted(a.elements())} - {sorted(b.elements())}")
    if all(x in enc.codes for x in WORKED_ELEMENTS):
        report.rows = table_rows(enc)
    return report
