from __future__ import annotations

import functools
from pathlib import Path

import pytest

from minioo.frontend import load

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
SRC = CORPUS / "src"
SUITES = CORPUS / "suites"

# program families: each is one whole program
FAMILIES = {
    "cbag": ("cbag.moo",),
    "cbag_cset": ("cbag.moo", "cset.moo"),
    "fbag": ("fbag.moo",),
    "fbag_fset": ("fbag.moo", "fset.moo"),
    "fbag_fset_broken": ("fbag.moo", "fset_broken.moo"),
    "shapes_brules": ("shapes_brules.moo",),
    "shapes_oop": ("shapes_oop.moo",),
    "ufdemo": ("fbag.moo", "ufdemo.moo"),
}


def corpus_paths(*names: str) -> list[str]:
    return [str(SRC / n) for n in names]


@functools.lru_cache(maxsize=None)
def _load(names: tuple[str, ...]):
    return load(corpus_paths(*names))


def corpus_program(*names: str):
    """Resolved corpus program; cached, so callers must not mutate it."""
    return _load(tuple(names))


@pytest.fixture
def cbag_cset():
    return corpus_program("cbag.moo", "cset.moo")


@pytest.fixture
def fbag_fset():
    return corpus_program("fbag.moo", "fset.moo")
