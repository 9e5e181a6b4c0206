from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from minioo.frontend import ParseError, parse_program, parse_source, pretty_print, resolve, tokenize
from minioo.frontend import ast

from conftest import SRC
from progen import random_program

CORPUS_FILES = sorted(p.name for p in SRC.glob("*.moo"))


def test_cset_declares_a_subclass_of_cbag():
    prog = parse_program(tokenize((SRC / "cset.moo").read_text(), "cset.moo"))
    cset = next(d for d in prog.classes if d.name == "CSet")
    assert cset.base == "CBag" and cset.exported


def test_second_base_class_is_rejected():
    with pytest.raises(ParseError) as info:
        parse_source("class A : B : C {}")
    assert "'{'" in info.value.expected
    assert (info.value.span.line, info.value.span.col) == (1, 13)


def test_empty_class_prints_canonically():
    assert pretty_print(parse_source("class A{}")) == "class A {\n}\n"


def test_empty_program_prints_nothing():
    assert pretty_print(parse_source("")) == ""


def test_members_and_modes():
    prog = parse_source("""
        export class C : B {
          public:
            virtual int get(ref int a, constref C c) { return a; }
          private:
            list xs;
          C(int n) : B(n), xs(nil) {}
          friend peek;
        }
    """)
    c = prog.classes[0]
    m = c.methods[0]
    assert m.is_virtual and m.visibility == ast.PUBLIC
    assert [p.mode for p in m.params] == [ast.REF, ast.CONSTREF]
    assert c.fields[0].visibility == ast.PRIVATE
    k = c.ctors[0]
    assert k.base_init.name == "B" and [i.name for i in k.field_inits] == ["xs"]
    assert [f.name for f in c.friends] == ["peek"]


def test_precedence_and_associativity():
    prog = parse_source("int f() { return 1 - 2 - 3 * 4 + -5; }")
    e = prog.functions[0].body[0].value
    assert pretty_print(prog) == "int f() {\n  return 1 - 2 - 3 * 4 + -5;\n}\n"
    assert isinstance(e, ast.Binary) and e.op == "+"
    assert e.left.op == "-" and e.left.left.op == "-"


def test_parens_survive_when_needed():
    src = "int f(int a, int b) {\n  return (a - b) * (a + b);\n}\n"
    assert pretty_print(parse_source(src)) == src


def test_assignment_needs_an_lvalue():
    with pytest.raises(ParseError):
        parse_source("unit f() { f() = 1; }")


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_corpus_round_trip(name):
    original = parse_source((SRC / name).read_text(), name)
    printed = pretty_print(original)
    again = parse_source(printed, name)
    assert again == original
    assert pretty_print(again) == printed


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.booleans())
def test_round_trip_on_generated_programs(seed, assignments):
    src = random_program(seed, assignments)
    rp = resolve(parse_source(src, "gen.moo"))
    printed = pretty_print(rp.program)
    rp2 = resolve(parse_source(printed, "gen.moo"))
    assert rp2.program == rp.program
    assert rp2.hierarchy == rp.hierarchy
