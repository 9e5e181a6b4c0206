from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, strategies as st

from minioo.checker import MutationSummary
from minioo.frontend import parse_source, resolve
from minioo.harness import (
    ConfigError,
    DiffConfigError,
    DiffSpec,
    EncodingError,
    SuiteError,
    UfEncoding,
    check_isomorphism,
    differential_search,
    encode_bag,
    is_squarefree,
    load_suite,
    multisets,
    parse_suite,
    probe_soundness,
    radical,
    reduce,
    run_suite,
    substitution_test,
)
from minioo.harness.iso import prime_factors, table_rows

from conftest import SUITES, corpus_program


# -- suites ------------------------------------------------------------------

def test_parse_suite():
    suite = parse_suite("# c\nbase A\nfactory make_a\ncase one c_one\n\ncase two c_two\n", "s")
    assert (suite.base_class, suite.factory_base, suite.name) == ("A", "make_a", "s")
    assert [(c.name, c.driver) for c in suite.cases] == [("one", "c_one"), ("two", "c_two")]


@pytest.mark.parametrize("text", [
    "factory f\n",
    "base A\n",
    "base A\nbase B\nfactory f\n",
    "base A\nfactory f\ncase x d\ncase x e\n",
    "base A\nfactory f\nwhatever\n",
])
def test_malformed_suites(text):
    with pytest.raises(SuiteError):
        parse_suite(text)


def test_base_suite_passes_on_its_own_factory(cbag_cset):
    results = run_suite(cbag_cset, load_suite(SUITES / "bag.suite"))
    assert all(r.passed for r in results)


def test_cset_breaks_only_fnb(cbag_cset):
    report = substitution_test(cbag_cset, load_suite(SUITES / "bag.suite"), "make_cset")
    assert report.failures() == ["fnb"] and report.verdict == "not substitutable"


def test_cbag_breaks_the_set_contract(cbag_cset):
    report = substitution_test(cbag_cset, load_suite(SUITES / "set.suite"), "make_cbag")
    assert report.failures() == ["fns"]


def test_substitution_is_reflexive(cbag_cset):
    report = substitution_test(cbag_cset, load_suite(SUITES / "bag.suite"), "make_cbag")
    assert report.substitutable and report.derived_class == "CBag"


def test_fset_is_substitutable_for_fbag(fbag_fset):
    report = substitution_test(fbag_fset, load_suite(SUITES / "fbag.suite"), "make_fset")
    assert report.substitutable
    assert len(report.cases) == 6


def test_broken_fset_breaks_same_contents():
    rp = corpus_program("fbag.moo", "fset_broken.moo")
    report = substitution_test(rp, load_suite(SUITES / "fbag.suite"), "make_fset")
    assert report.failures() == ["same_contents"]


@pytest.mark.parametrize("factory", ["make_square", "make_rectangle"])
def test_shapes_are_substitutable(factory):
    rp = corpus_program("shapes_brules.moo")
    assert substitution_test(rp, load_suite(SUITES / "shape.suite"), factory).substitutable


def test_empty_suite_is_vacuously_substitutable(cbag_cset):
    suite = parse_suite("base CBag\nfactory make_cbag\n")
    report = substitution_test(cbag_cset, suite, "make_cset")
    assert report.cases == [] and report.substitutable


def test_unrelated_factory_is_a_config_error():
    rp = resolve(parse_source("""
        class A { A() {} }
        class B { B() {} }
        A make_a() { return new A(); }
        B make_b() { return new B(); }
    """, "t.moo"))
    with pytest.raises(ConfigError):
        substitution_test(rp, parse_suite("base A\nfactory make_a\n"), "make_b")


def test_bad_driver_is_a_config_error(cbag_cset):
    suite = parse_suite("base CBag\nfactory make_cbag\ncase x fnb\n")
    with pytest.raises(ConfigError):
        run_suite(cbag_cset, suite)


def test_report_json_shape(cbag_cset):
    doc = substitution_test(cbag_cset, load_suite(SUITES / "bag.suite"), "make_cset").to_dict()
    assert doc["verdict"] == "not substitutable"
    assert doc["cases"][0] == {"name": "fnb", "driver": "c_fnb", "base_result": "pass", "derived_result": "fail",
                               "derived_note": "contract returned false"}


# -- differential search -------------------------------------------------------

def test_multisets_are_ordered_by_size_then_lex():
    assert multisets([2, 1], 2) == [(), (1,), (2,), (1, 1), (1, 2), (2, 2)]


def test_no_witness_on_cbags(cbag_cset):
    assert differential_search(cbag_cset, DiffSpec("foo1", "foo2", (1, 2), 2, "make_cbag")) is None


def test_first_witness_on_csets(cbag_cset):
    w = differential_search(cbag_cset, DiffSpec("foo1", "foo2", (1,), 1, "make_cset"))
    assert w.args == ((1,), (1,), (1,))
    assert w.describe_args() == "a={1} b={1} c={1}"
    assert (w.out_a.describe(), w.out_b.describe()) == ("true", "false")


def test_an_entry_agrees_with_itself(cbag_cset):
    assert differential_search(cbag_cset, DiffSpec("foo1", "foo1", (1,), 1, "make_cset")) is None


def test_diff_config_errors(cbag_cset):
    with pytest.raises(DiffConfigError):
        DiffSpec("foo1", "foo2", (), 1, "make_cbag")
    with pytest.raises(DiffConfigError):
        DiffSpec("foo1", "foo2", (1,), -1, "make_cbag")
    with pytest.raises(DiffConfigError):
        differential_search(cbag_cset, DiffSpec("foo1", "nope", (1,), 1, "make_cbag"))
    with pytest.raises(DiffConfigError):
        differential_search(cbag_cset, DiffSpec("foo1", "bag_eq", (1,), 1, "make_cbag"))


# -- bag/integer encoding --------------------------------------------------------

def test_table_values():
    rows = {r.label: (r.bag_value, r.int_value) for r in table_rows(UfEncoding.identity())}
    assert rows == {
        "vD": (1806, 1806),
        "vE": (75852, 75852),
        "vE+vE": (5753525904, 5753525904),
        "vD%vC": (42, 42),
        "vE%vC": (1764, 1764),
        "vE%vE": (1, 1),
    }


def test_isomorphism_over_42_and_43():
    report = check_isomorphism(UfEncoding.default((42, 43)), (42, 43), 3)
    assert report.ok and report.checked == 100 and report.counterexamples == []


def test_default_encoding_gives_primes_to_other_elements():
    enc = UfEncoding.default((1, 2, 42, 43))
    assert enc.codes[42] == 42 and enc.codes[43] == 43
    assert enc.codes[1] == 5 and enc.codes[2] == 11  # 2, 3 and 7 divide 42


@pytest.mark.parametrize("codes", [{1: 1}, {1: 4}, {1: 6, 2: 10}])
def test_invalid_encodings_are_rejected(codes):
    with pytest.raises(EncodingError):
        UfEncoding(codes)


def test_number_helpers():
    assert prime_factors(75852) == {2: 2, 3: 2, 7: 2, 43: 1}
    assert radical(75852) == 1806
    assert is_squarefree(1806) and not is_squarefree(75852)
    assert reduce(75852, 43) == 1764


bags = st.lists(st.sampled_from([42, 43]), max_size=5).map(Counter)


@given(bags, bags)
def test_merge_is_multiplication(a, b):
    enc = UfEncoding.identity()
    assert encode_bag(a + b, enc) == encode_bag(a, enc) * encode_bag(b, enc)


@given(bags)
def test_set_coercion_is_the_radical(a):
    enc = UfEncoding.identity()
    assert encode_bag(Counter(set(a.elements())), enc) == radical(encode_bag(a, enc))


# -- soundness probes -------------------------------------------------------------

def test_probe_finds_no_violation_on_cbag():
    report = probe_soundness(corpus_program("cbag.moo"))
    assert report.violations == [] and report.runs > 0
    assert "CBag::size" in report.probed


def test_probe_catches_a_bogus_summary():
    rp = corpus_program("cbag.moo")
    report = probe_soundness(rp, summary=MutationSummary({}, {}, {}))
    found = {(v.callable_id, v.param) for v in report.violations}
    assert ("CBag::put", "this") in found and ("merge_into", "to") in found
