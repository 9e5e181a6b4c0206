from __future__ import annotations

import json
import subprocess
import sys

import pytest

from minioo.cli import main

from conftest import SRC, SUITES


def src(*names):
    return [str(SRC / n) for n in names]


def write(tmp_path, text, name="t.moo"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_run_ok(capsys):
    assert main(["run", *src("cbag.moo", "cset.moo", "vcbag_foo1.moo")]) == 0
    assert capsys.readouterr().out == "false\ntrue\nfalse\n"


def test_failed_assertion_exits_1(capsys):
    assert main(["run", *src("cbag.moo", "cset.moo", "vcset_foo2.moo")]) == 1
    assert capsys.readouterr().err.count("assertion failed") == 2


def test_check_violations_exit_1_and_clean_exit_0(capsys):
    assert main(["check", *src("cbag.moo", "cset.moo")]) == 1
    assert main(["check", *src("fbag.moo", "fset.moo")]) == 0
    assert capsys.readouterr().out.count("R1_NO_VIRTUAL") == 3


def test_check_rule_selection(capsys):
    assert main(["check", *src("cbag.moo"), "--rules", "r4"]) == 0
    assert main(["check", *src("cbag.moo"), "--rules", "r3", "--form", "relaxed", "--format", "json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"]["checked_rules"] == ["R3R_NO_ARG_MUTATION"]


def test_parse_error_exits_2(tmp_path, capsys):
    assert main(["run", write(tmp_path, "int main( { return 0; }")]) == 2
    assert "t.moo:1:" in capsys.readouterr().err


def test_resolve_error_exits_2(tmp_path):
    assert main(["check", write(tmp_path, "int f() { return x; }")]) == 2


def test_missing_main_exits_2(capsys):
    assert main(["run", *src("empty.moo")]) == 2
    assert "no main()" in capsys.readouterr().err


def test_runtime_error_exits_4(tmp_path, capsys):
    assert main(["run", write(tmp_path, "int main() { return head(nil); }")]) == 4
    assert "head-of-nil" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check"],
    ["check", "missing.moo"],
    ["check", str(SRC / "cbag.moo"), "--rules", "r9"],
    ["diff", str(SRC / "cbag.moo"), "--entry-a", "foo1", "--entry-b", "foo2", "--factory", "make_cbag",
     "--universe", "x"],
    ["diff", str(SRC / "cbag.moo"), "--entry-a", "foo1", "--entry-b", "nope", "--factory", "make_cbag"],
    ["subst", str(SRC / "cbag.moo"), "--suite", "missing.suite", "--factory", "make_cbag"],
    ["subst", str(SRC / "cbag.moo"), "--suite", str(SUITES / "set.suite"), "--factory", "make_cbag"],
    ["iso", "--max-size", "-1"],
])
def test_usage_errors_exit_3(argv, capsys):
    assert main(argv) == 3
    assert capsys.readouterr().err


def test_subst_verdicts(capsys):
    files = src("cbag.moo", "cset.moo")
    assert main(["subst", *files, "--suite", str(SUITES / "bag.suite"), "--factory", "make_cset"]) == 1
    assert "fnb: base pass, derived fail  <- breaks" in capsys.readouterr().out
    assert main(["subst", *src("fbag.moo", "fset.moo"), "--suite", str(SUITES / "fbag.suite"),
                 "--factory", "make_fset"]) == 0


def test_diff_witness_text(capsys):
    argv = ["diff", *src("cbag.moo", "cset.moo"), "--entry-a", "foo1", "--entry-b", "foo2",
            "--factory", "make_cset", "--universe", "1", "--max-size", "1"]
    assert main(argv) == 1
    assert capsys.readouterr().out == "witness: a={1} b={1} c={1}\nfoo1: true\nfoo2: false\n"


def test_diff_no_witness(capsys):
    argv = ["diff", *src("cbag.moo", "cset.moo"), "--entry-a", "foo1", "--entry-b", "foo2",
            "--factory", "make_cbag"]
    assert main(argv) == 0
    assert capsys.readouterr().out.startswith("no witness:")


def test_iso_json(capsys):
    assert main(["iso", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["checked"] == 100 and doc["counterexamples"] == []


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "minioo", "iso"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0 counterexample(s)" in proc.stdout
