from __future__ import annotations

import shutil

from minioo.cli import main, read_manifest

from conftest import CORPUS


def test_corpus_matches_its_goldens(capsys):
    assert main(["corpus-verify", str(CORPUS)]) == 0
    out = capsys.readouterr().out
    n = len(read_manifest(CORPUS))
    assert n >= 30 and f"{n}/{n} fixtures match" in out


def test_edited_golden_is_reported(tmp_path, capsys):
    copy = tmp_path / "corpus"
    shutil.copytree(CORPUS, copy)
    golden = copy / "golden" / "run_fset_demo" / "out.txt"
    golden.write_text("1\n1\n1\n")
    assert main(["corpus-verify", str(copy)]) == 1
    assert "FAIL run_fset_demo: line 3: expected '1', got '0'" in capsys.readouterr().out


def test_changed_exit_code_is_reported(tmp_path, capsys):
    copy = tmp_path / "corpus"
    shutil.copytree(CORPUS, copy)
    (copy / "golden" / "run_empty" / "exit").write_text("0\n")
    assert main(["corpus-verify", str(copy)]) == 1
    assert "FAIL run_empty: exit 2, expected 0" in capsys.readouterr().out


def test_empty_corpus_warns(tmp_path, capsys):
    assert main(["corpus-verify", str(tmp_path)]) == 0
    assert "warning: no fixtures" in capsys.readouterr().err


def test_update_then_verify_round_trips(tmp_path, capsys):
    copy = tmp_path / "corpus"
    shutil.copytree(CORPUS, copy)
    shutil.rmtree(copy / "golden")
    assert main(["corpus-verify", str(copy), "--update"]) == 0
    assert main(["corpus-verify", str(copy)]) == 0
