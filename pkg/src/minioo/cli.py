"""Command-line entry point.

Exit codes: 0 clean, 1 violations / contract failures / witness / failed
assertion, 2 parse or resolve error, 3 usage error, 4 runtime error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import shlex
import sys
from pathlib import Path
from typing import Optional, Sequence

from .checker import CheckConfig, check_all, format_json, format_text
from .frontend import FrontendError, ResolveErrors, load
from .harness import (
    ConfigError,
    DiffConfigError,
    DiffSpec,
    SuiteError,
    UfEncoding,
    check_isomorphism,
    differential_search,
    load_suite,
    multisets,
    substitution_test,
)
from .interp import run_program

EXIT_OK, EXIT_FAIL, EXIT_FRONTEND, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("the universe must not be empty")
    return values


def _size(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="minioo", description="Check, run and compare MiniOO programs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def files(sp):
        sp.add_argument("files", nargs="+", metavar="FILE", help=".moo sources, concatenated in order")

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("check", help="report rule violations")
    files(c)
    c.add_argument("--rules", default="all", help="r1,r2,r3,r4 or all")
    c.add_argument("--form", choices=("strict", "relaxed"), default="strict")
    fmt(c)

    r = sub.add_parser("run", help="run main()")
    files(r)

    s = sub.add_parser("subst", help="run a contract suite under a derived factory")
    files(s)
    s.add_argument("--suite", required=True)
    s.add_argument("--factory", required=True, help="zero-argument derived factory")
    fmt(s)

    d = sub.add_parser("diff", help="search for inputs on which two entries disagree")
    files(d)
    d.add_argument("--entry-a", required=True)
    d.add_argument("--entry-b", required=True)
    d.add_argument("--factory", required=True, help="list-argument collection builder")
    d.add_argument("--universe", type=_csv_ints, default=(1, 2))
    d.add_argument("--max-size", type=_size, default=2)
    fmt(d)

    i = sub.add_parser("iso", help="check the bag/integer encoding identities")
    i.add_argument("--universe", type=_csv_ints, default=(42, 43))
    i.add_argument("--max-size", type=_size, default=3)
    fmt(i)

    v = sub.add_parser("corpus-verify", help="re-run corpus fixtures against their goldens")
    v.add_argument("corpus", nargs="?", default="corpus")
    v.add_argument("--update", action="store_true", help="rewrite the goldens instead of comparing")
    return p


def _err(text: str) -> None:
    sys.stderr.write(text if text.endswith("\n") else text + "\n")


def _out(text: str) -> None:
    sys.stdout.write(text)


def _load(paths: Sequence[str]):
    for path in paths:
        if not Path(path).is_file():
            raise UsageError(f"minioo: cannot read {path}")
    return load(list(paths))


def cmd_check(args) -> int:
    try:
        config = CheckConfig.from_flags(args.rules, args.form)
    except ValueError as err:
        raise UsageError(f"minioo check: {err}") from None
    rp = _load(args.files)
    diags = check_all(rp, config)
    _out(format_json(diags, config) if args.format == "json" else format_text(diags))
    return EXIT_FAIL if diags else EXIT_OK


def cmd_run(args) -> int:
    rp = _load(args.files)
    outcome = run_program(rp)
    for line in outcome.output:
        _out(line + "\n")
    for span in outcome.assertions_failed:
        _err(f"{span}: assertion failed")
    if outcome.error is not None:
        _err(f"runtime error: {outcome.error}")
        return EXIT_RUNTIME
    return EXIT_FAIL if outcome.assertions_failed else EXIT_OK


def cmd_subst(args) -> int:
    try:
        suite = load_suite(args.suite)
    except OSError as err:
        raise UsageError(f"minioo subst: cannot read suite: {err}") from None
    rp = _load(args.files)
    report = substitution_test(rp, suite, args.factory)
    _out(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.substitutable else EXIT_FAIL


def cmd_diff(args) -> int:
    spec = DiffSpec(args.entry_a, args.entry_b, args.universe, args.max_size, args.factory)
    rp = _load(args.files)
    witness = differential_search(rp, spec)
    tried = len(multisets(spec.universe, spec.max_size))
    if args.format == "json":
        doc: dict = {"version": 1, "entry_a": spec.entry_a, "entry_b": spec.entry_b, "witness": None}
        if witness is not None:
            doc["witness"] = {
                "args": {p: list(a) for p, a in zip(witness.params, witness.args)},
                "out_a": witness.out_a.describe(),
                "out_b": witness.out_b.describe(),
            }
        _out(json.dumps(doc, indent=2) + "\n")
    elif witness is None:
        _out(f"no witness: {spec.entry_a} and {spec.entry_b} agree on every input "
             f"({tried} collections per argument)\n")
    else:
        _out(f"witness: {witness.describe_args()}\n")
        _out(f"{spec.entry_a}: {witness.out_a.describe()}\n")
        _out(f"{spec.entry_b}: {witness.out_b.describe()}\n")
    return EXIT_OK if witness is None else EXIT_FAIL


def cmd_iso(args) -> int:
    report = check_isomorphism(UfEncoding.default(args.universe), args.universe, args.max_size)
    _out(json.dumps(report.to_dict(), indent=2) + "\n" if args.format == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def read_manifest(corpus: Path) -> list[tuple[str, str]]:
    out = []
    path = corpus / "manifest.txt"
    if not path.is_file():
        return out
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, command = line.partition(":")
        if not sep or not name.strip() or not command.strip():
            raise UsageError(f"minioo corpus-verify: bad manifest line {raw!r}")
        out.append((name.strip(), command.strip()))
    return out


@contextlib.contextmanager
def _cwd(path: Path):
    old = os.getcwd()
    os.chdir(path)
    try:
        yield
    finally:
        os.chdir(old)


def run_fixture(corpus: Path, command: str) -> tuple[str, int]:
    """Run one manifest command inside ``corpus``; stdout and exit code."""
    out, err = io.StringIO(), io.StringIO()
    with _cwd(corpus), contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(shlex.split(command))
    return out.getvalue(), code


def _first_mismatch(expected: str, actual: str) -> str:
    exp, act = expected.splitlines(), actual.splitlines()
    for n in range(max(len(exp), len(act))):
        e = exp[n] if n < len(exp) else "<end of output>"
        a = act[n] if n < len(act) else "<end of output>"
        if e != a:
            return f"line {n + 1}: expected {e!r}, got {a!r}"
    return "trailing newline differs"


def cmd_corpus_verify(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise UsageError(f"minioo corpus-verify: no directory {corpus}")
    fixtures = read_manifest(corpus)
    if not fixtures:
        _err(f"warning: no fixtures in {corpus}")
        return EXIT_OK
    failed = 0
    for name, command in sorted(fixtures):
        out, code = run_fixture(corpus, command)
        golden = corpus / "golden" / name
        if args.update:
            golden.mkdir(parents=True, exist_ok=True)
            (golden / "out.txt").write_text(out, encoding="utf-8")
            (golden / "exit").write_text(f"{code}\n", encoding="utf-8")
            _out(f"updated {name}\n")
            continue
        try:
            want_out = (golden / "out.txt").read_text(encoding="utf-8")
            want_code = int((golden / "exit").read_text(encoding="utf-8").strip())
        except (OSError, ValueError):
            failed += 1
            _out(f"FAIL {name}: missing or unreadable golden\n")
            continue
        if out != want_out:
            failed += 1
            _out(f"FAIL {name}: {_first_mismatch(want_out, out)}\n")
        elif code != want_code:
            failed += 1
            _out(f"FAIL {name}: exit {code}, expected {want_code}\n")
        else:
            _out(f"ok {name}\n")
    if args.update:
        return EXIT_OK
    _out(f"{len(fixtures) - failed}/{len(fixtures)} fixtures match\n")
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "run": cmd_run,
    "subst": cmd_subst,
    "diff": cmd_diff,
    "iso": cmd_iso,
    "corpus-verify": cmd_corpus_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as err:
        _err(str(err))
        return EXIT_USAGE
    except (SuiteError, ConfigError, DiffConfigError) as err:
        _err(f"minioo: {err}")
        return EXIT_USAGE
    except ResolveErrors as errs:
        for e in errs.errors:
            _err(str(e))
        return EXIT_FRONTEND
    except FrontendError as err:
        _err(str(err))
        return EXIT_FRONTEND


if __name__ == "__main__":
    sys.exit(main())
