"""The syntactic rules and diagnostic formatting."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from ..frontend import ast
from ..frontend.resolver import ResolvedProgram


class RuleId(str, enum.Enum):
    R1_NO_VIRTUAL = "R1_NO_VIRTUAL"
    R2_OPAQUE_EXPORTS = "R2_OPAQUE_EXPORTS"
    R3S_NO_MUTATION = "R3S_NO_MUTATION"
    R3R_NO_ARG_MUTATION = "R3R_NO_ARG_MUTATION"
    R4_CTOR_DELEGATION = "R4_CTOR_DELEGATION"

    def __str__(self) -> str:
        return self.value


RULE_ORDER = list(RuleId)
STRICT, RELAXED = "strict", "relaxed"


@dataclass(frozen=True)
class Diagnostic:
    rule: RuleId
    span: ast.Span
    message: str
    subject: str

    def sort_key(self) -> tuple:
        return (self.span.file, self.span.line, self.span.col, self.rule.value)

    def text(self) -> str:
        s = self.span
        return f"{s.file}:{s.line}:{s.col}: {self.rule.value}: {self.message}"

    def to_dict(self) -> dict:
        s = self.span
        return {
            "rule": self.rule.value,
            "file": s.file,
            "line": s.line,
            "col": s.col,
            "subject": self.subject,
            "message": self.message,
        }


@dataclass(frozen=True)
class CheckConfig:
    enabled: frozenset[RuleId] = frozenset(
        {RuleId.R1_NO_VIRTUAL, RuleId.R2_OPAQUE_EXPORTS, RuleId.R3S_NO_MUTATION, RuleId.R4_CTOR_DELEGATION}
    )

    def __post_init__(self) -> None:
        if {RuleId.R3S_NO_MUTATION, RuleId.R3R_NO_ARG_MUTATION} <= self.enabled:
            raise ValueError("the strict and relaxed mutation rules are mutually exclusive")

    @property
    def mutation_form(self) -> str | None:
        if RuleId.R3S_NO_MUTATION in self.enabled:
            return STRICT
        if RuleId.R3R_NO_ARG_MUTATION in self.enabled:
            return RELAXED
        return None

    @classmethod
    def from_flags(cls, rules: str = "all", form: str = STRICT) -> "CheckConfig":
        """Build from ``--rules r1,r2,r3,r4|all`` and ``--form strict|relaxed``."""
        if form not in (STRICT, RELAXED):
            raise ValueError(f"unknown mutation form {form!r}")
        names = [r.strip().lower() for r in rules.split(",") if r.strip()]
        if names == ["all"]:
            names = ["r1", "r2", "r3", "r4"]
        table = {
            "r1": RuleId.R1_NO_VIRTUAL,
            "r2": RuleId.R2_OPAQUE_EXPORTS,
            "r3": RuleId.R3S_NO_MUTATION if form == STRICT else RuleId.R3R_NO_ARG_MUTATION,
            "r4": RuleId.R4_CTOR_DELEGATION,
        }
        unknown = [n for n in names if n not in table]
        if unknown or not names:
            raise ValueError(f"unknown rule selection {rules!r}")
        return cls(frozenset(table[n] for n in names))


def check_r1(rp: ResolvedProgram) -> list[Diagnostic]:
    out = []
    for d in rp.program.classes:
        for m in d.methods:
            if m.is_virtual:
                out.append(Diagnostic(
                    RuleId.R1_NO_VIRTUAL, m.virtual_span or m.span,
                    f"method {d.name}::{m.name} is virtual", f"{d.name}::{m.name}",
                ))
    return out


def check_r2(rp: ResolvedProgram) -> list[Diagnostic]:
    out = []
    for d in rp.program.classes:
        if not d.exported:
            continue
        members = [("field", f.name, f.visibility, f.span) for f in d.fields]
        members += [("method", m.name, m.visibility, m.span) for m in d.methods]
        for kind, name, vis, span in sorted(members, key=lambda t: (t[3].line, t[3].col)):
            if vis == ast.PUBLIC:
                out.append(Diagnostic(
                    RuleId.R2_OPAQUE_EXPORTS, span,
                    f"exported class {d.name} has public {kind} {name}", f"{d.name}::{name}",
                ))
    return out


def _assignments(stmts: list[ast.Stmt]) -> list[ast.Assign]:
    return [s for s in ast.walk_stmts(stmts) if isinstance(s, ast.Assign)]


def _target_text(a: ast.Assign) -> str:
    t = a.target
    return f"field {t.name}" if isinstance(t, ast.FieldAccess) else f"variable {t.name}"


def check_r3_strict(rp: ResolvedProgram) -> list[Diagnostic]:
    out = []
    for c in rp.callables():
        for a in _assignments(c.body):
            out.append(Diagnostic(
                RuleId.R3S_NO_MUTATION, a.span, f"assignment to {_target_text(a)} in {c.id}", c.id,
            ))
    return out


def check_r4(rp: ResolvedProgram) -> list[Diagnostic]:
    out = []
    for d in rp.program.classes:
        if d.base is None:
            continue
        # declared constructors only: an implicit one has no body and runs the
        # base default constructor
        for i, k in enumerate(d.ctors):
            cid = rp.ctor_id(d.name, i)
            if k.base_init is None:
                out.append(Diagnostic(
                    RuleId.R4_CTOR_DELEGATION, k.span,
                    f"constructor {cid} does not call a {d.base} constructor", cid,
                ))
            if _assignments(k.body):
                out.append(Diagnostic(
                    RuleId.R4_CTOR_DELEGATION, k.span,
                    f"constructor {cid} assigns in its body after the base constructor ran", cid,
                ))
    return out


def sort_diagnostics(diags: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=Diagnostic.sort_key)


def check_all(rp: ResolvedProgram, config: CheckConfig | None = None) -> list[Diagnostic]:
    from .mutation import check_r3_relaxed

    config = config or CheckConfig()
    runners = {
        RuleId.R1_NO_VIRTUAL: check_r1,
        RuleId.R2_OPAQUE_EXPORTS: check_r2,
        RuleId.R3S_NO_MUTATION: check_r3_strict,
        RuleId.R3R_NO_ARG_MUTATION: check_r3_relaxed,
        RuleId.R4_CTOR_DELEGATION: check_r4,
    }
    out: list[Diagnostic] = []
    for rule in RULE_ORDER:
        if rule in config.enabled:
            out.extend(runners[rule](rp))
    return sort_diagnostics(out)


def format_text(diags: list[Diagnostic]) -> str:
    return "".join(d.text() + "\n" for d in diags)


def format_json(diags: list[Diagnostic], config: CheckConfig) -> str:
    doc = {
        "version": 1,
        "diagnostics": [d.to_dict() for d in diags],
        "summary": {
            "checked_rules": [r.value for r in RULE_ORDER if r in config.enabled],
            "violation_count": len(diags),
        },
    }
    return json.dumps(doc, indent=2) + "\n"
