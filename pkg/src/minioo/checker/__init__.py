"""Rule checker: virtual methods, opaque exports, mutation, constructor delegation."""

from __future__ import annotations

from .callgraph import CallGraph, build_call_graph
from .mutation import MutationSummary, check_r3_relaxed, mutation_summaries
from .rules import (
    RELAXED,
    RULE_ORDER,
    STRICT,
    CheckConfig,
    Diagnostic,
    RuleId,
    check_all,
    check_r1,
    check_r2,
    check_r3_strict,
    check_r4,
    format_json,
    format_text,
    sort_diagnostics,
)

__all__ = [
    "CallGraph", "CheckConfig", "Diagnostic", "MutationSummary", "RELAXED", "RULE_ORDER", "RuleId",
    "STRICT", "build_call_graph", "check_all", "check_r1", "check_r2", "check_r3_relaxed",
    "check_r3_strict", "check_r4", "format_json", "format_text", "mutation_summaries",
    "sort_diagnostics",
]
