"""Behavioral machinery: contract suites, differential search, the bag/integer
isomorphism and checker-vs-execution cross-checks."""

from __future__ import annotations

from .diff import DiffConfigError, DiffSpec, Outcome, Witness, differential_search, multisets
from .iso import (
    EncodingError,
    IsoReport,
    TableRow,
    UfEncoding,
    check_isomorphism,
    encode_bag,
    is_squarefree,
    radical,
    reduce,
)
from .probes import BRULES, Family, FamilyResult, SoundnessReport, headline, probe_soundness
from .suites import (
    CaseResult,
    ConfigError,
    ContractCase,
    ContractSuite,
    SubstitutionReport,
    SuiteError,
    load_suite,
    parse_suite,
    run_suite,
    substitution_test,
)

__all__ = [
    "BRULES", "CaseResult", "ConfigError", "ContractCase", "ContractSuite", "DiffConfigError", "DiffSpec",
    "EncodingError", "Family", "FamilyResult", "IsoReport", "Outcome", "SoundnessReport",
    "SubstitutionReport", "SuiteError", "TableRow", "UfEncoding", "Witness", "check_isomorphism",
    "differential_search", "encode_bag", "headline", "is_squarefree", "load_suite", "multisets",
    "parse_suite", "probe_soundness", "radical", "reduce", "run_suite", "substitution_test",
]
