"""Oracles, Archimedean checkers and the property-suite runner."""

from .archimedean import (
    DownwardChain,
    check_arch_combination,
    check_archimedean,
    replay_archimedean,
)
from .oracle import (
    OracleConfig,
    oracle_pointwise_sup,
    oracle_rk_abs,
    oracle_rk_all,
    oracle_rk_inf,
    oracle_rk_neg,
    oracle_rk_pos,
    oracle_rk_sup,
    oracle_support,
)
from .report import Report
from .suites import SUITES, SuiteParams, UnknownSuiteError, run_suite

__all__ = [
    "DownwardChain",
    "OracleConfig",
    "Report",
    "SUITES",
    "SuiteParams",
    "UnknownSuiteError",
    "check_arch_combination",
    "check_archimedean",
    "oracle_pointwise_sup",
    "oracle_rk_abs",
    "oracle_rk_all",
    "oracle_rk_inf",
    "oracle_rk_neg",
    "oracle_rk_pos",
    "oracle_rk_sup",
    "oracle_support",
    "replay_archimedean",
    "run_suite",
]
