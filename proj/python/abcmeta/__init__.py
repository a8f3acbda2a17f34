"""Estimate study mean and SD from reported summary statistics via ABC."""

from ._abcmeta import (
    AbcConfig,
    AbcResult,
    AbcmetaError,
    DistributionSpec,
    Family,
    FiveNumber,
    Scenario,
    SelectionLimits,
    SummaryStats,
    apply_shift,
    derive_study_seed,
    moments_of,
    parse_summary,
    required_positive,
    run_abc,
    run_selection,
    shift_stats,
    summary_of,
    unshift_result,
)

__all__ = [
    "AbcConfig",
    "AbcResult",
    "AbcmetaError",
    "DistributionSpec",
    "Family",
    "FiveNumber",
    "Scenario",
    "SelectionLimits",
    "SummaryStats",
    "apply_shift",
    "derive_study_seed",
    "moments_of",
    "parse_summary",
    "required_positive",
    "run_abc",
    "run_selection",
    "shift_stats",
    "summary_of",
    "unshift_result",
]

__version__ = "0.1.0"
