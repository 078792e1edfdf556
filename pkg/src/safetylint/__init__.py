"""Deterministic functional-safety lifecycle checks over a declarative item model."""

from .errors import (
    InvalidModelError,
    MissingAsilSourceError,
    MissingFaultDataError,
    ModelError,
    ModelSyntaxError,
    NonPositiveHoursError,
    RangeViolationError,
)
from .fault_sim import SimConfig, SimResult, simulate_pmhf
from .findings import Finding, Severity
from .hara import (
    HaraAssignment,
    check_concept_coverage,
    classify_asil,
    classify_model_events,
)
from .hw_metrics import (
    ArchMetrics,
    PmhfResult,
    arch_metrics,
    check_hw_budgets,
    fit_from_observation,
    pmhf,
)
from .levels import AsilLevel
from .model import SafetyModel, load_model, parse_model, serialize_model
from .propagation import (
    EffectiveAsil,
    SchemeTable,
    ffi_analysis,
    propagate,
    propagate_with_findings,
    validate_decomposition,
)
from .report import Report, render_report, run_checks
from .sw_process import (
    PiuVerdict,
    external_component_check,
    proven_in_use_check,
    tool_qualification_check,
)

__version__ = "0.1.0"

__all__ = [
    "AsilLevel",
    "ArchMetrics",
    "EffectiveAsil",
    "Finding",
    "HaraAssignment",
    "InvalidModelError",
    "MissingAsilSourceError",
    "MissingFaultDataError",
    "ModelError",
    "ModelSyntaxError",
    "NonPositiveHoursError",
    "PiuVerdict",
    "PmhfResult",
    "RangeViolationError",
    "Report",
    "SafetyModel",
    "SchemeTable",
    "Severity",
    "SimConfig",
    "SimResult",
    "arch_metrics",
    "check_concept_coverage",
    "check_hw_budgets",
    "classify_asil",
    "classify_model_events",
    "external_component_check",
    "ffi_analysis",
    "fit_from_observation",
    "load_model",
    "parse_model",
    "pmhf",
    "propagate",
    "propagate_with_findings",
    "proven_in_use_check",
    "render_report",
    "run_checks",
    "serialize_model",
    "simulate_pmhf",
    "tool_qualification_check",
    "validate_decomposition",
]
