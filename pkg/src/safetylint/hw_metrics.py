"""Hardware failure-rate arithmetic and architectural metrics.

All rates are in FIT (failures per 10^9 operating hours).  The residual
rate towards a safety goal uses a first-order fault model: each
safety-related failure mode either escapes undetected (no mechanism, or
the mechanism misses it with probability 1-DC) and violates the goal,
or it is caught.  SEooC components contribute their safety manual's
subsumed rate as-is and are opaque to the architectural metrics.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    MissingFaultDataError,
    NonPositiveHoursError,
    RangeViolationError,
)
from .findings import Finding, finding
from .hara import safety_goal_asils
from .levels import AsilLevel
from .model import HwComponent, SafetyModel
from .propagation import EffectiveAsil

FIT_HOURS = 1e9


def fit_from_observation(failures: int, hours: float) -> float:
    """Observed failure rate in FIT: failures per 10^9 hours."""
    if hours <= 0:
        raise NonPositiveHoursError(f"observation hours must be > 0, got {hours!r}")
    if failures < 0:
        raise RangeViolationError(f"failure count must be >= 0, got {failures!r}")
    return failures * FIT_HOURS / hours


@dataclass(frozen=True)
class PmhfResult:
    """Residual failure rate towards one safety goal, with its budget."""

    safety_goal_id: str
    analytic_fit: float
    contributions: dict[str, float]
    target: float | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "safety_goal_id": self.safety_goal_id,
            "analytic_fit": self.analytic_fit,
            "contributions": dict(sorted(self.contributions.items())),
            "target": self.target,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ArchMetrics:
    """Single-point and latent fault metrics for one safety goal."""

    safety_goal_id: str
    spfm: float
    lfm: float
    spfm_target: float | None
    lfm_target: float | None
    spfm_passed: bool
    lfm_passed: bool
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "safety_goal_id": self.safety_goal_id,
            "spfm": self.spfm,
            "lfm": self.lfm,
            "spfm_target": self.spfm_target,
            "lfm_target": self.lfm_target,
            "spfm_passed": self.spfm_passed,
            "lfm_passed": self.lfm_passed,
            "notes": list(self.notes),
        }


def component_residual_fit(component: HwComponent, model: SafetyModel) -> float:
    """Goal-violating rate of one component under the first-order model."""
    if component.seooc is not None:
        return component.seooc.subsumed_fit
    total = 0.0
    for entry in component.fault_data:
        dc = 0.0
        if entry.mechanism_id is not None:
            dc = model.mechanisms_by_id[entry.mechanism_id].dc
        total += entry.safety_related_fit * (1.0 - dc)
    return total


def _goal_level(
    model: SafetyModel,
    goal_id: str,
    propagated: dict[str, EffectiveAsil] | None,
) -> AsilLevel:
    if propagated is not None and goal_id in propagated:
        return propagated[goal_id].effective
    return safety_goal_asils(model)[goal_id]


def _require_fault_data(
    model: SafetyModel, goal_id: str, level: AsilLevel, components: tuple[HwComponent, ...]
) -> None:
    if level < AsilLevel.B:
        return
    for comp in components:
        if not comp.fault_data and comp.seooc is None:
            raise MissingFaultDataError(comp.id, goal_id)


def pmhf(
    model: SafetyModel,
    safety_goal_id: str,
    propagated: dict[str, EffectiveAsil] | None = None,
) -> PmhfResult:
    """Residual hardware failure rate towards one goal vs. its FIT budget.

    The budget comes from the model config, keyed by the goal's ASIL;
    comparison is inclusive (a rate equal to the budget passes).
    """
    level = _goal_level(model, safety_goal_id, propagated)
    components = model.hw_components_for_goal(safety_goal_id)
    _require_fault_data(model, safety_goal_id, level, components)
    contributions = {
        comp.id: component_residual_fit(comp, model) for comp in components
    }
    analytic = sum(contributions[c.id] for c in components)
    target = model.config.pmhf_targets.get(level)
    return PmhfResult(
        safety_goal_id=safety_goal_id,
        analytic_fit=analytic,
        contributions=contributions,
        target=target,
        passed=target is None or analytic <= target,
    )


def arch_metrics(
    model: SafetyModel,
    safety_goal_id: str,
    propagated: dict[str, EffectiveAsil] | None = None,
) -> ArchMetrics:
    """Single-point and latent fault metrics over a goal's allocated hardware.

    SEooC components are excluded from both numerator and denominator:
    their internals are opaque.  A zero denominator reports the metric
    as 1.0 with an explanatory note.
    """
    level = _goal_level(model, safety_goal_id, propagated)
    components = model.hw_components_for_goal(safety_goal_id)
    _require_fault_data(model, safety_goal_id, level, components)

    lam_total = 0.0
    lam_spf = 0.0  # uncovered safety-related rate
    lam_rf = 0.0  # residual rate of covered entries
    lam_latent = 0.0
    for comp in components:
        if comp.seooc is not None:
            continue
        for entry in comp.fault_data:
            lam_total += entry.safety_related_fit
            if entry.mechanism_id is None:
                lam_spf += entry.safety_related_fit
            else:
                mech = model.mechanisms_by_id[entry.mechanism_id]
                lam_rf += entry.safety_related_fit * (1.0 - mech.dc)
                lam_latent += entry.safety_related_fit * mech.dc * (1.0 - mech.latent_dc)

    notes: list[str] = []
    if lam_total > 0:
        spfm = 1.0 - (lam_spf + lam_rf) / lam_total
    else:
        spfm = 1.0
        notes.append("no safety-related failure rate allocated; SPFM reported as 1.0")
    lfm_denominator = lam_total - lam_spf - lam_rf
    if lfm_denominator > 0:
        lfm = 1.0 - lam_latent / lfm_denominator
    else:
        lfm = 1.0
        notes.append("no detected fault mass remains; LFM reported as 1.0")

    spfm_target = model.config.spfm_targets.get(level)
    lfm_target = model.config.lfm_targets.get(level)
    return ArchMetrics(
        safety_goal_id=safety_goal_id,
        spfm=spfm,
        lfm=lfm,
        spfm_target=spfm_target,
        lfm_target=lfm_target,
        spfm_passed=spfm_target is None or spfm >= spfm_target,
        lfm_passed=lfm_target is None or lfm >= lfm_target,
        notes=tuple(notes),
    )


def evaluate_hw(
    model: SafetyModel, propagated: dict[str, EffectiveAsil]
) -> tuple[tuple[PmhfResult, ...], tuple[ArchMetrics, ...], list[Finding]]:
    """PMHF and architectural metrics for every goal with allocated hardware.

    Components lacking both fault data and a SEooC claim on goals at
    ASIL B or above become ``missing-fault-data`` findings and suppress
    the metrics for that goal rather than crashing the run.
    """
    pmhf_results: list[PmhfResult] = []
    arch_results: list[ArchMetrics] = []
    findings: list[Finding] = []
    for goal in model.safety_goals:
        components = model.hw_components_for_goal(goal.id)
        if not components:
            continue
        level = _goal_level(model, goal.id, propagated)
        blank = [c for c in components if not c.fault_data and c.seooc is None]
        if level >= AsilLevel.B and blank:
            for comp in blank:
                findings.append(
                    finding(
                        "missing-fault-data",
                        comp.id,
                        f"component {comp.id!r} is allocated to {level} safety goal "
                        f"{goal.id!r} but has neither fault data nor a SEooC claim",
                    )
                )
            continue
        result = pmhf(model, goal.id, propagated)
        pmhf_results.append(result)
        if not result.passed:
            findings.append(
                finding(
                    "pmhf-exceeded",
                    goal.id,
                    f"residual rate {result.analytic_fit:g} fit towards goal "
                    f"{goal.id!r} exceeds the {level} target of {result.target:g} fit",
                )
            )
        metrics = arch_metrics(model, goal.id, propagated)
        arch_results.append(metrics)
        if not metrics.spfm_passed:
            findings.append(
                finding(
                    "spfm-below-target",
                    goal.id,
                    f"SPFM {metrics.spfm:.4f} for goal {goal.id!r} is below the "
                    f"{level} target {metrics.spfm_target:g}",
                )
            )
        if not metrics.lfm_passed:
            findings.append(
                finding(
                    "lfm-below-target",
                    goal.id,
                    f"LFM {metrics.lfm:.4f} for goal {goal.id!r} is below the "
                    f"{level} target {metrics.lfm_target:g}",
                )
            )
    return tuple(pmhf_results), tuple(arch_results), findings


def check_hw_budgets(
    model: SafetyModel, propagated: dict[str, EffectiveAsil]
) -> list[Finding]:
    """Budget findings only (PMHF exceedances, metrics below target)."""
    _, _, findings = evaluate_hw(model, propagated)
    return findings
