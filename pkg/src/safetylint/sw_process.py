"""Software-process checks: proven-in-use, tool qualification, externals.

A proven-in-use argument admits a component without the full development
process when its observed field incident rate is strictly below the
per-ASIL ceiling (defaults: D 1 fit, C 10 fit, B 100 fit, A 1000 fit).
The point estimator takes the record at face value; the conservative
estimator charges one extra incident ((k+1)/T) so a short zero-incident
record cannot claim a zero rate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import NonPositiveHoursError
from .findings import Finding, finding
from .hw_metrics import fit_from_observation
from .levels import RATED_LEVELS, AsilLevel
from .model import DEFAULT_PIU_THRESHOLDS, ProvenInUseEvidence, SafetyModel
from .propagation import EffectiveAsil


@dataclass(frozen=True)
class PiuVerdict:
    """Outcome of one proven-in-use evaluation against a target ASIL."""

    element_id: str
    target: AsilLevel
    estimator: str
    observed_fit: float
    threshold: float | None  # None when the target is QM (nothing to clear)
    passed: bool
    max_asil_supported: AsilLevel
    pass_for: AsilLevel

    def to_dict(self) -> dict:
        out = {
            "element_id": self.element_id,
            "target": str(self.target),
            "estimator": self.estimator,
            "observed_fit": self.observed_fit,
            "threshold": self.threshold,
            "passed": self.passed,
            "max_asil_supported": str(self.max_asil_supported),
            "pass_for": str(self.pass_for),
        }
        if self.estimator == "point":
            out["note"] = (
                "point estimate of the field record; no statistical confidence "
                "bound is applied"
            )
        return out


def proven_in_use_check(
    evidence: ProvenInUseEvidence,
    target: AsilLevel,
    estimator: str = "point",
    thresholds: Mapping[AsilLevel, float] | None = None,
) -> PiuVerdict:
    """Evaluate one field record against a target ASIL.

    Passing requires the observed rate to be strictly below the target's
    threshold.  ``max_asil_supported`` is the most demanding level the
    record would clear; QM when it clears none.
    """
    if evidence.service_hours <= 0:
        raise NonPositiveHoursError(
            f"service hours must be > 0, got {evidence.service_hours!r}"
        )
    if estimator not in ("point", "conservative"):
        raise ValueError(f"unknown estimator {estimator!r}")
    if thresholds is None:
        thresholds = DEFAULT_PIU_THRESHOLDS
    incidents = evidence.incidents + (1 if estimator == "conservative" else 0)
    observed = fit_from_observation(incidents, evidence.service_hours)

    supported = AsilLevel.QM
    for level in RATED_LEVELS:  # D first
        if level in thresholds and observed < thresholds[level]:
            supported = level
            break
    threshold = thresholds.get(target) if target != AsilLevel.QM else None
    if target == AsilLevel.QM:
        passed = True
    else:
        passed = threshold is not None and observed < threshold
    return PiuVerdict(
        element_id=evidence.element_id,
        target=target,
        estimator=estimator,
        observed_fit=observed,
        threshold=threshold,
        passed=passed,
        max_asil_supported=supported,
        pass_for=target if passed else supported,
    )


def evaluate_evidence(
    model: SafetyModel, propagated: dict[str, EffectiveAsil]
) -> tuple[PiuVerdict, ...]:
    """One verdict per evidence record, at the element's effective ASIL."""
    verdicts = []
    for record in model.evidence:
        entry = propagated.get(record.element_id)
        target = entry.effective if entry is not None else AsilLevel.QM
        verdicts.append(
            proven_in_use_check(
                record,
                target,
                estimator=model.config.piu_estimator,
                thresholds=model.config.piu_thresholds,
            )
        )
    return tuple(verdicts)


def tool_qualification_check(
    model: SafetyModel, propagated: dict[str, EffectiveAsil]
) -> list[Finding]:
    """Unqualified error-capable tools used for safety-rated elements."""
    findings: list[Finding] = []
    for tool in model.tools:
        if not tool.can_introduce_errors or tool.qualified:
            continue
        rated = sorted(
            e
            for e in tool.used_for
            if e in propagated and propagated[e].effective >= AsilLevel.A
        )
        if not rated:
            continue
        top = max(propagated[e].effective for e in rated)
        findings.append(
            finding(
                "unqualified-tool",
                tool.id,
                f"tool {tool.id!r} can introduce errors, is not qualified, and is "
                f"used for {', '.join(repr(e) for e in rated)} (up to ASIL {top})",
            )
        )
    return findings


def external_component_check(
    model: SafetyModel,
    propagated: dict[str, EffectiveAsil],
    verdicts: tuple[PiuVerdict, ...] | None = None,
) -> list[Finding]:
    """External components used above their development ASIL.

    A passing proven-in-use verdict at the effective level clears the
    component; an undeclared development level counts as QM.
    """
    if verdicts is None:
        verdicts = evaluate_evidence(model, propagated)
    passing: dict[str, set[AsilLevel]] = {}
    for verdict in verdicts:
        if verdict.passed:
            passing.setdefault(verdict.element_id, set()).add(verdict.target)
    findings: list[Finding] = []
    for swc in model.sw_components:
        if not swc.external:
            continue
        entry = propagated.get(swc.id)
        effective = entry.effective if entry is not None else AsilLevel.QM
        developed = swc.developed_to_asil or AsilLevel.QM
        if effective <= developed:
            continue
        if effective in passing.get(swc.id, set()):
            continue
        findings.append(
            finding(
                "unsafe-external-component",
                swc.id,
                f"external component {swc.id!r} is used at ASIL {effective} but was "
                f"developed to {developed} and has no passing proven-in-use argument "
                f"at {effective}",
            )
        )
    return findings
