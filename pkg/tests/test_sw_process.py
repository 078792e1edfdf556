"""Proven-in-use, tool qualification, and external-component tests."""

from __future__ import annotations

import pytest

from safetylint import (
    AsilLevel,
    NonPositiveHoursError,
    external_component_check,
    ffi_analysis,
    propagate,
    proven_in_use_check,
    tool_qualification_check,
)
from safetylint.model import ProvenInUseEvidence
from safetylint.sw_process import evaluate_evidence

from .conftest import minimal_doc, parse_doc


def _ev(incidents: int, hours: float) -> ProvenInUseEvidence:
    return ProvenInUseEvidence(element_id="LIB-1", incidents=incidents, service_hours=hours)


def test_paper_threshold_example():
    """50 incidents over 1e9 hours: clears B (100 fit), not C (10 fit)."""
    verdict_b = proven_in_use_check(_ev(50, 1e9), AsilLevel.B)
    assert verdict_b.observed_fit == 50.0
    assert verdict_b.passed and verdict_b.pass_for == AsilLevel.B
    verdict_c = proven_in_use_check(_ev(50, 1e9), AsilLevel.C)
    assert not verdict_c.passed
    assert verdict_c.max_asil_supported == AsilLevel.B
    assert verdict_c.pass_for == AsilLevel.B


def test_zero_incident_point_passes_d():
    verdict = proven_in_use_check(_ev(0, 1e9), AsilLevel.D)
    assert verdict.observed_fit == 0.0
    assert verdict.passed and verdict.max_asil_supported == AsilLevel.D


def test_zero_incident_conservative_fails_d():
    """(0+1)/1e9 h is exactly 1 fit, and 1 < 1 is false."""
    verdict = proven_in_use_check(_ev(0, 1e9), AsilLevel.D, estimator="conservative")
    assert verdict.observed_fit == 1.0
    assert not verdict.passed
    assert verdict.max_asil_supported == AsilLevel.C
    verdict_c = proven_in_use_check(_ev(0, 1e9), AsilLevel.C, estimator="conservative")
    assert verdict_c.passed


@pytest.mark.parametrize(
    "incidents,hours,target,expect_pass",
    [
        # 0.999 / 1.0 / 1.001 fit against the 1-fit ASIL D ceiling
        (999, 1e12, "D", True),
        (1000, 1e12, "D", False),
        (1001, 1e12, "D", False),
        # 99.9 / 100 / 100.1 fit against the 100-fit ASIL B ceiling
        (999, 1e10, "B", True),
        (1000, 1e10, "B", False),
        (1001, 1e10, "B", False),
    ],
)
def test_strict_threshold_boundaries(incidents, hours, target, expect_pass):
    verdict = proven_in_use_check(_ev(incidents, hours), AsilLevel.parse(target))
    assert verdict.passed is expect_pass


def test_threshold_ladder_strictly_decreasing():
    from safetylint.model import DEFAULT_PIU_THRESHOLDS as thr

    assert thr[AsilLevel.D] < thr[AsilLevel.C] < thr[AsilLevel.B] < thr[AsilLevel.A]


def test_max_supported_monotone_in_observed_rate():
    previous = AsilLevel.D
    for incidents in (0, 5, 50, 500, 5000, 50000):
        verdict = proven_in_use_check(_ev(incidents, 1e9), AsilLevel.D)
        assert verdict.max_asil_supported <= previous
        previous = verdict.max_asil_supported
    assert previous == AsilLevel.QM  # 50000 fit clears nothing


def test_pass_at_x_implies_pass_below():
    evidence = _ev(7, 1e9)  # 7 fit: C and below
    order = [AsilLevel.D, AsilLevel.C, AsilLevel.B, AsilLevel.A, AsilLevel.QM]
    results = [proven_in_use_check(evidence, lvl).passed for lvl in order]
    first_pass = results.index(True)
    assert all(results[first_pass:])


def test_conservative_always_exceeds_point():
    for incidents in (0, 1, 10, 1000):
        for hours in (1e3, 1e6, 1e12):
            point = proven_in_use_check(_ev(incidents, hours), AsilLevel.B)
            conservative = proven_in_use_check(
                _ev(incidents, hours), AsilLevel.B, estimator="conservative"
            )
            assert conservative.observed_fit > point.observed_fit


def test_invalid_estimator_and_hours():
    with pytest.raises(ValueError):
        proven_in_use_check(_ev(0, 1e9), AsilLevel.B, estimator="bayesian")
    with pytest.raises(NonPositiveHoursError):
        proven_in_use_check(
            ProvenInUseEvidence(element_id="X", incidents=0, service_hours=0.0),
            AsilLevel.B,
        )


def test_point_verdicts_carry_annotation():
    verdict = proven_in_use_check(_ev(0, 1e9), AsilLevel.B)
    assert "note" in verdict.to_dict()
    conservative = proven_in_use_check(_ev(0, 1e9), AsilLevel.B, estimator="conservative")
    assert "note" not in conservative.to_dict()


# ---------------------------------------------------------------------------
# Tool qualification
# ---------------------------------------------------------------------------


def _tool_doc(can_err: bool, qualified: bool, used_for: list[str]) -> dict:
    doc = minimal_doc()
    doc["tools"] = [
        {
            "id": "TOOL-1",
            "can_introduce_errors": can_err,
            "qualified": qualified,
            "used_for": used_for,
        }
    ]
    return doc


def test_unqualified_tool_on_rated_element():
    model = parse_doc(_tool_doc(True, False, ["HW-1"]))
    findings = tool_qualification_check(model, propagate(model))
    assert [f.rule_id for f in findings] == ["unqualified-tool"]
    assert findings[0].subject_id == "TOOL-1"


def test_tool_on_qm_elements_is_fine():
    doc = _tool_doc(True, False, ["HE-1"])
    doc["hazardous_events"][0].update(exposure=1, severity=1, controllability=1)
    model = parse_doc(doc)
    findings = tool_qualification_check(model, propagate(model))
    assert findings == []


def test_qualified_or_harmless_tools_are_fine():
    for can_err, qualified in ((True, True), (False, False), (False, True)):
        model = parse_doc(_tool_doc(can_err, qualified, ["HW-1"]))
        assert tool_qualification_check(model, propagate(model)) == []


# ---------------------------------------------------------------------------
# External components
# ---------------------------------------------------------------------------


def _external_doc(developed_to: str | None, evidence_fit: float | None) -> dict:
    doc = minimal_doc()
    doc["ecus"] = [{"id": "ECU-1"}]
    swc = {"id": "LIB-1", "ecu_id": "ECU-1", "external": True}
    if developed_to is not None:
        swc["developed_to_asil"] = developed_to
    doc["sw_components"] = [swc]
    doc["requirements"][1]["allocated_to"] = ["HW-1", "LIB-1"]
    if evidence_fit is not None:
        # e.g. 0.5 fit over 2e9 hours = 1 incident
        doc["evidence"] = [
            {"element_id": "LIB-1", "incidents": 1, "service_hours": 1e9 / evidence_fit}
        ]
    return doc


def _sw_findings(doc):
    model = parse_doc(doc)
    effective = propagate(model)
    swc_effective, _ = ffi_analysis(model, effective)
    merged = {**effective, **swc_effective}
    verdicts = evaluate_evidence(model, merged)
    return external_component_check(model, merged, verdicts)


def test_external_above_development_level_without_evidence():
    findings = _sw_findings(_external_doc("B", None))
    assert [f.rule_id for f in findings] == ["unsafe-external-component"]
    assert findings[0].subject_id == "LIB-1"


def test_external_cleared_by_proven_in_use():
    # effective D; 0.5 fit observed < 1 fit clears D
    findings = _sw_findings(_external_doc("B", 0.5))
    assert findings == []


def test_external_evidence_too_weak():
    # 5 fit observed fails the 1-fit D ceiling
    findings = _sw_findings(_external_doc("B", 5.0))
    assert [f.rule_id for f in findings] == ["unsafe-external-component"]


def test_external_qm_used_at_qm():
    doc = _external_doc(None, None)
    doc["hazardous_events"][0].update(exposure=1, severity=1, controllability=1)
    assert _sw_findings(doc) == []


def test_external_developed_to_covers_use():
    doc = _external_doc("D", None)
    assert _sw_findings(doc) == []


def test_internal_components_never_flagged():
    doc = _external_doc("B", None)
    doc["sw_components"][0]["external"] = False
    assert _sw_findings(doc) == []


def test_configured_estimator_applies_to_model_evidence():
    """With the conservative estimator, 0 incidents over 1e9 h reads as 1 fit."""
    doc = minimal_doc()
    doc["evidence"] = [
        {"element_id": "HW-1", "incidents": 0, "service_hours": 1e9}
    ]
    doc["config"] = {"piu_estimator": "conservative"}
    model = parse_doc(doc)
    verdicts = evaluate_evidence(model, propagate(model))
    assert verdicts[0].estimator == "conservative"
    assert verdicts[0].observed_fit == 1.0
    assert not verdicts[0].passed  # HW-1 is effective D; 1 < 1 fails

    doc["config"] = {"piu_estimator": "point"}
    model = parse_doc(doc)
    verdicts = evaluate_evidence(model, propagate(model))
    assert verdicts[0].observed_fit == 0.0 and verdicts[0].passed


def test_configured_piu_thresholds_override():
    doc = minimal_doc()
    doc["evidence"] = [
        {"element_id": "HW-1", "incidents": 5, "service_hours": 1e10}  # 0.5 fit
    ]
    doc["config"] = {"piu_thresholds": {"D": 0.25, "C": 10, "B": 100, "A": 1000}}
    model = parse_doc(doc)
    verdicts = evaluate_evidence(model, propagate(model))
    assert not verdicts[0].passed  # 0.5 >= tightened 0.25 ceiling
    assert verdicts[0].max_asil_supported == AsilLevel.C
