"""Hazard classification and concept-phase coverage checks.

The classification rule: a hazardous event rated by exposure E (0..4),
severity S (0..3), and controllability C (0..3) is integrity-relevant
only when all three ratings are non-zero.  The sum E+S+C then maps
10 -> D, 9 -> C, 8 -> B, 7 -> A; sums of 6 and below stay at QM, as does
any event with a zero rating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RangeViolationError
from .findings import Finding, finding
from .levels import AsilLevel
from .model import FSR, TSR, SafetyModel

_SUM_TO_LEVEL = {10: AsilLevel.D, 9: AsilLevel.C, 8: AsilLevel.B, 7: AsilLevel.A}


@dataclass(frozen=True)
class HaraAssignment:
    """Classification result for one hazardous event."""

    hazardous_event_id: str
    esc_sum: int
    computed_asil: AsilLevel
    zero_summand: bool

    def to_dict(self) -> dict:
        return {
            "hazardous_event_id": self.hazardous_event_id,
            "esc_sum": self.esc_sum,
            "computed_asil": str(self.computed_asil),
            "zero_summand": self.zero_summand,
        }


def classify_asil(exposure: int, severity: int, controllability: int) -> AsilLevel:
    """Classify one (E, S, C) rating triple."""
    if not 0 <= exposure <= 4:
        raise RangeViolationError(f"exposure {exposure} outside [0, 4]")
    if not 0 <= severity <= 3:
        raise RangeViolationError(f"severity {severity} outside [0, 3]")
    if not 0 <= controllability <= 3:
        raise RangeViolationError(f"controllability {controllability} outside [0, 3]")
    if min(exposure, severity, controllability) == 0:
        return AsilLevel.QM
    return _SUM_TO_LEVEL.get(exposure + severity + controllability, AsilLevel.QM)


def classify_model_events(
    model: SafetyModel,
) -> tuple[tuple[HaraAssignment, ...], list[Finding]]:
    """Classify every hazardous event; cross-check declared ASILs."""
    assignments = []
    findings: list[Finding] = []
    for event in model.hazardous_events:
        computed = classify_asil(event.exposure, event.severity, event.controllability)
        assignments.append(
            HaraAssignment(
                hazardous_event_id=event.id,
                esc_sum=event.exposure + event.severity + event.controllability,
                computed_asil=computed,
                zero_summand=min(event.exposure, event.severity, event.controllability) == 0,
            )
        )
        if event.declared_asil is not None and event.declared_asil != computed:
            findings.append(
                finding(
                    "declared-asil-mismatch",
                    event.id,
                    f"hazardous event {event.id!r} declares ASIL "
                    f"{event.declared_asil} but E{event.exposure}+S{event.severity}"
                    f"+C{event.controllability} classifies as {computed}",
                )
            )
    if not model.hazardous_events:
        findings.append(
            finding("no-hazardous-events", "", "the model declares no hazardous events")
        )
    return tuple(assignments), findings


def safety_goal_asils(
    model: SafetyModel, assignments: tuple[HaraAssignment, ...] | None = None
) -> dict[str, AsilLevel]:
    """ASIL per safety goal: the maximum over its linked hazardous events."""
    if assignments is None:
        assignments, _ = classify_model_events(model)
    by_event = {a.hazardous_event_id: a.computed_asil for a in assignments}
    return {
        goal.id: max(by_event[he] for he in goal.hazardous_event_ids)
        for goal in model.safety_goals
    }


def check_concept_coverage(
    model: SafetyModel, assignments: tuple[HaraAssignment, ...] | None = None
) -> list[Finding]:
    """Traceability gaps between hazards, goals, FSRs, and TSRs.

    QM-rated events need no goal; everything rated A or above must be
    covered all the way down to an allocated TSR.
    """
    if assignments is None:
        assignments, _ = classify_model_events(model)
    findings: list[Finding] = []

    covered_events: set[str] = set()
    for goal in model.safety_goals:
        covered_events.update(goal.hazardous_event_ids)
    for assignment in assignments:
        if assignment.computed_asil >= AsilLevel.A and assignment.hazardous_event_id not in covered_events:
            findings.append(
                finding(
                    "uncovered-hazardous-event",
                    assignment.hazardous_event_id,
                    f"hazardous event {assignment.hazardous_event_id!r} is rated "
                    f"{assignment.computed_asil} but no safety goal addresses it",
                )
            )

    goals_with_fsr: set[str] = set()
    fsrs_with_tsr: set[str] = set()
    for req in model.requirements:
        if req.kind == FSR:
            goals_with_fsr.update(req.parent_ids)
        else:
            fsrs_with_tsr.update(req.parent_ids)
    for goal in model.safety_goals:
        if goal.id not in goals_with_fsr:
            findings.append(
                finding(
                    "safety-goal-without-fsr",
                    goal.id,
                    f"safety goal {goal.id!r} has no functional safety requirement",
                )
            )
    for req in model.requirements:
        if req.kind == FSR and req.id not in fsrs_with_tsr:
            findings.append(
                finding(
                    "fsr-without-tsr",
                    req.id,
                    f"FSR {req.id!r} is not refined by any technical safety requirement",
                )
            )
        # Parse guarantees a nonempty allocation for TSRs; re-checked here so
        # programmatically built models get the same diagnosis.
        if req.kind == TSR and not req.allocated_to:
            findings.append(
                finding(
                    "tsr-without-allocation",
                    req.id,
                    f"TSR {req.id!r} is not allocated to any component",
                )
            )
    return findings
