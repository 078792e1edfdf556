"""Findings, severities, and the published rule catalog.

Every finding emitted anywhere in the package must use a rule id from
``RULE_CATALOG``; the catalog fixes the severity and the ISO 26262
clause the rule traces to.  ``docs/rules.md`` mirrors this table as
user documentation and the test suite keeps the two in sync.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Severity(enum.IntEnum):
    INFO = 0
    WARNING = 1
    ERROR = 2

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Rule:
    rule_id: str
    severity: Severity
    summary: str
    standard_ref: str


@dataclass(frozen=True)
class Finding:
    rule_id: str
    severity: Severity
    subject_id: str
    message: str
    standard_ref: str

    def to_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "severity": str(self.severity),
            "subject_id": self.subject_id,
            "message": self.message,
            "standard_ref": self.standard_ref,
        }


_RULES = (
    Rule(
        "no-hazardous-events",
        Severity.WARNING,
        "The model declares no hazardous events; there is nothing to analyze.",
        "part 3.7",
    ),
    Rule(
        "declared-asil-mismatch",
        Severity.ERROR,
        "A declared ASIL differs from the computed one; computed values win.",
        "parts 3.7, 3.8",
    ),
    Rule(
        "uncovered-hazardous-event",
        Severity.ERROR,
        "A hazardous event rated ASIL A or higher has no safety goal.",
        "part 3.7",
    ),
    Rule(
        "safety-goal-without-fsr",
        Severity.ERROR,
        "A safety goal is not refined by any functional safety requirement.",
        "part 3.8",
    ),
    Rule(
        "fsr-without-tsr",
        Severity.ERROR,
        "A functional safety requirement has no technical refinement.",
        "part 4.6",
    ),
    Rule(
        "tsr-without-allocation",
        Severity.ERROR,
        "A technical safety requirement is not allocated to any component.",
        "part 4.6",
    ),
    Rule(
        "missing-asil-source",
        Severity.ERROR,
        "A requirement has neither parents nor a declared ASIL to inherit from.",
        "part 3.8",
    ),
    Rule(
        "invalid-decomposition",
        Severity.ERROR,
        "A decomposition group is not backed by independence evidence or uses "
        "a child-ASIL combination the scheme table does not allow.",
        "part 9.5",
    ),
    Rule(
        "asil-lift-up",
        Severity.WARNING,
        "A software component is lifted to the highest ASIL on its ECU because "
        "freedom from interference is not ensured.",
        "part 6-D",
    ),
    Rule(
        "unprotected-channel",
        Severity.ERROR,
        "A cross-ECU channel with a safety-rated endpoint lacks end-to-end "
        "protection.",
        "part 6-D",
    ),
    Rule(
        "pmhf-exceeded",
        Severity.ERROR,
        "The residual hardware failure rate for a safety goal exceeds its "
        "PMHF target.",
        "part 5.9",
    ),
    Rule(
        "spfm-below-target",
        Severity.WARNING,
        "The single-point fault metric is below the configured target.",
        "part 5.C",
    ),
    Rule(
        "lfm-below-target",
        Severity.WARNING,
        "The latent fault metric is below the configured target.",
        "part 5.C",
    ),
    Rule(
        "missing-fault-data",
        Severity.ERROR,
        "A component allocated to a goal at ASIL B or higher carries neither "
        "fault data nor a SEooC claim.",
        "part 5.8",
    ),
    Rule(
        "unqualified-tool",
        Severity.ERROR,
        "An unqualified tool that can introduce errors is used for a "
        "safety-rated element.",
        "part 8.11",
    ),
    Rule(
        "unsafe-external-component",
        Severity.ERROR,
        "An external component is used above the ASIL it was developed to, "
        "without a passing proven-in-use argument.",
        "part 8.12",
    ),
)

RULE_CATALOG: dict[str, Rule] = {r.rule_id: r for r in _RULES}

#: Rules whose subject is the model as a whole rather than a single entity.
MODEL_SCOPE_RULES = frozenset({"no-hazardous-events"})


def finding(rule_id: str, subject_id: str, message: str) -> Finding:
    """Create a finding, pulling severity and clause from the catalog."""
    rule = RULE_CATALOG[rule_id]
    return Finding(
        rule_id=rule_id,
        severity=rule.severity,
        subject_id=subject_id,
        message=message,
        standard_ref=rule.standard_ref,
    )


def sort_findings(findings: list[Finding]) -> list[Finding]:
    """Deterministic report order: severity descending, then rule, then subject."""
    return sorted(findings, key=lambda f: (-int(f.severity), f.rule_id, f.subject_id))
