"""Exception types and validation issue records."""

from __future__ import annotations

from dataclasses import dataclass, field


# Issue codes used by model validation.
SYNTAX = "syntax"
SCHEMA = "schema"
DUPLICATE_ID = "duplicate-id"
UNKNOWN_REFERENCE = "unknown-reference"
RANGE_VIOLATION = "range-violation"
CYCLE_DETECTED = "cycle-detected"


class ModelError(Exception):
    """Base class for all errors raised by this package."""


class ModelSyntaxError(ModelError):
    """The document is not well-formed (bad JSON or wrong top-level type)."""


@dataclass(frozen=True)
class ModelIssue:
    """One validation defect found while parsing a model document.

    ``subject_id`` is the offending entity or reference id when one is
    known; ``where`` is a path into the document for everything else.
    """

    code: str
    subject_id: str
    where: str
    message: str

    def __str__(self) -> str:
        loc = f" [{self.where}]" if self.where else ""
        return f"{self.code}: {self.message}{loc}"


class InvalidModelError(ModelError):
    """Raised when a syntactically valid document fails validation.

    Carries every issue found, not just the first, so a single run
    reports all defects.
    """

    def __init__(self, issues: list[ModelIssue]):
        self.issues = list(issues)
        head = "; ".join(str(i) for i in self.issues[:5])
        more = f" (+{len(self.issues) - 5} more)" if len(self.issues) > 5 else ""
        super().__init__(f"{len(self.issues)} validation issue(s): {head}{more}")

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}


class RangeViolationError(ModelError, ValueError):
    """A numeric argument is outside its documented range."""


class NonPositiveHoursError(ModelError, ValueError):
    """Observation or service hours must be strictly positive."""


class MissingAsilSourceError(ModelError):
    """A requirement has neither parents nor a declared ASIL."""

    def __init__(self, requirement_id: str):
        self.requirement_id = requirement_id
        super().__init__(
            f"requirement {requirement_id!r} has no parents and no declared ASIL"
        )


class MissingFaultDataError(ModelError):
    """A component on a demanding goal has neither fault data nor a SEooC claim."""

    def __init__(self, component_id: str, safety_goal_id: str):
        self.component_id = component_id
        self.safety_goal_id = safety_goal_id
        super().__init__(
            f"component {component_id!r} is allocated to safety goal "
            f"{safety_goal_id!r} but has neither fault data nor a SEooC claim"
        )


class UnknownElementError(ModelError, KeyError):
    """An id passed to an analysis does not exist in the model."""
