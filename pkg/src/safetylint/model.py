"""Item model: domain types, document parsing, validation, canonical form.

The model file is a single JSON document (schema version "1", see
``data/model.schema.json`` and ``docs/model_format.md``).  Parsing
resolves every reference, checks every range, and rejects requirement
cycles; a parsed :class:`SafetyModel` is immutable and safe to share
across concurrent analysis passes.

Canonical serialization sorts every entity list by id, every reference
list lexicographically, and every object key alphabetically, omits
empty optional fields, and renders numbers in shortest round-trip form.
``parse -> serialize`` is therefore a fixpoint and the SHA-256 of the
canonical text serves as the model's content hash.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping

from .errors import (
    CYCLE_DETECTED,
    DUPLICATE_ID,
    RANGE_VIOLATION,
    SCHEMA,
    UNKNOWN_REFERENCE,
    InvalidModelError,
    ModelIssue,
    ModelSyntaxError,
)
from .levels import AsilLevel

SCHEMA_VERSION = "1"

FSR = "FSR"
TSR = "TSR"

SECTIONS = (
    "meta",
    "hazardous_events",
    "safety_goals",
    "requirements",
    "decomposition_groups",
    "hw_components",
    "mechanisms",
    "sw_components",
    "ecus",
    "channels",
    "tools",
    "evidence",
    "config",
)

# ---------------------------------------------------------------------------
# Configuration defaults
# ---------------------------------------------------------------------------

_L = AsilLevel

#: Allowed child-ASIL combinations per parent level.  Table-driven so a
#: project can override it wholesale in the model's config section.
DEFAULT_DECOMPOSITION_SCHEMES: dict[AsilLevel, tuple[tuple[AsilLevel, ...], ...]] = {
    _L.D: ((_L.D, _L.QM), (_L.C, _L.A), (_L.B, _L.B)),
    _L.C: ((_L.C, _L.QM), (_L.B, _L.A)),
    _L.B: ((_L.B, _L.QM), (_L.A, _L.A)),
    _L.A: ((_L.A, _L.QM),),
}

#: PMHF budgets in FIT per goal ASIL.  No default budget below ASIL B.
DEFAULT_PMHF_TARGETS: dict[AsilLevel, float] = {_L.D: 10.0, _L.C: 100.0, _L.B: 100.0}

DEFAULT_SPFM_TARGETS: dict[AsilLevel, float] = {_L.D: 0.99, _L.C: 0.97, _L.B: 0.90}
DEFAULT_LFM_TARGETS: dict[AsilLevel, float] = {_L.D: 0.90, _L.C: 0.80, _L.B: 0.60}

#: Proven-in-use incident-rate ceilings in FIT, compared strictly.
DEFAULT_PIU_THRESHOLDS: dict[AsilLevel, float] = {
    _L.D: 1.0,
    _L.C: 10.0,
    _L.B: 100.0,
    _L.A: 1000.0,
}

ESTIMATORS = ("point", "conservative")


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HazardousEvent:
    id: str
    description: str
    scenario: str
    exposure: int
    severity: int
    controllability: int
    declared_asil: AsilLevel | None = None


@dataclass(frozen=True)
class SafetyGoal:
    id: str
    text: str
    hazardous_event_ids: tuple[str, ...]
    safe_state: str | None = None


@dataclass(frozen=True)
class Requirement:
    id: str
    kind: str  # FSR or TSR
    parent_ids: tuple[str, ...] = ()
    decomposition_group_id: str | None = None
    allocated_to: tuple[str, ...] = ()
    declared_asil: AsilLevel | None = None


@dataclass(frozen=True)
class DecompositionGroup:
    """Redundant sibling requirements that jointly satisfy one parent."""

    id: str
    parent_requirement_id: str
    member_requirement_ids: tuple[str, ...]
    independence_evidence: str
    member_target_asils: Mapping[str, AsilLevel]


@dataclass(frozen=True)
class FaultEntry:
    safety_related_fit: float
    non_safety_related_fit: float = 0.0
    mechanism_id: str | None = None


@dataclass(frozen=True)
class SafetyMechanism:
    id: str
    dc: float
    latent_dc: float = 0.0  # absent in the file means 0: worst case for LFM


@dataclass(frozen=True)
class SeoocClaim:
    """Pre-qualified element whose safety manual states one subsumed rate."""

    subsumed_fit: float


@dataclass(frozen=True)
class HwComponent:
    id: str
    ecu_id: str | None = None
    fault_data: tuple[FaultEntry, ...] = ()
    seooc: SeoocClaim | None = None


@dataclass(frozen=True)
class Partition:
    id: str
    memory_protection: bool
    timing_watchdog: bool

    @property
    def interference_free(self) -> bool:
        return self.memory_protection and self.timing_watchdog


@dataclass(frozen=True)
class Ecu:
    id: str
    partitions: tuple[Partition, ...] = ()


@dataclass(frozen=True)
class SwComponent:
    id: str
    ecu_id: str
    partition_id: str | None = None
    external: bool = False
    developed_to_asil: AsilLevel | None = None


@dataclass(frozen=True)
class Channel:
    id: str
    from_swc: str
    to_swc: str
    e2e_protected: bool


@dataclass(frozen=True)
class Tool:
    id: str
    can_introduce_errors: bool
    qualified: bool
    used_for: tuple[str, ...] = ()


@dataclass(frozen=True)
class ProvenInUseEvidence:
    element_id: str
    incidents: int
    service_hours: float


@dataclass(frozen=True)
class ModelConfig:
    """Resolved analysis configuration (defaults overlaid with overrides).

    ``overrides`` keeps the user-supplied subtree in canonical JSON form
    so serialization round-trips exactly what the document said.
    """

    decomposition_schemes: Mapping[AsilLevel, tuple[tuple[AsilLevel, ...], ...]]
    pmhf_targets: Mapping[AsilLevel, float]
    spfm_targets: Mapping[AsilLevel, float]
    lfm_targets: Mapping[AsilLevel, float]
    piu_thresholds: Mapping[AsilLevel, float]
    piu_estimator: str = "point"
    overrides: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def default(cls) -> ModelConfig:
        return cls(
            decomposition_schemes=dict(DEFAULT_DECOMPOSITION_SCHEMES),
            pmhf_targets=dict(DEFAULT_PMHF_TARGETS),
            spfm_targets=dict(DEFAULT_SPFM_TARGETS),
            lfm_targets=dict(DEFAULT_LFM_TARGETS),
            piu_thresholds=dict(DEFAULT_PIU_THRESHOLDS),
        )


@dataclass(frozen=True)
class SafetyModel:
    """Immutable, fully resolved item model."""

    schema_version: str
    name: str | None
    description: str | None
    hazardous_events: tuple[HazardousEvent, ...]
    safety_goals: tuple[SafetyGoal, ...]
    requirements: tuple[Requirement, ...]
    decomposition_groups: tuple[DecompositionGroup, ...]
    hw_components: tuple[HwComponent, ...]
    mechanisms: tuple[SafetyMechanism, ...]
    sw_components: tuple[SwComponent, ...]
    ecus: tuple[Ecu, ...]
    channels: tuple[Channel, ...]
    tools: tuple[Tool, ...]
    evidence: tuple[ProvenInUseEvidence, ...]
    config: ModelConfig

    # -- identity ----------------------------------------------------------

    @cached_property
    def content_hash(self) -> str:
        """SHA-256 of the canonical serialization."""
        return hashlib.sha256(serialize_model(self).encode("utf-8")).hexdigest()

    @cached_property
    def by_id(self) -> Mapping[str, Any]:
        index: dict[str, Any] = {}
        for bucket in (
            self.hazardous_events,
            self.safety_goals,
            self.requirements,
            self.decomposition_groups,
            self.hw_components,
            self.mechanisms,
            self.sw_components,
            self.ecus,
            self.channels,
            self.tools,
        ):
            for entity in bucket:
                index[entity.id] = entity
        for ecu in self.ecus:
            for part in ecu.partitions:
                index[part.id] = part
        return index

    # -- convenience lookups ------------------------------------------------

    @cached_property
    def mechanisms_by_id(self) -> Mapping[str, SafetyMechanism]:
        return {m.id: m for m in self.mechanisms}

    @cached_property
    def requirements_by_id(self) -> Mapping[str, Requirement]:
        return {r.id: r for r in self.requirements}

    def requirements_of_kind(self, kind: str) -> tuple[Requirement, ...]:
        return tuple(r for r in self.requirements if r.kind == kind)

    @cached_property
    def groups_by_id(self) -> Mapping[str, DecompositionGroup]:
        return {g.id: g for g in self.decomposition_groups}

    @cached_property
    def goals_for_requirement(self) -> Mapping[str, frozenset[str]]:
        """Safety goals each requirement traces to, through its parent chain."""
        goal_ids = {g.id for g in self.safety_goals}
        resolved: dict[str, frozenset[str]] = {}

        def climb(req_id: str) -> frozenset[str]:
            if req_id in resolved:
                return resolved[req_id]
            req = self.requirements_by_id[req_id]
            goals: set[str] = set()
            for parent in req.parent_ids:
                if parent in goal_ids:
                    goals.add(parent)
                elif parent in self.requirements_by_id:
                    goals |= climb(parent)
            resolved[req_id] = frozenset(goals)
            return resolved[req_id]

        for req in self.requirements:
            climb(req.id)
        return resolved

    def tsrs_for_goal(self, goal_id: str) -> tuple[Requirement, ...]:
        return tuple(
            r
            for r in self.requirements
            if r.kind == TSR and goal_id in self.goals_for_requirement[r.id]
        )

    def hw_components_for_goal(self, goal_id: str) -> tuple[HwComponent, ...]:
        hw_ids = {c.id for c in self.hw_components}
        allocated: set[str] = set()
        for tsr in self.tsrs_for_goal(goal_id):
            allocated.update(e for e in tsr.allocated_to if e in hw_ids)
        return tuple(c for c in self.hw_components if c.id in allocated)

    def evidence_for(self, element_id: str) -> tuple[ProvenInUseEvidence, ...]:
        return tuple(e for e in self.evidence if e.element_id == element_id)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Collector:
    """Accumulates validation issues with document locations."""

    def __init__(self) -> None:
        self.issues: list[ModelIssue] = []

    def add(self, code: str, where: str, message: str, subject_id: str = "") -> None:
        self.issues.append(ModelIssue(code, subject_id, where, message))


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_unknown_keys(obj: dict, allowed: tuple[str, ...], where: str, c: _Collector) -> None:
    for key in obj:
        if key not in allowed:
            c.add(SCHEMA, f"{where}.{key}", f"unknown key {key!r}")


def _get_str(
    obj: dict,
    key: str,
    where: str,
    c: _Collector,
    *,
    required: bool = True,
    default: str | None = None,
) -> str | None:
    if key not in obj:
        if required:
            c.add(SCHEMA, where, f"missing required key {key!r}")
        return default
    value = obj[key]
    if not isinstance(value, str):
        c.add(SCHEMA, f"{where}.{key}", f"expected a string, got {type(value).__name__}")
        return default
    return value


def _get_int(
    obj: dict,
    key: str,
    where: str,
    c: _Collector,
    *,
    lo: int | None = None,
    hi: int | None = None,
    required: bool = True,
    default: int | None = None,
    subject_id: str = "",
) -> int | None:
    if key not in obj:
        if required:
            c.add(SCHEMA, where, f"missing required key {key!r}")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        c.add(SCHEMA, f"{where}.{key}", f"expected an integer, got {type(value).__name__}")
        return default
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        span = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        c.add(
            RANGE_VIOLATION,
            f"{where}.{key}",
            f"{key} = {value} is outside {span}",
            subject_id=subject_id,
        )
        return default
    return value


def _get_num(
    obj: dict,
    key: str,
    where: str,
    c: _Collector,
    *,
    lo: float | None = None,
    lo_exclusive: bool = False,
    hi: float | None = None,
    required: bool = True,
    default: float | None = None,
    subject_id: str = "",
) -> float | None:
    if key not in obj:
        if required:
            c.add(SCHEMA, where, f"missing required key {key!r}")
        return default
    value = obj[key]
    if not _is_number(value):
        c.add(SCHEMA, f"{where}.{key}", f"expected a number, got {type(value).__name__}")
        return default
    value = float(value)
    if not math.isfinite(value):
        c.add(RANGE_VIOLATION, f"{where}.{key}", f"{key} must be finite", subject_id=subject_id)
        return default
    bad_lo = lo is not None and (value <= lo if lo_exclusive else value < lo)
    if bad_lo or (hi is not None and value > hi):
        if hi is not None:
            span = f"[{lo}, {hi}]"
        else:
            span = f"> {lo}" if lo_exclusive else f">= {lo}"
        c.add(
            RANGE_VIOLATION,
            f"{where}.{key}",
            f"{key} = {value!r} is outside {span}",
            subject_id=subject_id,
        )
        return default
    return value


def _get_bool(
    obj: dict,
    key: str,
    where: str,
    c: _Collector,
    *,
    required: bool = True,
    default: bool | None = None,
) -> bool | None:
    if key not in obj:
        if required:
            c.add(SCHEMA, where, f"missing required key {key!r}")
        return default
    value = obj[key]
    if not isinstance(value, bool):
        c.add(SCHEMA, f"{where}.{key}", f"expected a boolean, got {type(value).__name__}")
        return default
    return value


def _get_str_list(
    obj: dict,
    key: str,
    where: str,
    c: _Collector,
    *,
    required: bool = False,
    nonempty: bool = False,
    subject_id: str = "",
) -> tuple[str, ...]:
    if key not in obj:
        if required:
            c.add(SCHEMA, where, f"missing required key {key!r}", subject_id=subject_id)
        return ()
    value = obj[key]
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        c.add(SCHEMA, f"{where}.{key}", f"expected a list of strings")
        return ()
    if nonempty and not value:
        c.add(SCHEMA, f"{where}.{key}", f"{key} must not be empty", subject_id=subject_id)
    return tuple(sorted(value))


def _get_level(
    obj: dict, key: str, where: str, c: _Collector, *, required: bool = False
) -> AsilLevel | None:
    if key not in obj:
        if required:
            c.add(SCHEMA, where, f"missing required key {key!r}")
        return None
    value = obj[key]
    if not isinstance(value, str):
        c.add(SCHEMA, f"{where}.{key}", f"expected an ASIL name, got {type(value).__name__}")
        return None
    try:
        return AsilLevel.parse(value)
    except ValueError as exc:
        c.add(SCHEMA, f"{where}.{key}", str(exc))
        return None


def _get_id(obj: dict, where: str, c: _Collector) -> str | None:
    ident = _get_str(obj, "id", where, c)
    if ident is not None and not ident:
        c.add(SCHEMA, f"{where}.id", "id must not be empty")
        return None
    return ident


def _entity_list(doc: dict, section: str, c: _Collector) -> list[tuple[dict, str]]:
    value = doc.get(section, [])
    if not isinstance(value, list):
        c.add(SCHEMA, section, "expected a list")
        return []
    out = []
    for idx, item in enumerate(value):
        where = f"{section}[{idx}]"
        if not isinstance(item, dict):
            c.add(SCHEMA, where, "expected an object")
            continue
        out.append((item, where))
    return out


# -- entity parsers ---------------------------------------------------------


def _parse_hazardous_event(obj: dict, where: str, c: _Collector) -> HazardousEvent | None:
    _check_unknown_keys(
        obj,
        ("id", "description", "scenario", "exposure", "severity", "controllability", "declared_asil"),
        where,
        c,
    )
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    e = _get_int(obj, "exposure", where, c, lo=0, hi=4, subject_id=ident)
    s = _get_int(obj, "severity", where, c, lo=0, hi=3, subject_id=ident)
    cc = _get_int(obj, "controllability", where, c, lo=0, hi=3, subject_id=ident)
    description = _get_str(obj, "description", where, c)
    scenario = _get_str(obj, "scenario", where, c)
    if None in (e, s, cc, description, scenario):
        return None
    return HazardousEvent(
        id=ident,
        description=description,
        scenario=scenario,
        exposure=e,
        severity=s,
        controllability=cc,
        declared_asil=_get_level(obj, "declared_asil", where, c),
    )


def _parse_safety_goal(obj: dict, where: str, c: _Collector) -> SafetyGoal | None:
    _check_unknown_keys(obj, ("id", "text", "hazardous_event_ids", "safe_state"), where, c)
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    text = _get_str(obj, "text", where, c)
    hes = _get_str_list(
        obj, "hazardous_event_ids", where, c, required=True, nonempty=True, subject_id=ident
    )
    if text is None or not hes:
        return None
    return SafetyGoal(
        id=ident,
        text=text,
        hazardous_event_ids=hes,
        safe_state=_get_str(obj, "safe_state", where, c, required=False),
    )


def _parse_requirement(obj: dict, where: str, c: _Collector) -> Requirement | None:
    _check_unknown_keys(
        obj,
        ("id", "kind", "parent_ids", "decomposition_group_id", "allocated_to", "declared_asil"),
        where,
        c,
    )
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    kind = _get_str(obj, "kind", where, c)
    if kind not in (FSR, TSR):
        c.add(SCHEMA, f"{where}.kind", f"kind must be 'FSR' or 'TSR', got {kind!r}", subject_id=ident)
        return None
    allocated = _get_str_list(
        obj, "allocated_to", where, c, required=(kind == TSR), nonempty=(kind == TSR), subject_id=ident
    )
    return Requirement(
        id=ident,
        kind=kind,
        parent_ids=_get_str_list(obj, "parent_ids", where, c),
        decomposition_group_id=_get_str(obj, "decomposition_group_id", where, c, required=False),
        allocated_to=allocated,
        declared_asil=_get_level(obj, "declared_asil", where, c),
    )


def _parse_group(obj: dict, where: str, c: _Collector) -> DecompositionGroup | None:
    _check_unknown_keys(
        obj,
        (
            "id",
            "parent_requirement_id",
            "member_requirement_ids",
            "independence_evidence",
            "member_target_asils",
        ),
        where,
        c,
    )
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    parent = _get_str(obj, "parent_requirement_id", where, c)
    members = _get_str_list(
        obj, "member_requirement_ids", where, c, required=True, nonempty=True, subject_id=ident
    )
    if members and len(members) < 2:
        c.add(SCHEMA, f"{where}.member_requirement_ids", "a decomposition group needs at least 2 members", subject_id=ident)
    if len(set(members)) != len(members):
        c.add(SCHEMA, f"{where}.member_requirement_ids", "duplicate member ids", subject_id=ident)
        return None
    # Empty evidence is tolerated here; the decomposition check invalidates
    # the group at analysis time instead of rejecting the document.
    evidence = _get_str(obj, "independence_evidence", where, c)
    raw_targets = obj.get("member_target_asils")
    targets: dict[str, AsilLevel] = {}
    if not isinstance(raw_targets, dict):
        c.add(SCHEMA, f"{where}.member_target_asils", "expected an object of requirement-id to ASIL")
        return None
    for req_id, level_name in sorted(raw_targets.items()):
        if not isinstance(level_name, str):
            c.add(SCHEMA, f"{where}.member_target_asils.{req_id}", "expected an ASIL name")
            continue
        try:
            targets[req_id] = AsilLevel.parse(level_name)
        except ValueError as exc:
            c.add(SCHEMA, f"{where}.member_target_asils.{req_id}", str(exc))
    if parent is None or evidence is None or len(members) < 2:
        return None
    if set(targets) != set(members):
        c.add(
            SCHEMA,
            f"{where}.member_target_asils",
            "member_target_asils must name exactly the member requirements",
            subject_id=ident,
        )
        return None
    return DecompositionGroup(
        id=ident,
        parent_requirement_id=parent,
        member_requirement_ids=members,
        independence_evidence=evidence,
        member_target_asils=targets,
    )


def _parse_fault_entry(obj: dict, where: str, c: _Collector, owner: str) -> FaultEntry | None:
    _check_unknown_keys(
        obj, ("safety_related_fit", "non_safety_related_fit", "mechanism_id"), where, c
    )
    sr = _get_num(obj, "safety_related_fit", where, c, lo=0.0, subject_id=owner)
    nsr = _get_num(
        obj, "non_safety_related_fit", where, c, lo=0.0, required=False, default=0.0, subject_id=owner
    )
    if sr is None or nsr is None:
        return None
    return FaultEntry(
        safety_related_fit=sr,
        non_safety_related_fit=nsr,
        mechanism_id=_get_str(obj, "mechanism_id", where, c, required=False),
    )


def _parse_hw_component(obj: dict, where: str, c: _Collector) -> HwComponent | None:
    _check_unknown_keys(obj, ("id", "ecu_id", "fault_data", "seooc"), where, c)
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    entries: list[FaultEntry] = []
    raw = obj.get("fault_data", [])
    if not isinstance(raw, list):
        c.add(SCHEMA, f"{where}.fault_data", "expected a list")
    else:
        for idx, item in enumerate(raw):
            ew = f"{where}.fault_data[{idx}]"
            if not isinstance(item, dict):
                c.add(SCHEMA, ew, "expected an object")
                continue
            entry = _parse_fault_entry(item, ew, c, ident)
            if entry is not None:
                entries.append(entry)
    seooc = None
    if "seooc" in obj:
        raw_seooc = obj["seooc"]
        if not isinstance(raw_seooc, dict):
            c.add(SCHEMA, f"{where}.seooc", "expected an object")
        else:
            _check_unknown_keys(raw_seooc, ("subsumed_fit",), f"{where}.seooc", c)
            fit = _get_num(raw_seooc, "subsumed_fit", f"{where}.seooc", c, lo=0.0, subject_id=ident)
            if fit is not None:
                seooc = SeoocClaim(subsumed_fit=fit)
    entries.sort(key=lambda e: (e.mechanism_id or "", e.safety_related_fit, e.non_safety_related_fit))
    return HwComponent(
        id=ident,
        ecu_id=_get_str(obj, "ecu_id", where, c, required=False),
        fault_data=tuple(entries),
        seooc=seooc,
    )


def _parse_mechanism(obj: dict, where: str, c: _Collector) -> SafetyMechanism | None:
    _check_unknown_keys(obj, ("id", "dc", "latent_dc"), where, c)
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    dc = _get_num(obj, "dc", where, c, lo=0.0, hi=1.0, subject_id=ident)
    latent = _get_num(
        obj, "latent_dc", where, c, lo=0.0, hi=1.0, required=False, default=0.0, subject_id=ident
    )
    if dc is None or latent is None:
        return None
    return SafetyMechanism(id=ident, dc=dc, latent_dc=latent)


def _parse_sw_component(obj: dict, where: str, c: _Collector) -> SwComponent | None:
    _check_unknown_keys(
        obj, ("id", "ecu_id", "partition_id", "external", "developed_to_asil"), where, c
    )
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    ecu_id = _get_str(obj, "ecu_id", where, c)
    if ecu_id is None:
        return None
    return SwComponent(
        id=ident,
        ecu_id=ecu_id,
        partition_id=_get_str(obj, "partition_id", where, c, required=False),
        external=_get_bool(obj, "external", where, c, required=False, default=False),
        developed_to_asil=_get_level(obj, "developed_to_asil", where, c),
    )


def _parse_ecu(obj: dict, where: str, c: _Collector) -> Ecu | None:
    _check_unknown_keys(obj, ("id", "partitions"), where, c)
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    partitions: list[Partition] = []
    raw = obj.get("partitions", [])
    if not isinstance(raw, list):
        c.add(SCHEMA, f"{where}.partitions", "expected a list")
    else:
        for idx, item in enumerate(raw):
            pw = f"{where}.partitions[{idx}]"
            if not isinstance(item, dict):
                c.add(SCHEMA, pw, "expected an object")
                continue
            _check_unknown_keys(item, ("id", "memory_protection", "timing_watchdog"), pw, c)
            pid = _get_id(item, pw, c)
            mp = _get_bool(item, "memory_protection", pw, c)
            wd = _get_bool(item, "timing_watchdog", pw, c)
            if pid is None or mp is None or wd is None:
                continue
            partitions.append(Partition(id=pid, memory_protection=mp, timing_watchdog=wd))
    partitions.sort(key=lambda p: p.id)
    return Ecu(id=ident, partitions=tuple(partitions))


def _parse_channel(obj: dict, where: str, c: _Collector) -> Channel | None:
    _check_unknown_keys(obj, ("id", "from_swc", "to_swc", "e2e_protected"), where, c)
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    src = _get_str(obj, "from_swc", where, c)
    dst = _get_str(obj, "to_swc", where, c)
    e2e = _get_bool(obj, "e2e_protected", where, c)
    if src is None or dst is None or e2e is None:
        return None
    return Channel(id=ident, from_swc=src, to_swc=dst, e2e_protected=e2e)


def _parse_tool(obj: dict, where: str, c: _Collector) -> Tool | None:
    _check_unknown_keys(obj, ("id", "can_introduce_errors", "qualified", "used_for"), where, c)
    ident = _get_id(obj, where, c)
    if ident is None:
        return None
    can_err = _get_bool(obj, "can_introduce_errors", where, c)
    qualified = _get_bool(obj, "qualified", where, c)
    if can_err is None or qualified is None:
        return None
    return Tool(
        id=ident,
        can_introduce_errors=can_err,
        qualified=qualified,
        used_for=_get_str_list(obj, "used_for", where, c),
    )


def _parse_evidence(obj: dict, where: str, c: _Collector) -> ProvenInUseEvidence | None:
    _check_unknown_keys(obj, ("element_id", "incidents", "service_hours"), where, c)
    element = _get_str(obj, "element_id", where, c)
    incidents = _get_int(obj, "incidents", where, c, lo=0, subject_id=element or "")
    hours = _get_num(
        obj, "service_hours", where, c, lo=0.0, lo_exclusive=True, subject_id=element or ""
    )
    if element is None or incidents is None or hours is None:
        return None
    return ProvenInUseEvidence(element_id=element, incidents=incidents, service_hours=hours)


# -- config parser ----------------------------------------------------------


def _parse_level_map(
    raw: Any,
    where: str,
    c: _Collector,
    *,
    lo: float = 0.0,
    hi: float | None = None,
    lo_exclusive: bool = False,
) -> dict[AsilLevel, float] | None:
    if not isinstance(raw, dict):
        c.add(SCHEMA, where, "expected an object of ASIL to number")
        return None
    out: dict[AsilLevel, float] = {}
    for name in sorted(raw):
        try:
            level = AsilLevel.parse(name)
        except ValueError as exc:
            c.add(SCHEMA, f"{where}.{name}", str(exc))
            continue
        value = raw[name]
        if not _is_number(value) or not math.isfinite(float(value)):
            c.add(SCHEMA, f"{where}.{name}", "expected a finite number")
            continue
        value = float(value)
        bad_lo = value <= lo if lo_exclusive else value < lo
        if bad_lo or (hi is not None and value > hi):
            c.add(RANGE_VIOLATION, f"{where}.{name}", f"value {value!r} out of range")
            continue
        out[level] = value
    return out


def _parse_schemes(
    raw: Any, where: str, c: _Collector
) -> dict[AsilLevel, tuple[tuple[AsilLevel, ...], ...]] | None:
    if not isinstance(raw, dict):
        c.add(SCHEMA, where, "expected an object of parent ASIL to list of child multisets")
        return None
    out: dict[AsilLevel, tuple[tuple[AsilLevel, ...], ...]] = {}
    for name in sorted(raw):
        try:
            parent = AsilLevel.parse(name)
        except ValueError as exc:
            c.add(SCHEMA, f"{where}.{name}", str(exc))
            continue
        entry = raw[name]
        if not isinstance(entry, list):
            c.add(SCHEMA, f"{where}.{name}", "expected a list of child-ASIL multisets")
            continue
        multisets: list[tuple[AsilLevel, ...]] = []
        for idx, multiset in enumerate(entry):
            mw = f"{where}.{name}[{idx}]"
            if not isinstance(multiset, list) or any(not isinstance(v, str) for v in multiset):
                c.add(SCHEMA, mw, "expected a list of ASIL names")
                continue
            if len(multiset) < 2:
                c.add(SCHEMA, mw, "a decomposition multiset needs at least 2 children")
                continue
            try:
                levels = tuple(sorted((AsilLevel.parse(v) for v in multiset), reverse=True))
            except ValueError as exc:
                c.add(SCHEMA, mw, str(exc))
                continue
            if any(level > parent for level in levels):
                c.add(RANGE_VIOLATION, mw, f"child ASIL above parent {parent}")
                continue
            multisets.append(levels)
        out[parent] = tuple(sorted(set(multisets), reverse=True))
    return out


def _parse_config(raw: Any, c: _Collector) -> ModelConfig:
    base = ModelConfig.default()
    if raw is None:
        return base
    if not isinstance(raw, dict):
        c.add(SCHEMA, "config", "expected an object")
        return base
    _check_unknown_keys(
        raw,
        (
            "decomposition_schemes",
            "pmhf_targets",
            "spfm_targets",
            "lfm_targets",
            "piu_thresholds",
            "piu_estimator",
        ),
        "config",
        c,
    )
    schemes = dict(base.decomposition_schemes)
    if "decomposition_schemes" in raw:
        parsed = _parse_schemes(raw["decomposition_schemes"], "config.decomposition_schemes", c)
        if parsed is not None:
            schemes = parsed  # a scheme override replaces the whole table
    pmhf = dict(base.pmhf_targets)
    if "pmhf_targets" in raw:
        parsed = _parse_level_map(raw["pmhf_targets"], "config.pmhf_targets", c)
        if parsed is not None:
            pmhf = parsed
    spfm = dict(base.spfm_targets)
    if "spfm_targets" in raw:
        parsed = _parse_level_map(raw["spfm_targets"], "config.spfm_targets", c, hi=1.0)
        if parsed is not None:
            spfm = parsed
    lfm = dict(base.lfm_targets)
    if "lfm_targets" in raw:
        parsed = _parse_level_map(raw["lfm_targets"], "config.lfm_targets", c, hi=1.0)
        if parsed is not None:
            lfm = parsed
    piu = dict(base.piu_thresholds)
    if "piu_thresholds" in raw:
        parsed = _parse_level_map(
            raw["piu_thresholds"], "config.piu_thresholds", c, lo_exclusive=True
        )
        if parsed is not None:
            piu = parsed
    estimator = base.piu_estimator
    if "piu_estimator" in raw:
        value = raw["piu_estimator"]
        if value not in ESTIMATORS:
            c.add(SCHEMA, "config.piu_estimator", f"expected one of {ESTIMATORS}, got {value!r}")
        else:
            estimator = value
    return ModelConfig(
        decomposition_schemes=schemes,
        pmhf_targets=pmhf,
        spfm_targets=spfm,
        lfm_targets=lfm,
        piu_thresholds=piu,
        piu_estimator=estimator,
        overrides=_canonical_config_overrides(raw),
    )


def _canonical_config_overrides(raw: dict) -> dict:
    """Re-shape the user's config subtree into canonical JSON form."""
    out: dict[str, Any] = {}
    if isinstance(raw.get("decomposition_schemes"), dict):
        schemes: dict[str, list[list[str]]] = {}
        for name, entry in raw["decomposition_schemes"].items():
            if not isinstance(entry, list):
                continue
            canon: list[tuple[AsilLevel, ...]] = []
            for multiset in entry:
                try:
                    canon.append(tuple(sorted((AsilLevel.parse(v) for v in multiset), reverse=True)))
                except (ValueError, TypeError):
                    continue
            schemes[name] = [[str(v) for v in m] for m in sorted(set(canon), reverse=True)]
        out["decomposition_schemes"] = schemes
    for key in ("pmhf_targets", "spfm_targets", "lfm_targets", "piu_thresholds"):
        if isinstance(raw.get(key), dict):
            out[key] = {
                name: float(value)
                for name, value in raw[key].items()
                if _is_number(value) and math.isfinite(float(value))
            }
    if isinstance(raw.get("piu_estimator"), str):
        out["piu_estimator"] = raw["piu_estimator"]
    return out


# -- cross-entity validation --------------------------------------------------


def _register_ids(doc: dict, c: _Collector) -> dict[str, str]:
    """Collect every declared id with its entity kind; report collisions."""
    known: dict[str, str] = {}

    def register(ident: Any, kind: str, where: str) -> None:
        if not isinstance(ident, str) or not ident:
            return
        if ident in known:
            c.add(
                DUPLICATE_ID,
                where,
                f"id {ident!r} is already defined as a {known[ident]}",
                subject_id=ident,
            )
        else:
            known[ident] = kind

    sections = (
        ("hazardous_events", "hazardous event"),
        ("safety_goals", "safety goal"),
        ("requirements", "requirement"),
        ("decomposition_groups", "decomposition group"),
        ("hw_components", "hw component"),
        ("mechanisms", "safety mechanism"),
        ("sw_components", "sw component"),
        ("ecus", "ecu"),
        ("channels", "channel"),
        ("tools", "tool"),
    )
    for section, kind in sections:
        raw = doc.get(section, [])
        if not isinstance(raw, list):
            continue
        for idx, item in enumerate(raw):
            if not isinstance(item, dict):
                continue
            register(item.get("id"), kind, f"{section}[{idx}]")
            if section == "ecus" and isinstance(item.get("partitions"), list):
                for pidx, part in enumerate(item["partitions"]):
                    if isinstance(part, dict):
                        register(part.get("id"), "partition", f"{section}[{idx}].partitions[{pidx}]")
    return known


def _check_reference(
    target: str,
    expected_kinds: tuple[str, ...] | None,
    known: dict[str, str],
    where: str,
    c: _Collector,
    referrer: str,
) -> bool:
    kind = known.get(target)
    if kind is None:
        c.add(
            UNKNOWN_REFERENCE,
            where,
            f"{referrer} references unknown id {target!r}",
            subject_id=target,
        )
        return False
    if expected_kinds is not None and kind not in expected_kinds:
        c.add(
            UNKNOWN_REFERENCE,
            where,
            f"{referrer} must reference a {' or '.join(expected_kinds)}, "
            f"but {target!r} is a {kind}",
            subject_id=target,
        )
        return False
    return True


def _check_requirement_cycles(requirements: list[Requirement], c: _Collector) -> None:
    """Reject cycles in the requirement parent relation.

    Parent edges between requirements are already kind violations, but the
    acyclicity of the refinement chain is checked independently so a cycle
    is always reported as such.
    """
    req_ids = {r.id for r in requirements}
    edges = {r.id: tuple(p for p in r.parent_ids if p in req_ids) for r in requirements}
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {rid: WHITE for rid in edges}
    reported: set[frozenset[str]] = set()

    def visit(start: str) -> None:
        stack: list[tuple[str, int]] = [(start, 0)]
        path: list[str] = []
        while stack:
            node, idx = stack.pop()
            if idx == 0:
                color[node] = GRAY
                path.append(node)
            children = edges[node]
            if idx < len(children):
                stack.append((node, idx + 1))
                child = children[idx]
                if color[child] == GRAY:
                    cycle = path[path.index(child):] + [child]
                    key = frozenset(cycle)
                    if key not in reported:
                        reported.add(key)
                        c.add(
                            CYCLE_DETECTED,
                            "requirements",
                            "requirement parents form a cycle: " + " -> ".join(cycle),
                            subject_id=min(key),
                        )
                elif color[child] == WHITE:
                    stack.append((child, 0))
            else:
                color[node] = BLACK
                path.pop()

    for rid in sorted(edges):
        if color[rid] == WHITE:
            visit(rid)


def parse_model(text: str) -> SafetyModel:
    """Parse and validate a model document.

    Raises :class:`ModelSyntaxError` when the text is not a JSON object,
    :class:`InvalidModelError` (carrying every issue found) when the
    document fails validation, and returns a fully resolved model
    otherwise.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelSyntaxError("document root must be an object")

    c = _Collector()
    for key in doc:
        if key not in SECTIONS:
            c.add(SCHEMA, key, f"unknown top-level section {key!r}")

    meta = doc.get("meta")
    schema_version = SCHEMA_VERSION
    name = description = None
    if not isinstance(meta, dict):
        c.add(SCHEMA, "meta", "missing required section 'meta'")
    else:
        _check_unknown_keys(meta, ("schema_version", "name", "description"), "meta", c)
        version = _get_str(meta, "schema_version", "meta", c)
        if version is not None and version != SCHEMA_VERSION:
            c.add(SCHEMA, "meta.schema_version", f"unsupported schema version {version!r}")
        schema_version = version or SCHEMA_VERSION
        name = _get_str(meta, "name", "meta", c, required=False)
        description = _get_str(meta, "description", "meta", c, required=False)

    hazardous_events = [
        e for obj, w in _entity_list(doc, "hazardous_events", c)
        if (e := _parse_hazardous_event(obj, w, c)) is not None
    ]
    safety_goals = [
        e for obj, w in _entity_list(doc, "safety_goals", c)
        if (e := _parse_safety_goal(obj, w, c)) is not None
    ]
    requirements = [
        e for obj, w in _entity_list(doc, "requirements", c)
        if (e := _parse_requirement(obj, w, c)) is not None
    ]
    groups = [
        e for obj, w in _entity_list(doc, "decomposition_groups", c)
        if (e := _parse_group(obj, w, c)) is not None
    ]
    hw_components = [
        e for obj, w in _entity_list(doc, "hw_components", c)
        if (e := _parse_hw_component(obj, w, c)) is not None
    ]
    mechanisms = [
        e for obj, w in _entity_list(doc, "mechanisms", c)
        if (e := _parse_mechanism(obj, w, c)) is not None
    ]
    sw_components = [
        e for obj, w in _entity_list(doc, "sw_components", c)
        if (e := _parse_sw_component(obj, w, c)) is not None
    ]
    ecus = [
        e for obj, w in _entity_list(doc, "ecus", c)
        if (e := _parse_ecu(obj, w, c)) is not None
    ]
    channels = [
        e for obj, w in _entity_list(doc, "channels", c)
        if (e := _parse_channel(obj, w, c)) is not None
    ]
    tools = [
        e for obj, w in _entity_list(doc, "tools", c)
        if (e := _parse_tool(obj, w, c)) is not None
    ]
    evidence = [
        e for obj, w in _entity_list(doc, "evidence", c)
        if (e := _parse_evidence(obj, w, c)) is not None
    ]

    known = _register_ids(doc, c)
    config = _parse_config(doc.get("config"), c)

    # Reference resolution and kind checks.
    goal_ids = {g.id for g in safety_goals}
    req_by_id = {r.id: r for r in requirements}
    group_by_id = {g.id: g for g in groups}
    partition_owner: dict[str, str] = {}
    for ecu in ecus:
        for part in ecu.partitions:
            partition_owner[part.id] = ecu.id

    for goal in safety_goals:
        for he_id in goal.hazardous_event_ids:
            _check_reference(
                he_id, ("hazardous event",), known, f"safety_goals({goal.id})", c,
                f"safety goal {goal.id!r}",
            )

    for req in requirements:
        where = f"requirements({req.id})"
        expected = ("safety goal",) if req.kind == FSR else ("requirement",)
        for parent in req.parent_ids:
            ok = _check_reference(
                parent, None, known, where, c, f"{req.kind} {req.id!r} parent"
            )
            if not ok:
                continue
            if req.kind == FSR and parent not in goal_ids:
                c.add(
                    UNKNOWN_REFERENCE,
                    where,
                    f"FSR {req.id!r} parents must be safety goals, but {parent!r} is a {known[parent]}",
                    subject_id=parent,
                )
            elif req.kind == TSR:
                parent_req = req_by_id.get(parent)
                if parent_req is None or parent_req.kind != FSR:
                    c.add(
                        UNKNOWN_REFERENCE,
                        where,
                        f"TSR {req.id!r} parents must be FSRs, but {parent!r} is not",
                        subject_id=parent,
                    )
        for target in req.allocated_to:
            _check_reference(
                target, ("hw component", "sw component"), known, where, c,
                f"requirement {req.id!r} allocation",
            )
        if req.decomposition_group_id is not None:
            group = group_by_id.get(req.decomposition_group_id)
            if group is None:
                c.add(
                    UNKNOWN_REFERENCE,
                    where,
                    f"requirement {req.id!r} names unknown decomposition group "
                    f"{req.decomposition_group_id!r}",
                    subject_id=req.decomposition_group_id,
                )
            elif req.id not in group.member_requirement_ids:
                c.add(
                    SCHEMA,
                    where,
                    f"requirement {req.id!r} names group {group.id!r} but the group "
                    "does not list it as a member",
                    subject_id=req.id,
                )

    for group in groups:
        where = f"decomposition_groups({group.id})"
        kinds = set()
        for member_id in group.member_requirement_ids:
            member = req_by_id.get(member_id)
            if member is None:
                _check_reference(
                    member_id, ("requirement",), known, where, c,
                    f"decomposition group {group.id!r} member",
                )
                continue
            kinds.add(member.kind)
            if member.decomposition_group_id != group.id:
                c.add(
                    SCHEMA,
                    where,
                    f"member {member_id!r} does not name group {group.id!r} as its "
                    "decomposition_group_id",
                    subject_id=member_id,
                )
            if member.parent_ids != (group.parent_requirement_id,):
                c.add(
                    SCHEMA,
                    where,
                    f"member {member_id!r} must have exactly the group parent "
                    f"{group.parent_requirement_id!r} as its parent",
                    subject_id=member_id,
                )
        if len(kinds) > 1:
            c.add(SCHEMA, where, "group members must all be the same kind", subject_id=group.id)
        parent_kind = known.get(group.parent_requirement_id)
        if parent_kind is None:
            c.add(
                UNKNOWN_REFERENCE,
                where,
                f"group {group.id!r} references unknown parent "
                f"{group.parent_requirement_id!r}",
                subject_id=group.parent_requirement_id,
            )
        elif kinds == {FSR} and parent_kind != "safety goal":
            c.add(
                UNKNOWN_REFERENCE,
                where,
                f"an FSR group's parent must be a safety goal, but "
                f"{group.parent_requirement_id!r} is a {parent_kind}",
                subject_id=group.parent_requirement_id,
            )
        elif kinds == {TSR}:
            parent_req = req_by_id.get(group.parent_requirement_id)
            if parent_req is None or parent_req.kind != FSR:
                c.add(
                    UNKNOWN_REFERENCE,
                    where,
                    f"a TSR group's parent must be an FSR, but "
                    f"{group.parent_requirement_id!r} is not",
                    subject_id=group.parent_requirement_id,
                )

    for comp in hw_components:
        where = f"hw_components({comp.id})"
        if comp.ecu_id is not None:
            _check_reference(comp.ecu_id, ("ecu",), known, where, c, f"hw component {comp.id!r}")
        for entry in comp.fault_data:
            if entry.mechanism_id is not None:
                _check_reference(
                    entry.mechanism_id, ("safety mechanism",), known, where, c,
                    f"fault entry of {comp.id!r}",
                )

    for swc in sw_components:
        where = f"sw_components({swc.id})"
        _check_reference(swc.ecu_id, ("ecu",), known, where, c, f"sw component {swc.id!r}")
        if swc.partition_id is not None:
            ok = _check_reference(
                swc.partition_id, ("partition",), known, where, c, f"sw component {swc.id!r}"
            )
            if ok and partition_owner.get(swc.partition_id) != swc.ecu_id:
                c.add(
                    UNKNOWN_REFERENCE,
                    where,
                    f"partition {swc.partition_id!r} does not belong to ECU {swc.ecu_id!r}",
                    subject_id=swc.partition_id,
                )

    for channel in channels:
        where = f"channels({channel.id})"
        for endpoint in (channel.from_swc, channel.to_swc):
            _check_reference(
                endpoint, ("sw component",), known, where, c, f"channel {channel.id!r} endpoint"
            )

    for tool in tools:
        for target in tool.used_for:
            _check_reference(
                target, None, known, f"tools({tool.id})", c, f"tool {tool.id!r} used_for"
            )

    for idx, item in enumerate(evidence):
        _check_reference(
            item.element_id, None, known, f"evidence[{idx}]", c, "proven-in-use evidence"
        )

    _check_requirement_cycles(requirements, c)

    if c.issues:
        raise InvalidModelError(sorted(c.issues, key=lambda i: (i.where, i.code, i.message)))

    return SafetyModel(
        schema_version=schema_version,
        name=name,
        description=description,
        hazardous_events=tuple(sorted(hazardous_events, key=lambda e: e.id)),
        safety_goals=tuple(sorted(safety_goals, key=lambda e: e.id)),
        requirements=tuple(sorted(requirements, key=lambda e: e.id)),
        decomposition_groups=tuple(sorted(groups, key=lambda e: e.id)),
        hw_components=tuple(sorted(hw_components, key=lambda e: e.id)),
        mechanisms=tuple(sorted(mechanisms, key=lambda e: e.id)),
        sw_components=tuple(sorted(sw_components, key=lambda e: e.id)),
        ecus=tuple(sorted(ecus, key=lambda e: e.id)),
        channels=tuple(sorted(channels, key=lambda e: e.id)),
        tools=tuple(sorted(tools, key=lambda e: e.id)),
        evidence=tuple(
            sorted(evidence, key=lambda e: (e.element_id, e.service_hours, e.incidents))
        ),
        config=config,
    )


def load_model(path: str) -> SafetyModel:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------


def _put(obj: dict, key: str, value: Any) -> None:
    """Set a key unless the value is an omitted optional (None or empty)."""
    if value is None:
        return
    if isinstance(value, (list, dict, str)) and not value:
        return
    obj[key] = value


def _he_dict(e: HazardousEvent) -> dict:
    out = {
        "id": e.id,
        "description": e.description,
        "scenario": e.scenario,
        "exposure": e.exposure,
        "severity": e.severity,
        "controllability": e.controllability,
    }
    _put(out, "declared_asil", str(e.declared_asil) if e.declared_asil is not None else None)
    return out


def _sg_dict(g: SafetyGoal) -> dict:
    out = {"id": g.id, "text": g.text, "hazardous_event_ids": list(g.hazardous_event_ids)}
    _put(out, "safe_state", g.safe_state)
    return out


def _req_dict(r: Requirement) -> dict:
    out = {"id": r.id, "kind": r.kind}
    _put(out, "parent_ids", list(r.parent_ids))
    _put(out, "decomposition_group_id", r.decomposition_group_id)
    _put(out, "allocated_to", list(r.allocated_to))
    _put(out, "declared_asil", str(r.declared_asil) if r.declared_asil is not None else None)
    return out


def _group_dict(g: DecompositionGroup) -> dict:
    return {
        "id": g.id,
        "parent_requirement_id": g.parent_requirement_id,
        "member_requirement_ids": list(g.member_requirement_ids),
        "independence_evidence": g.independence_evidence,
        "member_target_asils": {k: str(v) for k, v in sorted(g.member_target_asils.items())},
    }


def _hw_dict(comp: HwComponent) -> dict:
    out: dict[str, Any] = {"id": comp.id}
    _put(out, "ecu_id", comp.ecu_id)
    entries = []
    for entry in comp.fault_data:
        e: dict[str, Any] = {"safety_related_fit": float(entry.safety_related_fit)}
        if entry.non_safety_related_fit:
            e["non_safety_related_fit"] = float(entry.non_safety_related_fit)
        _put(e, "mechanism_id", entry.mechanism_id)
        entries.append(e)
    _put(out, "fault_data", entries)
    if comp.seooc is not None:
        out["seooc"] = {"subsumed_fit": float(comp.seooc.subsumed_fit)}
    return out


def _mech_dict(m: SafetyMechanism) -> dict:
    out: dict[str, Any] = {"id": m.id, "dc": float(m.dc)}
    if m.latent_dc:
        out["latent_dc"] = float(m.latent_dc)
    return out


def _swc_dict(s: SwComponent) -> dict:
    out: dict[str, Any] = {"id": s.id, "ecu_id": s.ecu_id}
    _put(out, "partition_id", s.partition_id)
    if s.external:
        out["external"] = True
    _put(
        out,
        "developed_to_asil",
        str(s.developed_to_asil) if s.developed_to_asil is not None else None,
    )
    return out


def _ecu_dict(e: Ecu) -> dict:
    out: dict[str, Any] = {"id": e.id}
    _put(
        out,
        "partitions",
        [
            {
                "id": p.id,
                "memory_protection": p.memory_protection,
                "timing_watchdog": p.timing_watchdog,
            }
            for p in e.partitions
        ],
    )
    return out


def _channel_dict(ch: Channel) -> dict:
    return {
        "id": ch.id,
        "from_swc": ch.from_swc,
        "to_swc": ch.to_swc,
        "e2e_protected": ch.e2e_protected,
    }


def _tool_dict(t: Tool) -> dict:
    out: dict[str, Any] = {
        "id": t.id,
        "can_introduce_errors": t.can_introduce_errors,
        "qualified": t.qualified,
    }
    _put(out, "used_for", list(t.used_for))
    return out


def _evidence_dict(e: ProvenInUseEvidence) -> dict:
    return {
        "element_id": e.element_id,
        "incidents": e.incidents,
        "service_hours": float(e.service_hours),
    }


def serialize_model(model: SafetyModel) -> str:
    """Render the canonical document (sorted, minimal, newline-terminated)."""
    doc: dict[str, Any] = {}
    meta: dict[str, Any] = {"schema_version": model.schema_version}
    _put(meta, "name", model.name)
    _put(meta, "description", model.description)
    doc["meta"] = meta
    _put(doc, "hazardous_events", [_he_dict(e) for e in model.hazardous_events])
    _put(doc, "safety_goals", [_sg_dict(g) for g in model.safety_goals])
    _put(doc, "requirements", [_req_dict(r) for r in model.requirements])
    _put(doc, "decomposition_groups", [_group_dict(g) for g in model.decomposition_groups])
    _put(doc, "hw_components", [_hw_dict(x) for x in model.hw_components])
    _put(doc, "mechanisms", [_mech_dict(m) for m in model.mechanisms])
    _put(doc, "sw_components", [_swc_dict(s) for s in model.sw_components])
    _put(doc, "ecus", [_ecu_dict(e) for e in model.ecus])
    _put(doc, "channels", [_channel_dict(ch) for ch in model.channels])
    _put(doc, "tools", [_tool_dict(t) for t in model.tools])
    _put(doc, "evidence", [_evidence_dict(e) for e in model.evidence])
    _put(doc, "config", dict(model.config.overrides))
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"
