"""ASIL propagation through the requirement graph, decomposition, FFI.

Inheritance is max-of-parents: a requirement receives the highest ASIL
of everything it refines, components receive the highest ASIL of the
TSRs allocated to them.  A validated decomposition replaces that for
the group's members, which adopt their lowered target levels while the
undecomposed parent level is tracked as ``origin`` (the "B(D)" notation
in reports).  Freedom-from-interference analysis then lifts co-located
software that is not separated by qualified partitions and flags
unprotected cross-ECU channels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingAsilSourceError
from .findings import Finding, finding
from .hara import classify_model_events, safety_goal_asils
from .levels import AsilLevel
from .model import FSR, TSR, DecompositionGroup, SafetyModel


@dataclass(frozen=True)
class EffectiveAsil:
    """Computed integrity level of one element.

    ``origin`` is only set for decomposed requirements and records the
    parent level the member was lowered from; it never feeds back into
    downstream max computations.  ``provenance`` lists the parent
    elements whose level the element inherited.
    """

    element_id: str
    effective: AsilLevel
    origin: AsilLevel | None = None
    provenance: tuple[str, ...] = ()

    def notation(self) -> str:
        if self.origin is not None and self.origin != self.effective:
            return f"{self.effective}({self.origin})"
        return str(self.effective)

    def to_dict(self) -> dict:
        out: dict = {"element_id": self.element_id, "effective": str(self.effective)}
        if self.origin is not None:
            out["origin"] = str(self.origin)
        if self.provenance:
            out["provenance"] = list(self.provenance)
        return out


class SchemeTable:
    """Allowed child-ASIL multisets per parent level, fully table-driven."""

    def __init__(self, schemes: dict[AsilLevel, tuple[tuple[AsilLevel, ...], ...]]):
        self._schemes = {
            parent: {tuple(sorted(m, reverse=True)) for m in multisets}
            for parent, multisets in schemes.items()
        }

    @classmethod
    def from_model(cls, model: SafetyModel) -> SchemeTable:
        return cls(dict(model.config.decomposition_schemes))

    def allows(self, parent: AsilLevel, child_levels: tuple[AsilLevel, ...]) -> bool:
        multiset = tuple(sorted(child_levels, reverse=True))
        return multiset in self._schemes.get(parent, set())


def validate_decomposition(
    group: DecompositionGroup, table: SchemeTable, parent_effective: AsilLevel
) -> tuple[bool, list[Finding]]:
    """Check one decomposition group against the scheme table.

    Valid groups need nonempty independence evidence and a child-level
    multiset the table allows for the parent's effective level.  Invalid
    groups produce a finding; their members then inherit the parent
    level undecomposed.
    """
    targets = tuple(group.member_target_asils[m] for m in group.member_requirement_ids)
    if not group.independence_evidence.strip():
        return False, [
            finding(
                "invalid-decomposition",
                group.id,
                f"decomposition group {group.id!r} has no independence evidence; "
                "members inherit the parent ASIL undecomposed",
            )
        ]
    if not table.allows(parent_effective, targets):
        combo = "+".join(str(t) for t in sorted(targets, reverse=True))
        return False, [
            finding(
                "invalid-decomposition",
                group.id,
                f"decomposition group {group.id!r} splits {parent_effective} into "
                f"{combo}, which the scheme table does not allow; members inherit "
                "the parent ASIL undecomposed",
            )
        ]
    return True, []


def _propagate(
    model: SafetyModel,
) -> tuple[dict[str, EffectiveAsil], list[str], list[Finding]]:
    """Core propagation pass.

    Returns the effective map, the requirements that lack any ASIL
    source (reported or raised by the public wrappers), and analysis
    findings (invalid decompositions, declared-ASIL mismatches).
    """
    assignments, _ = classify_model_events(model)
    effective: dict[str, EffectiveAsil] = {}
    findings: list[Finding] = []
    missing: list[str] = []

    for assignment in assignments:
        effective[assignment.hazardous_event_id] = EffectiveAsil(
            element_id=assignment.hazardous_event_id,
            effective=assignment.computed_asil,
        )

    goal_levels = safety_goal_asils(model, assignments)
    for goal in model.safety_goals:
        level = goal_levels[goal.id]
        contributors = tuple(
            he for he in goal.hazardous_event_ids
            if effective[he].effective == level
        )
        effective[goal.id] = EffectiveAsil(goal.id, level, provenance=contributors)

    table = SchemeTable.from_model(model)
    # Validated group memberships: member -> (target, origin, parent id).
    decomposed: dict[str, tuple[AsilLevel, AsilLevel, str]] = {}

    def settle_groups(kind: str) -> None:
        for group in model.decomposition_groups:
            members = [model.requirements_by_id[m] for m in group.member_requirement_ids]
            if not members or members[0].kind != kind:
                continue
            parent = effective.get(group.parent_requirement_id)
            if parent is None:
                continue  # parent had no ASIL source; members fall out the same way
            valid, group_findings = validate_decomposition(group, table, parent.effective)
            findings.extend(group_findings)
            if valid:
                for member in members:
                    decomposed[member.id] = (
                        group.member_target_asils[member.id],
                        parent.effective,
                        group.parent_requirement_id,
                    )

    def settle_requirements(kind: str) -> None:
        for req in model.requirements_of_kind(kind):
            if req.id in decomposed:
                target, origin, parent_id = decomposed[req.id]
                effective[req.id] = EffectiveAsil(
                    req.id, target, origin=origin, provenance=(parent_id,)
                )
                continue
            if not req.parent_ids:
                if req.declared_asil is None:
                    missing.append(req.id)
                    continue
                effective[req.id] = EffectiveAsil(req.id, req.declared_asil)
                continue
            parent_levels = [
                effective[p].effective for p in req.parent_ids if p in effective
            ]
            if not parent_levels:
                continue  # all parents unresolvable; root cause already recorded
            level = max(parent_levels)
            contributors = tuple(
                p for p in req.parent_ids
                if p in effective and effective[p].effective == level
            )
            effective[req.id] = EffectiveAsil(req.id, level, provenance=contributors)

    settle_groups(FSR)
    settle_requirements(FSR)
    settle_groups(TSR)
    settle_requirements(TSR)

    for req in model.requirements:
        entry = effective.get(req.id)
        if entry is None or req.declared_asil is None:
            continue
        if req.declared_asil != entry.effective:
            findings.append(
                finding(
                    "declared-asil-mismatch",
                    req.id,
                    f"{req.kind} {req.id!r} declares ASIL {req.declared_asil} but "
                    f"inherits {entry.notation()}",
                )
            )

    # Components: highest ASIL over the TSRs allocated to them.
    component_ids = {c.id for c in model.hw_components} | {s.id for s in model.sw_components}
    allocations: dict[str, list[str]] = {}
    for req in model.requirements_of_kind(TSR):
        if req.id not in effective:
            continue
        for target in req.allocated_to:
            if target in component_ids:
                allocations.setdefault(target, []).append(req.id)
    for comp_id in sorted(allocations):
        tsr_ids = allocations[comp_id]
        level = max(effective[t].effective for t in tsr_ids)
        contributors = tuple(
            sorted(t for t in tsr_ids if effective[t].effective == level)
        )
        effective[comp_id] = EffectiveAsil(comp_id, level, provenance=contributors)

    # ECUs: highest ASIL over the components they host.
    for ecu in model.ecus:
        hosted = [
            c.id for c in model.hw_components if c.ecu_id == ecu.id and c.id in effective
        ] + [
            s.id for s in model.sw_components if s.ecu_id == ecu.id and s.id in effective
        ]
        if not hosted:
            continue
        level = max(effective[h].effective for h in hosted)
        contributors = tuple(sorted(h for h in hosted if effective[h].effective == level))
        effective[ecu.id] = EffectiveAsil(ecu.id, level, provenance=contributors)

    return effective, sorted(missing), findings


def propagate(model: SafetyModel) -> dict[str, EffectiveAsil]:
    """Effective ASIL per element id (events, goals, requirements, components).

    Raises :class:`MissingAsilSourceError` for a requirement with neither
    parents nor a declared ASIL.
    """
    effective, missing, _ = _propagate(model)
    if missing:
        raise MissingAsilSourceError(missing[0])
    return effective


def propagate_with_findings(
    model: SafetyModel,
) -> tuple[dict[str, EffectiveAsil], list[Finding]]:
    """Lenient propagation: source-less requirements become findings."""
    effective, missing, findings = _propagate(model)
    for req_id in missing:
        findings.append(
            finding(
                "missing-asil-source",
                req_id,
                f"requirement {req_id!r} has no parents and no declared ASIL",
            )
        )
    return effective, findings


# ---------------------------------------------------------------------------
# Freedom from interference
# ---------------------------------------------------------------------------


def ffi_analysis(
    model: SafetyModel, propagated: dict[str, EffectiveAsil]
) -> tuple[dict[str, EffectiveAsil], list[Finding]]:
    """Lift-up analysis per ECU and end-to-end protection per channel.

    Two co-located software components interfere unless both sit in
    distinct partitions providing memory protection and a timing
    watchdog.  Every interference set is raised to its highest member
    ASIL.  Software without any propagated ASIL counts as QM and can
    only be lifted.
    """
    findings: list[Finding] = []
    result: dict[str, EffectiveAsil] = {}

    def base(swc_id: str) -> EffectiveAsil:
        entry = propagated.get(swc_id)
        return entry if entry is not None else EffectiveAsil(swc_id, AsilLevel.QM)

    for ecu in model.ecus:
        protected = {p.id for p in ecu.partitions if p.interference_free}
        clusters: dict[str | None, list[str]] = {}
        for swc in model.sw_components:
            if swc.ecu_id != ecu.id:
                continue
            key = swc.partition_id if swc.partition_id in protected else None
            clusters.setdefault(key, []).append(swc.id)
        for key in sorted(clusters, key=lambda k: (k is None, k or "")):
            members = sorted(clusters[key])
            levels = {m: base(m).effective for m in members}
            top = max(levels.values())
            drivers = tuple(m for m in members if levels[m] == top)
            for member in members:
                entry = base(member)
                if len(members) > 1 and levels[member] < top:
                    result[member] = EffectiveAsil(member, top, provenance=drivers)
                    findings.append(
                        finding(
                            "asil-lift-up",
                            member,
                            f"sw component {member!r} is lifted from {levels[member]} "
                            f"to {top} on ECU {ecu.id!r}: no interference-free "
                            f"partitioning towards {', '.join(repr(d) for d in drivers)}",
                        )
                    )
                else:
                    result[member] = entry

    ecu_of = {s.id: s.ecu_id for s in model.sw_components}
    for channel in model.channels:
        if ecu_of.get(channel.from_swc) == ecu_of.get(channel.to_swc):
            continue
        top = max(result[channel.from_swc].effective, result[channel.to_swc].effective)
        if top >= AsilLevel.A and not channel.e2e_protected:
            findings.append(
                finding(
                    "unprotected-channel",
                    channel.id,
                    f"channel {channel.id!r} carries ASIL {top} data between ECUs "
                    "without end-to-end protection",
                )
            )
    return result, findings
