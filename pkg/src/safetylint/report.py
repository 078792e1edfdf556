"""Analysis orchestration and deterministic report rendering.

``run_checks`` executes the passes in lifecycle order (hazard
classification, concept coverage, ASIL propagation and interference,
hardware metrics, software-process checks); later passes consume
earlier outputs.  Findings never abort the run: a lint must show every
problem at once.  Reports are fully deterministic: findings are sorted
by severity, rule, and subject, all other lists by their ids, and the
JSON form uses sorted keys, two-space indent, and a trailing newline so
byte comparison is meaningful.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .findings import Finding, Severity, sort_findings
from .hara import HaraAssignment, check_concept_coverage, classify_model_events
from .hw_metrics import ArchMetrics, PmhfResult, evaluate_hw
from .model import SafetyModel
from .propagation import EffectiveAsil, ffi_analysis, propagate_with_findings
from .sw_process import (
    PiuVerdict,
    evaluate_evidence,
    external_component_check,
    tool_qualification_check,
)

REPORT_SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_PARSE_ERROR = 2
EXIT_INTERNAL_ERROR = 3


@dataclass(frozen=True)
class Report:
    content_hash: str
    model_name: str | None
    findings: tuple[Finding, ...]
    hara: tuple[HaraAssignment, ...]
    effective_asils: tuple[EffectiveAsil, ...]
    pmhf_results: tuple[PmhfResult, ...]
    arch_metrics: tuple[ArchMetrics, ...]
    piu_verdicts: tuple[PiuVerdict, ...]

    @property
    def summary(self) -> dict[str, int]:
        counts = {"errors": 0, "warnings": 0, "info": 0}
        for item in self.findings:
            if item.severity == Severity.ERROR:
                counts["errors"] += 1
            elif item.severity == Severity.WARNING:
                counts["warnings"] += 1
            else:
                counts["info"] += 1
        return counts

    @property
    def error_count(self) -> int:
        return self.summary["errors"]

    def to_dict(self) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "content_hash": self.content_hash,
            "model_name": self.model_name,
            "summary": self.summary,
            "findings": [f.to_dict() for f in self.findings],
            "hara": [a.to_dict() for a in self.hara],
            "effective_asils": [e.to_dict() for e in self.effective_asils],
            "pmhf": [p.to_dict() for p in self.pmhf_results],
            "arch_metrics": [m.to_dict() for m in self.arch_metrics],
            "proven_in_use": [v.to_dict() for v in self.piu_verdicts],
        }


def run_checks(model: SafetyModel) -> Report:
    """Run every analysis pass over a parsed model."""
    findings: list[Finding] = []

    assignments, hara_findings = classify_model_events(model)
    findings.extend(hara_findings)
    findings.extend(check_concept_coverage(model, assignments))

    effective, propagation_findings = propagate_with_findings(model)
    findings.extend(propagation_findings)

    swc_effective, ffi_findings = ffi_analysis(model, effective)
    findings.extend(ffi_findings)
    merged = {**effective, **swc_effective}

    pmhf_results, arch_results, hw_findings = evaluate_hw(model, merged)
    findings.extend(hw_findings)

    verdicts = evaluate_evidence(model, merged)
    findings.extend(tool_qualification_check(model, merged))
    findings.extend(external_component_check(model, merged, verdicts))

    return Report(
        content_hash=model.content_hash,
        model_name=model.name,
        findings=tuple(sort_findings(findings)),
        hara=assignments,
        effective_asils=tuple(
            merged[k] for k in sorted(merged)
        ),
        pmhf_results=pmhf_results,
        arch_metrics=arch_results,
        piu_verdicts=verdicts,
    )


def render_report(report: Report, fmt: str = "json") -> str:
    """Render a report as canonical JSON or a human-readable summary."""
    if fmt == "json":
        return (
            json.dumps(
                report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False
            )
            + "\n"
        )
    if fmt == "text":
        return _render_text(report)
    raise ValueError(f"unknown report format {fmt!r}")


def _render_text(report: Report) -> str:
    summary = report.summary
    lines = [
        f"model: {report.model_name or '(unnamed)'}",
        f"content hash: {report.content_hash}",
        f"result: {summary['errors']} error(s), {summary['warnings']} warning(s)",
        "",
    ]
    if report.findings:
        lines.append("findings:")
        for item in report.findings:
            subject = item.subject_id or "(model)"
            lines.append(
                f"  [{item.severity}] {item.rule_id} ({item.standard_ref}) "
                f"{subject}: {item.message}"
            )
    else:
        lines.append("findings: none")
    lines.append("")

    if report.hara:
        lines.append("hazard classification:")
        for a in report.hara:
            lines.append(
                f"  {a.hazardous_event_id}: {a.computed_asil} (sum {a.esc_sum}"
                + (", zero rating" if a.zero_summand else "")
                + ")"
            )
        lines.append("")
    if report.effective_asils:
        lines.append("effective ASILs:")
        for entry in report.effective_asils:
            lines.append(f"  {entry.element_id}: {entry.notation()}")
        lines.append("")
    if report.pmhf_results:
        lines.append("PMHF:")
        for r in report.pmhf_results:
            budget = f" <= {r.target:g} fit" if r.target is not None else ""
            verdict = "pass" if r.passed else "FAIL"
            lines.append(
                f"  {r.safety_goal_id}: {r.analytic_fit:g} fit{budget} [{verdict}]"
            )
        lines.append("")
    if report.arch_metrics:
        lines.append("architectural metrics:")
        for m in report.arch_metrics:
            spfm_mark = "pass" if m.spfm_passed else "FAIL"
            lfm_mark = "pass" if m.lfm_passed else "FAIL"
            lines.append(
                f"  {m.safety_goal_id}: SPFM {m.spfm:.4f} [{spfm_mark}], "
                f"LFM {m.lfm:.4f} [{lfm_mark}]"
            )
        lines.append("")
    if report.piu_verdicts:
        lines.append("proven in use:")
        for v in report.piu_verdicts:
            state = "pass" if v.passed else "FAIL"
            note = " (no confidence bound)" if v.estimator == "point" else ""
            lines.append(
                f"  {v.element_id} @ {v.target} ({v.estimator}{note}): "
                f"{v.observed_fit:g} fit observed, supports up to "
                f"{v.max_asil_supported} [{state}]"
            )
        lines.append("")
    return "\n".join(lines)


def exit_code_for(report: Report, strict: bool = False) -> int:
    """CLI exit code: 1 when errors (or, with strict, warnings) exist."""
    if report.error_count > 0:
        return EXIT_FINDINGS
    if strict and report.summary["warnings"] > 0:
        return EXIT_FINDINGS
    return EXIT_OK
