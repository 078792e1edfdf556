"""Command-line interface.

Exit codes: 0 clean, 1 error findings present (warnings too with
--strict), 2 the input could not be parsed or is otherwise unusable,
3 internal fault.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InvalidModelError, ModelError, ModelSyntaxError
from .fault_sim import DEFAULT_MISSION_HOURS, DEFAULT_TRIALS, SimConfig, simulate_pmhf
from .findings import RULE_CATALOG
from .model import SCHEMA_VERSION, SafetyModel, load_model
from .report import (
    EXIT_INTERNAL_ERROR,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    exit_code_for,
    render_report,
    run_checks,
)


def _load(path: str) -> SafetyModel | None:
    try:
        return load_model(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
    except ModelSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except InvalidModelError as exc:
        print(f"error: model failed validation ({len(exc.issues)} issue(s)):", file=sys.stderr)
        for issue in exc.issues:
            print(f"  {issue}", file=sys.stderr)
    return None


def _cmd_check(args: argparse.Namespace) -> int:
    model = _load(args.model)
    if model is None:
        return EXIT_PARSE_ERROR
    report = run_checks(model)
    rendered = render_report(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return exit_code_for(report, strict=args.strict)


def _cmd_validate(args: argparse.Namespace) -> int:
    model = _load(args.model)
    if model is None:
        return EXIT_PARSE_ERROR
    print(f"OK: {args.model}")
    print(f"  content hash: {model.content_hash}")
    counts = (
        ("hazardous events", len(model.hazardous_events)),
        ("safety goals", len(model.safety_goals)),
        ("requirements", len(model.requirements)),
        ("decomposition groups", len(model.decomposition_groups)),
        ("hw components", len(model.hw_components)),
        ("sw components", len(model.sw_components)),
        ("ecus", len(model.ecus)),
        ("channels", len(model.channels)),
        ("tools", len(model.tools)),
        ("evidence records", len(model.evidence)),
    )
    for label, count in counts:
        print(f"  {label}: {count}")
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    model = _load(args.model)
    if model is None:
        return EXIT_PARSE_ERROR
    try:
        config = SimConfig(
            safety_goal_id=args.goal,
            seed=args.seed,
            mission_hours=args.hours,
            trials=args.trials,
        )
        result = simulate_pmhf(model, config)
    except (ModelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    payload = {
        "safety_goal_id": args.goal,
        "seed": args.seed,
        "mission_hours": args.hours,
        "trials": args.trials,
        **result.to_dict(),
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_schema(args: argparse.Namespace) -> int:
    print(f"model schema version: {SCHEMA_VERSION}")
    print()
    print("rule catalog:")
    for rule_id in sorted(RULE_CATALOG):
        rule = RULE_CATALOG[rule_id]
        print(f"  {rule_id} [{rule.severity}] ({rule.standard_ref})")
        print(f"      {rule.summary}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="safetylint",
        description="Deterministic ISO 26262 lifecycle checks over a declarative item model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run all analyses and emit a report")
    check.add_argument("model", help="path to the model file")
    check.add_argument("--format", choices=("json", "text"), default="text")
    check.add_argument("--out", help="write the report to this path instead of stdout")
    check.add_argument(
        "--strict", action="store_true", help="exit nonzero on warnings as well as errors"
    )
    check.set_defaults(func=_cmd_check)

    validate = sub.add_parser("validate", help="parse and validate a model file")
    validate.add_argument("model", help="path to the model file")
    validate.set_defaults(func=_cmd_validate)

    simulate = sub.add_parser(
        "simulate", help="Monte Carlo estimate of a goal's residual failure rate"
    )
    simulate.add_argument("model", help="path to the model file")
    simulate.add_argument("--goal", required=True, help="safety goal id")
    simulate.add_argument("--seed", required=True, type=int, help="64-bit RNG seed")
    simulate.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    simulate.add_argument("--hours", type=float, default=DEFAULT_MISSION_HOURS)
    simulate.set_defaults(func=_cmd_simulate)

    schema = sub.add_parser("schema", help="print the schema version and rule catalog")
    schema.set_defaults(func=_cmd_schema)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - the CLI boundary maps faults to exit 3
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
