"""Command line for running perturbation campaigns and reading reports.

Three commands:

``attract run``
    Explore one subject under one perturbation model and write a report.
``attract list-subjects``
    Show the bundled subjects with their point counts.
``attract compare``
    Diff two JSON reports over the same subject and input set.

Exit codes: 0 on success, 2 on usage errors (unknown subject or model,
malformed files, incomparable reports), 3 when a reference run fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .corpus import all_subjects, get_subject
from .engine import Model
from .explorer import BudgetPolicy, ReferenceRunError
from .metrics import Classification
from .report import (
    CampaignConfig,
    ReportParseError,
    compare_reports,
    emit_table,
    parse_report,
    run_campaign,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REFERENCE = 3


def _default_jobs() -> str:
    return os.environ.get("ATTRACT_JOBS", "1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attract",
        description="exhaustive one-shot perturbation campaigns with perfect oracles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="explore one subject under one model")
    run.add_argument("--subject", required=True, help="subject program name")
    run.add_argument(
        "--model",
        required=True,
        choices=[m.value for m in Model],
        help="perturbation model",
    )
    run.add_argument("--inputs", type=int, default=20, help="number of seeded inputs")
    run.add_argument("--seed", type=int, default=42, help="input generator seed")
    run.add_argument(
        "--budget-factor",
        type=int,
        default=BudgetPolicy().factor,
        help="per-run hook budget as a multiple of the reference run's hooks",
    )
    run.add_argument("--out", required=True, help="report file to write")
    run.add_argument(
        "--format", choices=("csv", "json"), default="json", help="report format"
    )
    run.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="worker processes (default: ATTRACT_JOBS or 1)",
    )
    run.add_argument(
        "--annotations",
        help="JSON file mapping point ids to annotation labels merged into rows",
    )

    sub.add_parser("list-subjects", help="list bundled subject programs")

    cmp_parser = sub.add_parser("compare", help="diff two JSON reports")
    cmp_parser.add_argument("report_a")
    cmp_parser.add_argument("report_b")
    return parser


def _load_annotations(path: str, n_points: int) -> dict:
    try:
        with open(path, "rb") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read annotations file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"annotations file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValueError("annotations file must hold one JSON object")
    annotations = {}
    for key, value in raw.items():
        try:
            point_id = int(key)
        except ValueError:
            raise ValueError(f"annotation key {key!r} is not a point id") from None
        if not isinstance(value, str):
            raise ValueError(f"annotation for point {key} must be a string")
        if not 0 <= point_id < n_points:
            raise ValueError(f"annotation names unknown point {point_id}")
        annotations[point_id] = value
    return annotations


def _cmd_run(args) -> int:
    try:
        subject = get_subject(args.subject)
    except KeyError as exc:
        print(f"attract: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    model = Model(args.model)
    if model.kind is not None and not subject.points_of_kind(model.kind):
        print(
            f"attract: subject {subject.name!r} has no {model.kind.value} "
            f"points; model {model.value!r} cannot fire",
            file=sys.stderr,
        )
        return EXIT_USAGE

    jobs = args.jobs
    if jobs is None:
        try:
            jobs = int(_default_jobs())
        except ValueError:
            print("attract: ATTRACT_JOBS must be an integer", file=sys.stderr)
            return EXIT_USAGE
    if jobs < 1:
        print("attract: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE

    annotations = None
    if args.annotations:
        try:
            annotations = _load_annotations(args.annotations, len(subject.points))
        except ValueError as exc:
            print(f"attract: {exc}", file=sys.stderr)
            return EXIT_USAGE

    try:
        config = CampaignConfig(
            subject=subject.name,
            model=model,
            seed=args.seed,
            n_inputs=args.inputs,
            policy=BudgetPolicy(factor=args.budget_factor),
        )
    except ValueError as exc:
        print(f"attract: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        report = run_campaign(config, jobs=jobs, annotations=annotations)
    except ReferenceRunError as exc:
        print(f"attract: {exc}", file=sys.stderr)
        return EXIT_REFERENCE

    payload = emit_table(report, args.format)
    with open(args.out, "wb") as fh:
        fh.write(payload)

    counts = report.class_counts
    print(
        f"subject {report.config.subject} model {report.config.model.value} "
        f"seed {report.config.seed} inputs {report.config.n_inputs}"
    )
    print(
        f"space {report.space_size} omega {report.omega} "
        f"phi {float(report.phi_global):.4f}"
    )
    print("  ".join(f"{c.value} {counts[c.value]}" for c in Classification))
    print(f"report written to {args.out}")
    print(f"campaign completed in {report.duration:.1f}s", file=sys.stderr)
    return EXIT_OK


def _cmd_list_subjects() -> int:
    for subject in all_subjects():
        print(
            f"{subject.name:10s} {subject.n_int_points:3d} int "
            f"{subject.n_bool_points:3d} bool  {subject.title}"
        )
    return EXIT_OK


def _cmd_compare(args) -> int:
    reports = []
    for path in (args.report_a, args.report_b):
        try:
            with open(path, "rb") as fh:
                reports.append(parse_report(fh.read()))
        except OSError as exc:
            print(f"attract: cannot read {path}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except ReportParseError as exc:
            print(f"attract: {path}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        drift = compare_reports(reports[0], reports[1])
    except ValueError as exc:
        print(f"attract: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if drift.empty:
        print("no drift: reports agree at every point")
        return EXIT_OK
    for flip in drift.flips:
        delta = (
            f" (delta phi {float(flip.delta_phi):+.4f})"
            if flip.delta_phi is not None
            else ""
        )
        print(
            f"point {flip.point_id}: {flip.before.value} -> "
            f"{flip.after.value}{delta}"
        )
    if drift.max_delta_point is not None:
        print(
            f"max |delta phi| {float(drift.max_delta_phi):.4f} "
            f"at point {drift.max_delta_point}"
        )
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "list-subjects":
        return _cmd_list_subjects()
    return _cmd_compare(args)


if __name__ == "__main__":
    sys.exit(main())
