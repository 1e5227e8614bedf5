"""Campaign reports: run a full exploration and serialize the results.

A report couples three layers: the configuration that makes the campaign
reproducible (subject, model, seed, input count, budget policy), one row
per perturbation point with raw counters and exact ratios, and the
campaign summary (space size, number of correct runs, global correctness
ratio, classification counts, the 20-bin ratio histogram).

Serialization is byte-stable: two campaigns with the same configuration
produce identical bytes no matter how many worker processes explored the
space.  Wall-clock duration is therefore kept on the in-memory object
only and never written into a report file.
"""

from __future__ import annotations

import dataclasses
import io
import json
import time
from fractions import Fraction

from . import __version__
from .corpus import Subject, get_subject
from .engine import Model, PointKind
from .explorer import BudgetPolicy, explore
from .metrics import (
    HISTOGRAM_BINS,
    Classification,
    aggregate,
    point_stats,
)

CSV_HEADER = (
    "point_id,label,kind,execs,success,oracle_broken,exception,"
    "budget_exceeded,phi,chi,xi,class,annotation"
)


@dataclasses.dataclass(frozen=True)
class CampaignConfig:
    """Everything needed to reproduce a campaign bit for bit.

    Worker count and output locations deliberately live outside this
    record: they change how fast and where, never what.
    """

    subject: str
    model: Model
    seed: int
    n_inputs: int
    policy: BudgetPolicy = BudgetPolicy()

    def __post_init__(self):
        if self.n_inputs <= 0:
            raise ValueError("campaign needs at least one input")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclasses.dataclass(frozen=True)
class PointRow:
    """One perturbation point's counters and exact ratios."""

    point_id: int
    label: str
    kind: PointKind
    execs: int
    success: int
    oracle_broken: int
    exception: int
    budget_exceeded: int
    phi: Fraction | None
    chi: Fraction | None
    xi: Fraction | None
    classification: Classification
    annotation: str = ""


@dataclasses.dataclass(frozen=True)
class CampaignReport:
    """Full result of one campaign.

    ``duration`` is excluded from equality and serialization so that
    reports are comparable across machines and worker counts.
    """

    version: str
    config: CampaignConfig
    rows: tuple
    space_size: int
    omega: int
    phi_global: Fraction
    class_counts: dict
    histogram: tuple
    duration: float | None = dataclasses.field(default=None, compare=False)


def _ratio(value: Fraction | None) -> str:
    """Ratios print with four decimals; undefined ones print empty."""
    if value is None:
        return ""
    return f"{float(value):.4f}"


def _build_rows(subject: Subject, tallies, annotations: dict) -> tuple:
    rows = []
    for point, tally in zip(subject.points, tallies):
        st = point_stats(tally)
        rows.append(
            PointRow(
                point_id=point.point_id,
                label=point.label,
                kind=point.kind,
                execs=st.execs,
                success=st.success,
                oracle_broken=st.oracle_broken,
                exception=st.exception,
                budget_exceeded=st.budget_exceeded,
                phi=st.phi,
                chi=st.chi,
                xi=st.xi,
                classification=st.classification,
                annotation=annotations.get(point.point_id, ""),
            )
        )
    return tuple(rows)


def run_campaign(
    config: CampaignConfig,
    *,
    jobs: int = 1,
    annotations: dict | None = None,
) -> CampaignReport:
    """Explore the whole perturbation space described by ``config``.

    ``annotations`` maps point ids to free-form labels merged into the
    rows (for example manual explanation categories).
    """
    subject = get_subject(config.subject)
    inputs = subject.generate_inputs(config.seed, config.n_inputs)
    started = time.perf_counter()
    result = explore(
        subject,
        config.model,
        inputs,
        policy=config.policy,
        jobs=jobs,
    )
    duration = time.perf_counter() - started
    rows = _build_rows(subject, result.tallies, annotations or {})
    summary = aggregate([point_stats(t) for t in result.tallies])
    if summary.space_size != result.space_size:
        raise AssertionError(
            "space size disagrees between explorer and metrics: "
            f"{result.space_size} vs {summary.space_size}"
        )
    return CampaignReport(
        version=__version__,
        config=config,
        rows=rows,
        space_size=summary.space_size,
        omega=summary.omega,
        phi_global=summary.phi_global,
        class_counts={c.value: n for c, n in summary.class_counts.items()},
        histogram=summary.histogram,
        duration=duration,
    )


# --------------------------------------------------------------------------
# serialization


def _row_dict(row: PointRow) -> dict:
    return {
        "point_id": row.point_id,
        "label": row.label,
        "kind": row.kind.value,
        "execs": row.execs,
        "success": row.success,
        "oracle_broken": row.oracle_broken,
        "exception": row.exception,
        "budget_exceeded": row.budget_exceeded,
        "phi": _ratio(row.phi),
        "chi": _ratio(row.chi),
        "xi": _ratio(row.xi),
        "class": row.classification.value,
        "annotation": row.annotation,
    }


def to_json(report: CampaignReport) -> bytes:
    """Byte-stable JSON rendering (duration intentionally absent)."""
    doc = {
        "version": report.version,
        "config": {
            "subject": report.config.subject,
            "model": report.config.model.value,
            "seed": report.config.seed,
            "n_inputs": report.config.n_inputs,
            "budget_factor": report.config.policy.factor,
            "budget_floor": report.config.policy.floor,
            "reference_budget": report.config.policy.reference_budget,
        },
        "rows": [_row_dict(r) for r in report.rows],
        "summary": {
            "space_size": report.space_size,
            "omega": report.omega,
            "phi": _ratio(report.phi_global),
            "class_counts": {
                c.value: report.class_counts[c.value] for c in Classification
            },
            "histogram": list(report.histogram),
        },
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _csv_field(text: str) -> str:
    if "," in text or '"' in text or "\n" in text:
        return '"' + text.replace('"', '""') + '"'
    return text


def to_csv(report: CampaignReport) -> bytes:
    """Per-point table; ratios with four decimals, empty if undefined."""
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for row in report.rows:
        out.write(
            f"{row.point_id},{_csv_field(row.label)},{row.kind.value},"
            f"{row.execs},{row.success},{row.oracle_broken},{row.exception},"
            f"{row.budget_exceeded},{_ratio(row.phi)},{_ratio(row.chi)},"
            f"{_ratio(row.xi)},{row.classification.value},"
            f"{_csv_field(row.annotation)}\n"
        )
    return out.getvalue().encode("utf-8")


def emit_table(report: CampaignReport, fmt: str) -> bytes:
    """Render the report as ``csv`` or ``json`` bytes."""
    if fmt == "csv":
        return to_csv(report)
    if fmt == "json":
        return to_json(report)
    raise ValueError(f"unknown report format {fmt!r}; expected 'csv' or 'json'")


class ReportParseError(ValueError):
    """A report file is malformed or internally inconsistent."""


def _exact_ratios(execs: int, success: int, oracle_broken: int, exception: int):
    if execs == 0:
        return None, None, None
    return (
        Fraction(success, execs),
        Fraction(oracle_broken, execs),
        Fraction(exception, execs),
    )


def parse_report(data: bytes) -> CampaignReport:
    """Parse JSON report bytes back into a CampaignReport.

    Ratios are rebuilt exactly from the counters; the printed ratio
    strings and the whole summary block are recomputed and verified, so
    a tampered or truncated report fails loudly.
    """
    try:
        doc = json.loads(data.decode("utf-8"))
        config = CampaignConfig(
            subject=doc["config"]["subject"],
            model=Model(doc["config"]["model"]),
            seed=doc["config"]["seed"],
            n_inputs=doc["config"]["n_inputs"],
            policy=BudgetPolicy(
                factor=doc["config"]["budget_factor"],
                floor=doc["config"]["budget_floor"],
                reference_budget=doc["config"]["reference_budget"],
            ),
        )
        raw_rows = doc["rows"]
        summary = doc["summary"]
        version = doc["version"]
    except (KeyError, ValueError, TypeError) as exc:
        raise ReportParseError(f"malformed report: {exc}") from exc

    rows = []
    for raw in raw_rows:
        try:
            phi, chi, xi = _exact_ratios(
                raw["execs"], raw["success"], raw["oracle_broken"], raw["exception"]
            )
            row = PointRow(
                point_id=raw["point_id"],
                label=raw["label"],
                kind=PointKind(raw["kind"]),
                execs=raw["execs"],
                success=raw["success"],
                oracle_broken=raw["oracle_broken"],
                exception=raw["exception"],
                budget_exceeded=raw["budget_exceeded"],
                phi=phi,
                chi=chi,
                xi=xi,
                classification=Classification(raw["class"]),
                annotation=raw.get("annotation", ""),
            )
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise ReportParseError(f"malformed report row: {exc}") from exc
        for name, printed, exact in (
            ("phi", raw["phi"], phi),
            ("chi", raw["chi"], chi),
            ("xi", raw["xi"], xi),
        ):
            if printed != _ratio(exact):
                raise ReportParseError(
                    f"row {row.point_id}: printed {name}={printed!r} does not "
                    f"match counters ({_ratio(exact)!r})"
                )
        rows.append(row)

    report = CampaignReport(
        version=version,
        config=config,
        rows=tuple(rows),
        space_size=summary["space_size"],
        omega=summary["omega"],
        phi_global=(
            Fraction(summary["omega"], summary["space_size"])
            if summary["space_size"]
            else Fraction(0)
        ),
        class_counts=dict(summary["class_counts"]),
        histogram=tuple(summary["histogram"]),
    )
    verify_summary(report)
    if summary["phi"] != _ratio(report.phi_global):
        raise ReportParseError("summary phi does not match omega/space_size")
    return report


def verify_summary(report: CampaignReport):
    """Re-derive the summary from the rows; raise on any mismatch."""
    derived = aggregate([point_stats(r) for r in report.rows])
    problems = []
    if derived.space_size != report.space_size:
        problems.append("space_size")
    if derived.omega != report.omega:
        problems.append("omega")
    if derived.phi_global != report.phi_global:
        problems.append("phi")
    if {c.value: n for c, n in derived.class_counts.items()} != report.class_counts:
        problems.append("class_counts")
    if tuple(derived.histogram) != tuple(report.histogram):
        problems.append("histogram")
    if len(report.histogram) != HISTOGRAM_BINS:
        problems.append("histogram length")
    if problems:
        raise ReportParseError(
            "summary is not re-derivable from rows: " + ", ".join(problems)
        )


# --------------------------------------------------------------------------
# comparison


@dataclasses.dataclass(frozen=True)
class ClassFlip:
    point_id: int
    before: Classification
    after: Classification
    delta_phi: Fraction | None


@dataclasses.dataclass(frozen=True)
class DriftSummary:
    """What changed between two comparable reports."""

    flips: tuple
    max_delta_phi: Fraction
    max_delta_point: int | None

    @property
    def empty(self) -> bool:
        return not self.flips and self.max_delta_phi == 0


def compare_reports(a: CampaignReport, b: CampaignReport) -> DriftSummary:
    """Diff two campaigns over the same subject, seed and input count.

    The model may differ (comparing perturbation models on the same
    space is the interesting case); anything else differing makes the
    reports incomparable.
    """
    if a.config.subject != b.config.subject:
        raise ValueError("reports cover different subjects")
    if a.config.seed != b.config.seed or a.config.n_inputs != b.config.n_inputs:
        raise ValueError("reports cover different input sets")
    if len(a.rows) != len(b.rows):
        raise ValueError("reports have different point tables")
    flips = []
    max_delta = Fraction(0)
    max_point = None
    for ra, rb in zip(a.rows, b.rows):
        if ra.point_id != rb.point_id:
            raise ValueError("reports have different point tables")
        if ra.phi is not None and rb.phi is not None:
            delta = abs(ra.phi - rb.phi)
            if delta > max_delta:
                max_delta = delta
                max_point = ra.point_id
        if ra.classification is not rb.classification:
            delta_phi = (
                rb.phi - ra.phi
                if (ra.phi is not None and rb.phi is not None)
                else None
            )
            flips.append(
                ClassFlip(
                    point_id=ra.point_id,
                    before=ra.classification,
                    after=rb.classification,
                    delta_phi=delta_phi,
                )
            )
    return DriftSummary(
        flips=tuple(flips),
        max_delta_phi=max_delta,
        max_delta_point=max_point,
    )
