"""Report layer: serialization exactness, tamper detection, comparison."""

import csv
import dataclasses
import io
import json
from fractions import Fraction

import pytest

import attract
from attract.engine import Model, PointKind
from attract.metrics import Classification
from attract.report import (
    CSV_HEADER,
    CampaignConfig,
    CampaignReport,
    PointRow,
    ReportParseError,
    compare_reports,
    emit_table,
    parse_report,
    run_campaign,
    to_csv,
    to_json,
    verify_summary,
)


@pytest.fixture(scope="module")
def demo_report():
    return run_campaign(CampaignConfig("demo", Model.PONE, seed=42, n_inputs=30))


def _report_with_rows(rows):
    return CampaignReport(
        version="0",
        config=CampaignConfig("demo", Model.PONE, seed=0, n_inputs=1),
        rows=tuple(rows),
        space_size=0,
        omega=0,
        phi_global=Fraction(0),
        class_counts={},
        histogram=(0,) * 20,
    )


def _row(**overrides):
    base = dict(
        point_id=7,
        label="plain label",
        kind=PointKind.INT,
        execs=10,
        success=10,
        oracle_broken=0,
        exception=0,
        budget_exceeded=0,
        phi=Fraction(1),
        chi=Fraction(0),
        xi=Fraction(0),
        classification=Classification.ANTIFRAGILE,
    )
    base.update(overrides)
    return PointRow(**base)


def test_csv_header_is_the_documented_column_list():
    assert CSV_HEADER == (
        "point_id,label,kind,execs,success,oracle_broken,exception,"
        "budget_exceeded,phi,chi,xi,class,annotation"
    )


def test_csv_rows_have_the_documented_shape():
    rows = [
        _row(execs=1751, success=1751),
        _row(
            point_id=8,
            execs=3616,
            success=0,
            oracle_broken=3616,
            phi=Fraction(0),
            chi=Fraction(1),
            classification=Classification.FRAGILE,
        ),
    ]
    lines = to_csv(_report_with_rows(rows)).decode().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1].endswith(",1751,1751,0,0,0,1.0000,0.0000,0.0000,antifragile,")
    assert lines[2].endswith(",3616,0,3616,0,0,0.0000,1.0000,0.0000,fragile,")


def test_unexecuted_rows_print_empty_ratios():
    row = _row(
        execs=0,
        success=0,
        phi=None,
        chi=None,
        xi=None,
        classification=Classification.UNEXECUTED,
    )
    line = to_csv(_report_with_rows([row])).decode().splitlines()[1]
    assert line.endswith(",0,0,0,0,0,,,,unexecuted,")


def test_csv_quotes_labels_with_commas_and_quotes():
    tricky = 'pivot "beg, end" midpoint'
    data = to_csv(_report_with_rows([_row(label=tricky)])).decode()
    parsed = list(csv.reader(io.StringIO(data)))
    assert parsed[0] == CSV_HEADER.split(",")
    assert parsed[1][1] == tricky


def test_json_roundtrip_is_exact(demo_report):
    payload = to_json(demo_report)
    parsed = parse_report(payload)
    assert parsed == demo_report  # duration is excluded from equality
    assert parsed.duration is None and demo_report.duration is not None
    assert to_json(parsed) == payload


def test_emit_table_dispatches_on_format(demo_report):
    assert emit_table(demo_report, "json") == to_json(demo_report)
    assert emit_table(demo_report, "csv") == to_csv(demo_report)
    with pytest.raises(ValueError):
        emit_table(demo_report, "yaml")


def test_report_carries_package_version(demo_report):
    assert demo_report.version == attract.__version__


def test_parse_rejects_malformed_bytes():
    with pytest.raises(ReportParseError):
        parse_report(b"not a report")
    with pytest.raises(ReportParseError):
        parse_report(b'{"version": "1"}')


def _tampered(report, mutate):
    doc = json.loads(to_json(report))
    mutate(doc)
    return json.dumps(doc).encode()


def test_parse_detects_counter_tampering(demo_report):
    def bump_success(doc):
        doc["rows"][0]["success"] += 1

    with pytest.raises(ReportParseError):
        parse_report(_tampered(demo_report, bump_success))


def test_parse_detects_summary_tampering(demo_report):
    def bump_omega(doc):
        doc["summary"]["omega"] += 1

    with pytest.raises(ReportParseError):
        parse_report(_tampered(demo_report, bump_omega))


def test_parse_detects_ratio_string_tampering(demo_report):
    def fudge_phi(doc):
        doc["rows"][0]["phi"] = "0.1234"

    with pytest.raises(ReportParseError):
        parse_report(_tampered(demo_report, fudge_phi))


def test_parse_detects_histogram_tampering(demo_report):
    def stretch(doc):
        doc["summary"]["histogram"].append(0)

    with pytest.raises(ReportParseError):
        parse_report(_tampered(demo_report, stretch))


def test_verify_summary_accepts_real_reports(demo_report):
    verify_summary(demo_report)  # must not raise


def test_annotations_are_merged_into_rows():
    report = run_campaign(
        CampaignConfig("demo", Model.PONE, seed=42, n_inputs=5),
        annotations={0: "hand-checked"},
    )
    assert report.rows[0].annotation == "hand-checked"
    assert to_csv(report).decode().splitlines()[1].endswith(",hand-checked")
    assert parse_report(to_json(report)).rows[0].annotation == "hand-checked"


def test_config_validation():
    with pytest.raises(ValueError):
        CampaignConfig("demo", Model.PONE, seed=42, n_inputs=0)
    with pytest.raises(ValueError):
        CampaignConfig("demo", Model.PONE, seed=-1, n_inputs=5)


def test_compare_requires_matching_campaigns(demo_report):
    other = run_campaign(CampaignConfig("demo", Model.PONE, seed=42, n_inputs=5))
    with pytest.raises(ValueError):
        compare_reports(demo_report, other)  # different input count
    shrunk = dataclasses.replace(demo_report, rows=())
    with pytest.raises(ValueError):
        compare_reports(demo_report, shrunk)  # different point tables


def test_compare_report_with_itself_is_empty(demo_report):
    drift = compare_reports(demo_report, demo_report)
    assert drift.empty
    assert drift.flips == ()
    assert drift.max_delta_phi == 0


def test_compare_across_models_measures_drift(demo_report):
    mone = run_campaign(CampaignConfig("demo", Model.MONE, seed=42, n_inputs=30))
    drift = compare_reports(demo_report, mone)
    expected = abs(demo_report.rows[0].phi - mone.rows[0].phi)
    assert drift.max_delta_phi == expected
    if demo_report.rows[0].classification is not mone.rows[0].classification:
        assert len(drift.flips) == 1
        assert drift.flips[0].point_id == 0
    else:
        assert drift.flips == ()
