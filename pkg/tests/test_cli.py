"""Command-line behaviour: exit codes, output files, printed summaries."""

import json

import pytest

from attract import cli
from attract.explorer import ReferenceRunError
from attract.report import CSV_HEADER, parse_report


def _run_demo(tmp_path, name, extra=()):
    out = tmp_path / name
    code = cli.main(
        [
            "run",
            "--subject",
            "demo",
            "--model",
            "pone",
            "--inputs",
            "10",
            "--seed",
            "42",
            "--out",
            str(out),
            *extra,
        ]
    )
    return code, out


def test_run_writes_a_json_report(tmp_path, capsys):
    code, out = _run_demo(tmp_path, "demo.json")
    assert code == cli.EXIT_OK
    report = parse_report(out.read_bytes())
    assert report.config.subject == "demo"
    assert report.space_size == sum(range(10)) == 45
    stdout = capsys.readouterr().out
    assert "space 45 omega 43 phi 0.9556" in stdout
    assert f"report written to {out}" in stdout


def test_run_writes_csv_when_asked(tmp_path):
    code, out = _run_demo(tmp_path, "demo.csv", ["--format", "csv"])
    assert code == cli.EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2  # header + the single demo point


def test_run_rejects_unknown_subject(tmp_path, capsys):
    code = cli.main(
        ["run", "--subject", "nope", "--model", "pone", "--out", str(tmp_path / "x")]
    )
    assert code == cli.EXIT_USAGE
    assert "nope" in capsys.readouterr().err


def test_run_rejects_model_without_matching_points(tmp_path, capsys):
    # demo has no boolean points, so a boolean-only model can never fire
    code = cli.main(
        ["run", "--subject", "demo", "--model", "pbool", "--out", str(tmp_path / "x")]
    )
    assert code == cli.EXIT_USAGE
    assert "no bool points" in capsys.readouterr().err


def test_run_rejects_unknown_model(tmp_path):
    with pytest.raises(SystemExit) as exc:
        cli.main(
            ["run", "--subject", "demo", "--model", "flip", "--out", str(tmp_path / "x")]
        )
    assert exc.value.code == 2


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_reference_failure_exits_with_its_own_code(tmp_path, capsys, monkeypatch):
    def explode(config, jobs, annotations):
        raise ReferenceRunError("reference run failed for test purposes")

    monkeypatch.setattr(cli, "run_campaign", explode)
    code, _ = _run_demo(tmp_path, "x.json")
    assert code == cli.EXIT_REFERENCE
    assert "reference run failed" in capsys.readouterr().err


def test_jobs_default_comes_from_the_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("ATTRACT_JOBS", "2")
    code, out = _run_demo(tmp_path, "jobs.json")
    assert code == cli.EXIT_OK
    assert parse_report(out.read_bytes()).space_size == 45


def test_garbage_jobs_environment_is_a_usage_error(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ATTRACT_JOBS", "many")
    code, _ = _run_demo(tmp_path, "x.json")
    assert code == cli.EXIT_USAGE
    assert "ATTRACT_JOBS" in capsys.readouterr().err


def test_zero_jobs_is_a_usage_error(tmp_path, capsys):
    code, _ = _run_demo(tmp_path, "x.json", ["--jobs", "0"])
    assert code == cli.EXIT_USAGE
    assert "--jobs" in capsys.readouterr().err


def test_annotations_file_is_merged(tmp_path):
    notes = tmp_path / "notes.json"
    notes.write_text(json.dumps({"0": "hand-checked"}))
    code, out = _run_demo(tmp_path, "annotated.json", ["--annotations", str(notes)])
    assert code == cli.EXIT_OK
    assert parse_report(out.read_bytes()).rows[0].annotation == "hand-checked"


@pytest.mark.parametrize(
    "payload, message",
    [
        ("[1, 2]", "one JSON object"),
        ('{"zero": "x"}', "not a point id"),
        ('{"0": 5}', "must be a string"),
        ('{"99": "x"}', "unknown point"),
        ("{brace", "not valid JSON"),
    ],
)
def test_bad_annotation_files_are_usage_errors(tmp_path, capsys, payload, message):
    notes = tmp_path / "notes.json"
    notes.write_text(payload)
    code, _ = _run_demo(tmp_path, "x.json", ["--annotations", str(notes)])
    assert code == cli.EXIT_USAGE
    assert message in capsys.readouterr().err


def test_list_subjects_prints_the_whole_corpus(capsys):
    assert cli.main(["list-subjects"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 9
    assert any(l.startswith("quicksort") and " 42 int" in l for l in lines)
    assert any(l.startswith("demo") and "  1 int" in l for l in lines)


def test_compare_identical_reports_reports_no_drift(tmp_path, capsys):
    _, a = _run_demo(tmp_path, "a.json")
    _, b = _run_demo(tmp_path, "b.json")
    assert a.read_bytes() == b.read_bytes()
    assert cli.main(["compare", str(a), str(b)]) == cli.EXIT_OK
    assert "no drift" in capsys.readouterr().out


def test_compare_across_models_prints_drift(tmp_path, capsys):
    # Bounds 0..7: +1 breaks the output at bounds 3 and 7, -1 only at 4,
    # so the two models disagree on phi and the diff must say so.
    paths = {}
    for model in ("pone", "mone"):
        paths[model] = tmp_path / f"{model}.json"
        cli.main(
            [
                "run",
                "--subject",
                "demo",
                "--model",
                model,
                "--inputs",
                "8",
                "--seed",
                "42",
                "--out",
                str(paths[model]),
            ]
        )
    capsys.readouterr()
    assert cli.main(["compare", str(paths["pone"]), str(paths["mone"])]) == cli.EXIT_OK
    assert "max |delta phi| 0.0357 at point 0" in capsys.readouterr().out


def test_compare_rejects_incomparable_reports(tmp_path, capsys):
    _, a = _run_demo(tmp_path, "a.json")
    small = tmp_path / "small.json"
    cli.main(
        [
            "run",
            "--subject",
            "demo",
            "--model",
            "pone",
            "--inputs",
            "5",
            "--out",
            str(small),
        ]
    )
    assert cli.main(["compare", str(a), str(small)]) == cli.EXIT_USAGE
    assert "different input sets" in capsys.readouterr().err


def test_compare_rejects_unreadable_or_malformed_files(tmp_path, capsys):
    _, a = _run_demo(tmp_path, "a.json")
    assert cli.main(["compare", str(a), str(tmp_path / "missing.json")]) == cli.EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert cli.main(["compare", str(a), str(bad)]) == cli.EXIT_USAGE
