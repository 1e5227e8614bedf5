import time

import pytest

from attract import cli
from attract.report import parse_report


@pytest.fixture(scope="session")
def quicksort_cli_runs(tmp_path_factory):
    """One quicksort +1 campaign per worker count, run through the real
    command line.  Shared because the campaign is the most expensive one
    in the suite and several checks need it.

    Returns (payload bytes by jobs, parsed report, wall seconds of the
    single-worker run).
    """
    tmp = tmp_path_factory.mktemp("quicksort-cli")
    payloads = {}
    elapsed = None
    for jobs in (1, 8):
        out = tmp / f"pone-jobs{jobs}.json"
        argv = [
            "run",
            "--subject",
            "quicksort",
            "--model",
            "pone",
            "--inputs",
            "20",
            "--seed",
            "42",
            "--out",
            str(out),
            "--jobs",
            str(jobs),
        ]
        started = time.perf_counter()
        code = cli.main(argv)
        took = time.perf_counter() - started
        assert code == 0, f"quicksort campaign failed with --jobs {jobs}"
        payloads[jobs] = out.read_bytes()
        if jobs == 1:
            elapsed = took
    return payloads, parse_report(payloads[1]), elapsed
