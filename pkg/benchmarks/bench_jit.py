"""Compare the numba-compiled kernels against the pure-Python fallback.

The accelerator mode is fixed when ``attract`` is imported (from the
``ATTRACT_JIT`` environment variable), so this script re-executes itself
in one subprocess per mode and reports both:

* hook throughput — a reference run of the demo subject at a large loop
  bound, i.e. one instrumentation hook per loop turn and nothing else;
* campaign throughput — a complete md5 +1 campaign over one input
  (thousands of guarded runs through the same kernel).

Usage::

    python benchmarks/bench_jit.py [--bound N] [--repeats N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _child(bound: int, repeats: int) -> dict:
    from attract import _accel
    from attract.corpus import get_subject
    from attract.engine import Model
    from attract.explorer import reference_run
    from attract.report import CampaignConfig, run_campaign

    demo = get_subject("demo")
    reference_run(demo, 100, 10**6)  # warm up (JIT compile / import cost)

    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        reference_run(demo, bound, 10 * bound)
        best = min(best, time.perf_counter() - started)

    started = time.perf_counter()
    report = run_campaign(CampaignConfig("md5", Model.PONE, seed=3, n_inputs=1))
    campaign_seconds = time.perf_counter() - started

    return {
        "jit": _accel.JIT_ENABLED,
        "hook_rate": bound / best,
        "campaign_seconds": campaign_seconds,
        "campaign_runs": report.space_size,
    }


def _run_mode(jit: str, bound: int, repeats: int) -> dict:
    env = dict(os.environ, ATTRACT_JIT=jit)
    proc = subprocess.run(
        [sys.executable, __file__, "--child", "--bound", str(bound), "--repeats", str(repeats)],
        capture_output=True,
        env=env,
        check=True,
    )
    result = json.loads(proc.stdout)
    assert result["jit"] == (jit == "1"), "subprocess picked the wrong accelerator"
    return result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bound", type=int, default=300_000, help="demo loop bound")
    parser.add_argument("--repeats", type=int, default=3, help="best-of repeats")
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child:
        json.dump(_child(args.bound, args.repeats), sys.stdout)
        return 0

    jit = _run_mode("1", args.bound, args.repeats)
    plain = _run_mode("0", args.bound, args.repeats)

    runs = jit["campaign_runs"]
    print(f"hook throughput ({args.bound} hooks/run, best of {args.repeats}):")
    print(f"  numba JIT    {jit['hook_rate'] / 1e6:8.2f} M hooks/s")
    print(f"  pure Python  {plain['hook_rate'] / 1e6:8.2f} M hooks/s")
    print(f"  speedup      {jit['hook_rate'] / plain['hook_rate']:8.1f}x")
    print(f"md5 +1 campaign ({runs} perturbed runs):")
    print(f"  numba JIT    {jit['campaign_seconds']:8.2f} s")
    print(f"  pure Python  {plain['campaign_seconds']:8.2f} s")
    print(f"  speedup      {plain['campaign_seconds'] / jit['campaign_seconds']:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
