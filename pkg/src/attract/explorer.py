"""Exhaustive exploration of a subject's perturbation space.

For each input a counting reference run measures how often every hooked
expression is evaluated; that matrix *is* the exploration space.  The
explorer then replays the subject once per (input, point, occurrence)
triple with the chosen model firing exactly once, judges each output with
the subject's oracle, and tallies outcomes per point.

Reference runs are authoritative: if one crashes, trips the budget, or
produces output the oracle rejects, the campaign is aborted with
ReferenceRunError rather than explored around.
"""

from __future__ import annotations

import dataclasses
import multiprocessing
from typing import Any, Callable, Sequence

import numpy as np

from .corpus.base import Subject
from .engine import (
    ControllerState,
    Model,
    OutcomeKind,
    PerturbationPlan,
    Point,
    ReferenceRunError,
    run_guarded,
)


@dataclasses.dataclass(frozen=True)
class BudgetPolicy:
    """How many hook invocations a single run may spend.

    A perturbed run gets ``factor`` times the reference run's total hook
    count for that input, but never less than ``floor``; reference runs
    themselves get the large fixed ``reference_budget``.
    """

    factor: int = 100
    floor: int = 1_000_000
    reference_budget: int = 200_000_000

    def for_reference_total(self, total_hooks: int) -> int:
        return max(self.factor * total_hooks, self.floor)


@dataclasses.dataclass
class ReferenceCounts:
    """Occurrence counts per (point, input), plus reference outputs."""

    counts: np.ndarray  # shape (n_points, n_inputs), int64
    outputs: list
    budgets: list  # per-input budget for perturbed runs

    def occurrences(self, point_id: int, input_index: int) -> int:
        return int(self.counts[point_id, input_index])

    def space_size(self, points: Sequence[Point]) -> int:
        if not points:
            return 0
        ids = [p.point_id for p in points]
        return int(self.counts[ids, :].sum())


@dataclasses.dataclass
class PointTally:
    """Outcome counters for one perturbation point.

    ``budget_exceeded`` counts runs that were stopped by the step budget;
    those runs are also included in ``exception``.
    """

    point_id: int
    execs: int = 0
    success: int = 0
    oracle_broken: int = 0
    exception: int = 0
    budget_exceeded: int = 0

    def add(self, success: int, oracle_broken: int, exception: int, budget_exceeded: int):
        self.execs += success + oracle_broken + exception
        self.success += success
        self.oracle_broken += oracle_broken
        self.exception += exception
        self.budget_exceeded += budget_exceeded

    def check(self):
        if self.success + self.oracle_broken + self.exception != self.execs:
            raise AssertionError(f"tally partition broken at point {self.point_id}")
        if self.budget_exceeded > self.exception:
            raise AssertionError(f"budget flag exceeds exceptions at point {self.point_id}")


@dataclasses.dataclass
class ExplorationResult:
    subject_name: str
    model: Model
    n_inputs: int
    ref: ReferenceCounts
    tallies: list  # PointTally per point id, dense
    space_size: int
    total_runs: int


def reference_run(subject: Subject, input_value, budget: int):
    """Counting run: returns (per-point counts row, output).

    Raises ReferenceRunError on crash or budget trip, because an input
    whose unperturbed execution fails cannot anchor an exploration.
    """
    state = ControllerState(PerturbationPlan.counting(), len(subject.points), budget)
    outcome = run_guarded(subject.run, input_value, state)
    if not outcome.is_output:
        raise ReferenceRunError(
            f"reference run failed for subject {subject.name!r} "
            f"on input {subject.input_repr(input_value)}: {outcome.error}"
        )
    return state.counts, outcome.value


def perturbed_run(
    subject: Subject,
    input_value,
    point: Point,
    occurrence: int,
    model: Model,
    budget: int,
    oracle: Callable[[Any, Any], bool] | None = None,
):
    """One perturbed execution, judged.  Returns (category, outcome).

    category is one of "success", "oracle_broken", "exception",
    "budget_exceeded"; the last is the subset of exceptions stopped by
    the step budget.
    """
    oracle = oracle or subject.oracle
    plan = PerturbationPlan.perturbing(point, occurrence, model)
    state = ControllerState(plan, len(subject.points), budget)
    outcome = run_guarded(subject.run, input_value, state)
    if outcome.is_output:
        if oracle(input_value, outcome.value):
            return "success", outcome
        return "oracle_broken", outcome
    if outcome.kind is OutcomeKind.BUDGET_EXCEEDED:
        return "budget_exceeded", outcome
    return "exception", outcome


def _explore_task(subject, input_value, point, n_occurrences, model, budget, oracle):
    """Explore every occurrence of one point on one input."""
    s = ob = exc = be = 0
    for j in range(n_occurrences):
        category, _ = perturbed_run(subject, input_value, point, j, model, budget, oracle)
        if category == "success":
            s += 1
        elif category == "oracle_broken":
            ob += 1
        elif category == "budget_exceeded":
            exc += 1
            be += 1
        else:
            exc += 1
    return s, ob, exc, be


# Worker context for forked pools; set in the parent right before fork so
# children inherit it without pickling subjects or jitted kernels.
_WORKER_CTX = None


def _run_worker_task(task):
    input_index, point_id = task
    subject, model, inputs, ref = _WORKER_CTX
    point = subject.points[point_id]
    n_occ = ref.occurrences(point_id, input_index)
    budget = ref.budgets[input_index]
    s, ob, exc, be = _explore_task(
        subject, inputs[input_index], point, n_occ, model, budget, subject.oracle
    )
    return point_id, s, ob, exc, be


def explore(
    subject: Subject,
    model: Model,
    inputs: Sequence,
    oracle: Callable[[Any, Any], bool] | None = None,
    *,
    policy: BudgetPolicy = BudgetPolicy(),
    jobs: int = 1,
) -> ExplorationResult:
    """Run the full campaign for one subject/model over the given inputs."""
    global _WORKER_CTX
    if not inputs:
        raise ValueError("explore() needs at least one input")
    oracle = oracle or subject.oracle
    n_points = len(subject.points)

    # Reference pass: counts matrix, outputs, oracle sanity, budgets.
    counts = np.zeros((n_points, len(inputs)), dtype=np.int64)
    outputs = []
    budgets = []
    for i, input_value in enumerate(inputs):
        row, output = reference_run(subject, input_value, policy.reference_budget)
        if not oracle(input_value, output):
            raise ReferenceRunError(
                f"oracle rejected the unperturbed output of subject "
                f"{subject.name!r} on input {subject.input_repr(input_value)}"
            )
        counts[:, i] = row
        outputs.append(output)
        budgets.append(policy.for_reference_total(int(row.sum())))
    ref = ReferenceCounts(counts=counts, outputs=outputs, budgets=budgets)

    matching = [p for p in subject.points if model.applies_to(p.kind)]
    space = ref.space_size(matching)

    # Deterministic task order: input index, then point id; occurrences
    # iterate inside the task.
    tasks = [
        (i, p.point_id)
        for i in range(len(inputs))
        for p in matching
        if ref.occurrences(p.point_id, i) > 0
    ]

    tallies = [PointTally(point_id=p.point_id) for p in subject.points]

    if jobs > 1 and len(tasks) > 1:
        _WORKER_CTX = (subject, model, inputs, ref)
        ctx = multiprocessing.get_context("fork")
        chunk = max(1, len(tasks) // (jobs * 4))
        with ctx.Pool(processes=jobs) as pool:
            results = pool.map(_run_worker_task, tasks, chunksize=chunk)
        _WORKER_CTX = None
        for point_id, s, ob, exc, be in results:
            tallies[point_id].add(s, ob, exc, be)
    else:
        for i, point_id in tasks:
            point = subject.points[point_id]
            n_occ = ref.occurrences(point_id, i)
            s, ob, exc, be = _explore_task(
                subject, inputs[i], point, n_occ, model, budgets[i], oracle
            )
            tallies[point_id].add(s, ob, exc, be)

    for tally in tallies:
        tally.check()
    total_runs = sum(t.execs for t in tallies)
    if total_runs != space:
        raise AssertionError(
            f"exploration incomplete: ran {total_runs} of {space} perturbations"
        )
    return ExplorationResult(
        subject_name=subject.name,
        model=model,
        n_inputs=len(inputs),
        ref=ref,
        tallies=tallies,
        space_size=space,
        total_runs=total_runs,
    )
