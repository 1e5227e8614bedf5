"""Exploration semantics: spaces, determinism, budgets, failure handling."""

import numpy as np
import pytest

from attract.corpus import get_subject
from attract.corpus.base import Subject
from attract.engine import Model, Point, PointKind, SubjectFault, p_int
from attract.explorer import (
    BudgetPolicy,
    ReferenceRunError,
    explore,
    perturbed_run,
    reference_run,
)


def test_budget_policy_scales_with_floor():
    policy = BudgetPolicy(factor=100, floor=1_000_000)
    assert policy.for_reference_total(5) == 1_000_000  # floor wins
    assert policy.for_reference_total(50_000) == 5_000_000  # factor wins


def test_demo_reference_counts_match_bounds():
    demo = get_subject("demo")
    for bound in (0, 1, 8, 17):
        counts, output = reference_run(demo, bound, 10**6)
        assert counts[0] == bound  # the hook sits in a loop of `bound` turns


def test_demo_space_is_sum_of_bounds():
    demo = get_subject("demo")
    inputs = list(range(10))
    result = explore(demo, Model.PONE, inputs)
    assert result.space_size == sum(inputs) == 45
    assert result.total_runs == 45
    t = result.tallies[0]
    assert t.success + t.oracle_broken + t.exception == t.execs == 45


def test_exploration_is_deterministic():
    md5 = get_subject("md5")
    inputs = md5.generate_inputs(7, 2)
    a = explore(md5, Model.PONE, inputs)
    b = explore(md5, Model.PONE, inputs)
    assert a.tallies == b.tallies
    assert np.array_equal(a.ref.counts, b.ref.counts)


def test_worker_pool_matches_sequential_exploration():
    md5 = get_subject("md5")
    inputs = md5.generate_inputs(3, 2)
    seq = explore(md5, Model.PONE, inputs, jobs=1)
    par = explore(md5, Model.PONE, inputs, jobs=3)
    assert seq.tallies == par.tallies
    assert seq.space_size == par.space_size


def test_explore_leaves_inputs_untouched():
    # Adapters must deep-copy before mutating, or concurrent perturbed
    # runs would corrupt each other's inputs.
    qs = get_subject("quicksort")
    inputs = qs.generate_inputs(5, 1)
    snapshot = [arr.copy() for arr in inputs]
    explore(qs, Model.PBOOL, inputs)
    for before, after in zip(snapshot, inputs):
        assert np.array_equal(before, after)


def test_perturbed_run_categories_on_demo():
    demo = get_subject("demo")
    point = demo.points[0]
    # bound=8: the first three occurrences all tolerate +1 (output stays 3)
    for occ in (0, 1, 2):
        category, outcome = perturbed_run(demo, 8, point, occ, Model.PONE, 10**6)
        assert category == "success"
        assert outcome.value == 3
    # bound=3 at occurrence 0 collapses the output to 1
    category, outcome = perturbed_run(demo, 3, point, 0, Model.PONE, 10**6)
    assert category == "oracle_broken"
    assert outcome.value == 1


def test_perturbed_run_exception_on_lcs_dimension():
    lcs = get_subject("lcs")
    point = lcs.find_point("row dimension 'a.length() + 1'")
    pair = lcs.generate_inputs(0, 1)[0]
    category, outcome = perturbed_run(lcs, pair, point, 0, Model.MONE, 10**7)
    assert category == "exception"
    assert not outcome.is_output


def test_identity_outputs_match_reference_everywhere():
    zips = get_subject("zip")
    data = zips.generate_inputs(11, 1)[0]
    counts, ref_output = reference_run(zips, data, 10**8)
    for point in zips.points:
        for occ in range(int(counts[point.point_id])):
            category, outcome = perturbed_run(
                zips, data, point, occ, Model.IDENTITY, 10**8
            )
            assert category == "success"
            assert np.array_equal(outcome.value, ref_output)


def _one_point_subject(run, oracle=lambda x, out: True):
    return Subject(
        name="fake",
        title="crafted failure subject",
        points=(Point(0, PointKind.INT, "only point"),),
        run=run,
        oracle=oracle,
        generate_inputs=lambda seed, count: list(range(count)),
        input_repr=str,
    )


def test_crashing_reference_aborts_the_campaign():
    def run(value, state):
        raise SubjectFault("broken on every input")

    subject = _one_point_subject(run)
    with pytest.raises(ReferenceRunError):
        explore(subject, Model.PONE, [1, 2])


def test_oracle_rejecting_reference_aborts_the_campaign():
    def run(value, state):
        p_int(state.buf, 0, value)
        return value

    subject = _one_point_subject(run, oracle=lambda x, out: False)
    with pytest.raises(ReferenceRunError):
        explore(subject, Model.PONE, [1])


def test_budget_exceeded_is_counted_inside_exceptions():
    # Latch the limit once, then count *away* from it whenever either
    # occurrence is nudged: the loop only makes progress through its
    # hooked test, so the step budget is what ends the run.
    def run(value, state):
        limit = p_int(state.buf, 0, value)
        i = 0
        while p_int(state.buf, 0, i) != limit:
            i -= 1
        return 0

    subject = _one_point_subject(run)
    result = explore(
        subject,
        Model.PONE,
        [0],
        policy=BudgetPolicy(factor=10, floor=100, reference_budget=10**6),
    )
    t = result.tallies[0]
    assert t.execs == 2  # latch occurrence + one loop test
    assert t.exception == 2
    assert t.budget_exceeded == 2


def test_explore_requires_inputs():
    with pytest.raises(ValueError):
        explore(get_subject("demo"), Model.PONE, [])
