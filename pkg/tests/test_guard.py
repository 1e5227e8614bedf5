"""The fault boundary: subject failures become classified outcomes."""

import pytest

from attract.engine import (
    BudgetExceeded,
    ControllerState,
    HookConfigError,
    OutcomeKind,
    PerturbationPlan,
    SubjectFault,
    p_int,
    run_guarded,
)


def make_state(budget=100):
    return ControllerState(PerturbationPlan.counting(), 1, budget)


def test_normal_completion_is_an_output():
    outcome = run_guarded(lambda value, state: value * 2, 21, make_state())
    assert outcome.is_output
    assert outcome.kind is OutcomeKind.OUTPUT
    assert outcome.value == 42
    assert outcome.error == ""


def test_index_error_becomes_runtime_error():
    def run(value, state):
        return [1, 2, 3][value]

    outcome = run_guarded(run, 5, make_state())
    assert outcome.kind is OutcomeKind.RUNTIME_ERROR
    assert not outcome.is_output
    assert outcome.value is None
    assert outcome.error.startswith("IndexError")


def test_division_by_zero_becomes_runtime_error():
    outcome = run_guarded(lambda v, s: 1 // v, 0, make_state())
    assert outcome.kind is OutcomeKind.RUNTIME_ERROR
    assert outcome.error.startswith("ZeroDivisionError")


def test_subject_fault_becomes_runtime_error():
    def run(value, state):
        raise SubjectFault("unsolvable board")

    outcome = run_guarded(run, None, make_state())
    assert outcome.kind is OutcomeKind.RUNTIME_ERROR
    assert "unsolvable board" in outcome.error


def test_budget_trip_is_its_own_outcome():
    state = make_state(budget=3)

    def run(value, state_):
        while True:
            p_int(state_.buf, 0, 0)

    outcome = run_guarded(run, None, state)
    assert outcome.kind is OutcomeKind.BUDGET_EXCEEDED
    assert not outcome.is_output
    assert outcome.value is None


def test_hook_config_error_escapes_the_guard():
    def run(value, state_):
        p_int(state_.buf, 7, 0)  # unregistered point id

    with pytest.raises(HookConfigError):
        run_guarded(run, None, make_state())


def test_interpreter_interrupts_escape_the_guard():
    def run(value, state):
        raise KeyboardInterrupt

    with pytest.raises(KeyboardInterrupt):
        run_guarded(run, None, make_state())


def test_outcome_factories_are_exclusive():
    out = run_guarded(lambda v, s: v, 1, make_state())
    assert (out.kind is OutcomeKind.OUTPUT) == out.is_output
    err = run_guarded(lambda v, s: 1 // 0, 1, make_state())
    assert err.value is None and err.error
    trip = run_guarded(
        lambda v, s: (_ for _ in ()).throw(BudgetExceeded("x")), 1, make_state()
    )
    assert trip.kind is OutcomeKind.BUDGET_EXCEEDED
