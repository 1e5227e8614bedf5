"""Outcome classification for a single guarded execution."""

from __future__ import annotations

import dataclasses
import enum
from typing import Any, Callable

from .controller import ControllerState
from .errors import BudgetExceeded, HookConfigError


class OutcomeKind(enum.Enum):
    OUTPUT = "output"
    RUNTIME_ERROR = "runtime_error"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclasses.dataclass(frozen=True)
class ExecutionOutcome:
    """Exactly one of: a produced output, a crash, or a budget trip."""

    kind: OutcomeKind
    value: Any = None
    error: str = ""

    @classmethod
    def output(cls, value) -> "ExecutionOutcome":
        return cls(OutcomeKind.OUTPUT, value=value)

    @classmethod
    def runtime_error(cls, description: str) -> "ExecutionOutcome":
        return cls(OutcomeKind.RUNTIME_ERROR, error=description)

    @classmethod
    def budget_exceeded(cls) -> "ExecutionOutcome":
        return cls(OutcomeKind.BUDGET_EXCEEDED, error="step budget exhausted")

    @property
    def is_output(self) -> bool:
        return self.kind is OutcomeKind.OUTPUT


def run_guarded(
    run: Callable[[Any, ControllerState], Any],
    input_value: Any,
    state: ControllerState,
) -> ExecutionOutcome:
    """Execute ``run`` and fold every failure mode into an outcome.

    Subject crashes (IndexError, ZeroDivisionError, overflow guards,
    explicit subject faults...) become RUNTIME_ERROR; a budget trip
    becomes BUDGET_EXCEEDED.  Instrumentation bugs (HookConfigError) and
    interpreter-level interrupts propagate, because they invalidate the
    campaign rather than the run.
    """
    try:
        value = run(input_value, state)
    except BudgetExceeded:
        return ExecutionOutcome.budget_exceeded()
    except HookConfigError:
        raise
    except Exception as exc:
        return ExecutionOutcome.runtime_error(f"{type(exc).__name__}: {exc}")
    return ExecutionOutcome.output(value)
