"""Controller buffer: the mutable state one execution threads through hooks.

The state lives in a single int64 array so jitted kernels can use it
directly.  Layout::

    [0] MODE      0 = counting, 1 = perturbing
    [1] TARGET    point id to perturb (perturbing mode)
    [2] OCC       0-based occurrence index at which to fire
    [3] MODEL     model code (see models.Model.code)
    [4] FIRED     becomes 1 once the single shot has been delivered
    [5] BUDGET    remaining hook invocations before BudgetExceeded
    [6..7]        reserved
    [8..]         per-point invocation counters, indexed by point id

Counters always run, in both modes; they are how occurrence indices are
defined and how reference runs measure the exploration space.
"""

from __future__ import annotations

import dataclasses
import enum

import numpy as np

from .models import Model, Point

MODE = 0
TARGET = 1
OCC = 2
MODEL = 3
FIRED = 4
BUDGET = 5
HDR = 8


class Mode(enum.Enum):
    COUNTING = 0
    PERTURBING = 1


@dataclasses.dataclass(frozen=True)
class PerturbationPlan:
    """What (if anything) to perturb during one execution.

    Build plans with :meth:`counting` or :meth:`perturbing`; the latter
    validates that the model applies to the target point's kind.
    """

    mode: Mode
    target: Point | None = None
    occurrence: int = 0
    model: Model = Model.IDENTITY

    @classmethod
    def counting(cls) -> "PerturbationPlan":
        """A reference run: count hook invocations, change nothing."""
        return cls(mode=Mode.COUNTING)

    @classmethod
    def perturbing(cls, target: Point, occurrence: int, model: Model) -> "PerturbationPlan":
        if occurrence < 0:
            raise ValueError("occurrence index must be >= 0")
        if not model.applies_to(target.kind):
            raise ValueError(
                f"model {model.value} does not apply to {target.kind.value} "
                f"point {target.point_id} ({target.label})"
            )
        return cls(mode=Mode.PERTURBING, target=target, occurrence=occurrence, model=model)


class ControllerState:
    """Owns the buffer for one execution and decodes it afterwards."""

    __slots__ = ("plan", "n_points", "step_budget", "buf")

    def __init__(self, plan: PerturbationPlan, n_points: int, step_budget: int):
        if n_points <= 0:
            raise ValueError("a subject must register at least one point")
        if step_budget <= 0:
            raise ValueError("step budget must be positive")
        if plan.mode is Mode.PERTURBING and plan.target.point_id >= n_points:
            raise ValueError("plan targets a point id outside this subject")
        self.plan = plan
        self.n_points = n_points
        self.step_budget = step_budget
        buf = np.zeros(HDR + n_points, dtype=np.int64)
        buf[MODE] = plan.mode.value
        if plan.mode is Mode.PERTURBING:
            buf[TARGET] = plan.target.point_id
            buf[OCC] = plan.occurrence
            buf[MODEL] = plan.model.code
        buf[BUDGET] = step_budget
        self.buf = buf

    @property
    def counts(self) -> np.ndarray:
        """Per-point invocation counters (a copy, safe to keep)."""
        return self.buf[HDR:].copy()

    @property
    def fired(self) -> bool:
        return bool(self.buf[FIRED])

    @property
    def steps_used(self) -> int:
        return int(self.step_budget - self.buf[BUDGET])
