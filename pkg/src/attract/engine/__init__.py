"""Perturbation engine: models, controller state, hooks and the run guard."""

from .controller import BUDGET, FIRED, HDR, MODE, MODEL, OCC, TARGET
from .controller import ControllerState, Mode, PerturbationPlan
from .errors import BudgetExceeded, HookConfigError, ReferenceRunError, SubjectFault
from .guard import ExecutionOutcome, OutcomeKind, run_guarded
from .hooks import p_bool, p_int
from .models import INT32_MAX, INT32_MIN, Model, Point, PointKind, apply_model, wrap32

__all__ = [
    "BUDGET",
    "FIRED",
    "HDR",
    "MODE",
    "MODEL",
    "OCC",
    "TARGET",
    "ControllerState",
    "Mode",
    "PerturbationPlan",
    "BudgetExceeded",
    "HookConfigError",
    "ReferenceRunError",
    "SubjectFault",
    "ExecutionOutcome",
    "OutcomeKind",
    "run_guarded",
    "p_bool",
    "p_int",
    "INT32_MAX",
    "INT32_MIN",
    "Model",
    "Point",
    "PointKind",
    "apply_model",
    "wrap32",
]
