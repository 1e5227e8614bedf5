"""Exhaustive one-shot runtime perturbation campaigns with perfect oracles.

The package instruments small programs with value hooks, exhaustively
perturbs every (input, point, occurrence) triple once, judges each run
with a subject-specific perfect oracle, and reports how often the
perturbed executions still produce correct output.
"""

__version__ = "0.1.0"

from .engine import Model, Point, PointKind, apply_model, wrap32
from .explorer import BudgetPolicy, explore, perturbed_run, reference_run
from .metrics import Classification, aggregate, classify, point_stats

__all__ = [
    "__version__",
    "Model",
    "Point",
    "PointKind",
    "apply_model",
    "wrap32",
    "BudgetPolicy",
    "explore",
    "perturbed_run",
    "reference_run",
    "Classification",
    "aggregate",
    "classify",
    "point_stats",
]
