"""Perturbation models and the expression kinds they apply to.

A perturbation model is a tiny pure function applied to the value of one
expression evaluation.  Integer models operate on 32-bit two's-complement
semantics: incrementing INT32_MAX wraps to INT32_MIN, exactly like the
``int`` type of the JVM-style programs the corpus mirrors.
"""

from __future__ import annotations

import dataclasses
import enum

INT32_MIN = -(1 << 31)
INT32_MAX = (1 << 31) - 1
_M32 = (1 << 32) - 1
_B31 = 1 << 31


class PointKind(enum.Enum):
    """Static type of a hooked expression."""

    INT = "int"
    BOOL = "bool"


class Model(enum.Enum):
    """One-shot perturbation models.

    IDENTITY applies to both kinds and never changes the value; it exists
    so that a campaign can sweep the whole perturbation space and prove the
    instrumentation itself is transparent.
    """

    IDENTITY = "identity"
    PONE = "pone"
    MONE = "mone"
    PZERO = "pzero"
    PBOOL = "pbool"

    @property
    def code(self) -> int:
        """Stable integer id used inside the controller buffer."""
        return _MODEL_CODES[self]

    @property
    def kind(self) -> PointKind | None:
        """Kind this model applies to; None means both kinds."""
        if self is Model.IDENTITY:
            return None
        if self is Model.PBOOL:
            return PointKind.BOOL
        return PointKind.INT

    def applies_to(self, kind: PointKind) -> bool:
        return self.kind is None or self.kind is kind


_MODEL_CODES = {
    Model.IDENTITY: 0,
    Model.PONE: 1,
    Model.MONE: 2,
    Model.PZERO: 3,
    Model.PBOOL: 4,
}


@dataclasses.dataclass(frozen=True)
class Point:
    """One hooked expression in a subject.

    ``point_id`` values are dense (0..N-1) within a subject and appear as
    literal first arguments of the hook calls in the subject's kernel, in
    source order.  ``label`` describes the expression for reports.
    """

    point_id: int
    kind: PointKind
    label: str

    def __post_init__(self):
        if self.point_id < 0:
            raise ValueError("point ids must be non-negative")


def wrap32(value: int) -> int:
    """Reduce an integer into [INT32_MIN, INT32_MAX] two's-complement."""
    return ((value + _B31) & _M32) - _B31


def apply_model(model: Model, value):
    """Apply one perturbation model to one expression value.

    Integer models return a wrapped 32-bit result; PBOOL negates.  The
    caller is responsible for only pairing models with values of the
    matching kind (plans enforce this at construction).
    """
    if model is Model.IDENTITY:
        return value
    if model is Model.PONE:
        return wrap32(value + 1)
    if model is Model.MONE:
        return wrap32(value - 1)
    if model is Model.PZERO:
        return 0
    if model is Model.PBOOL:
        return not value
    raise ValueError(f"unknown model: {model!r}")
