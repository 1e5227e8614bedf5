"""Subject descriptors and shared corpus helpers.

A subject bundles an instrumented program (``run``), its perfect oracle,
the registered perturbation points, and a deterministic input generator.
Input generation is a pure function of (seed, index): regenerating with
the same seed always yields the same inputs, which is what makes report
files reproducible from their config echo alone.
"""

from __future__ import annotations

import dataclasses
from importlib import resources
from typing import Any, Callable, Sequence

import numpy as np

from ..engine import Point, PointKind


def _default_input_repr(value) -> str:
    text = repr(value)
    if len(text) > 120:
        text = text[:117] + "..."
    return text


@dataclasses.dataclass(frozen=True)
class Subject:
    """One instrumented program with its oracle and input generator."""

    name: str
    title: str
    points: tuple
    run: Callable[[Any, Any], Any]  # (input, ControllerState) -> output
    oracle: Callable[[Any, Any], bool]  # (input, output) -> accepted?
    generate_inputs: Callable[[int, int], list]  # (seed, count) -> inputs
    input_repr: Callable[[Any], str] = _default_input_repr

    def __post_init__(self):
        ids = [p.point_id for p in self.points]
        if ids != list(range(len(ids))):
            raise ValueError(
                f"subject {self.name!r}: point ids must be dense 0..{len(ids) - 1}"
            )

    @property
    def n_points(self) -> int:
        return len(self.points)

    def points_of_kind(self, kind: PointKind) -> tuple:
        return tuple(p for p in self.points if p.kind is kind)

    @property
    def n_int_points(self) -> int:
        return len(self.points_of_kind(PointKind.INT))

    @property
    def n_bool_points(self) -> int:
        return len(self.points_of_kind(PointKind.BOOL))

    def point(self, point_id: int) -> Point:
        return self.points[point_id]

    def find_point(self, label_fragment: str) -> Point:
        """Look up the single point whose label contains the fragment."""
        hits = [p for p in self.points if label_fragment in p.label]
        if not hits:
            raise KeyError(f"{self.name}: no point labelled like {label_fragment!r}")
        if len(hits) > 1:
            raise KeyError(
                f"{self.name}: label fragment {label_fragment!r} is ambiguous: "
                + ", ".join(f"{p.point_id}:{p.label!r}" for p in hits)
            )
        return hits[0]


def int_point(point_id: int, label: str) -> Point:
    return Point(point_id, PointKind.INT, label)


def bool_point(point_id: int, label: str) -> Point:
    return Point(point_id, PointKind.BOOL, label)


def rng_for(seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible stream for one input slot."""
    return np.random.default_rng((seed, index))


def load_data_lines(filename: str) -> list:
    """Read a bundled data file, dropping blanks and '#' comment lines."""
    text = resources.files(__package__).joinpath("data", filename).read_text()
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines
