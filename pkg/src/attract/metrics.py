"""Correctness-attraction metrics, computed exactly.

All ratios are ``fractions.Fraction`` so that classification boundaries
(phi exactly 1, exactly 0, exactly 3/4) never depend on float rounding,
and so the campaign-level ratio can be checked against the weighted mean
of per-point ratios with zero tolerance.
"""

from __future__ import annotations

import dataclasses
import enum
from fractions import Fraction
from typing import Sequence

HISTOGRAM_BINS = 20


class Classification(enum.Enum):
    ANTIFRAGILE = "antifragile"
    ROBUST = "robust"
    INTERMEDIATE = "intermediate"
    FRAGILE = "fragile"
    UNEXECUTED = "unexecuted"


def classify(phi, execs: int) -> Classification:
    """Classify one point from its success ratio.

    phi == 1 -> antifragile, phi == 0 -> fragile, 0.75 <= phi < 1 ->
    robust, otherwise intermediate; points that never executed are
    unexecuted (phi is undefined there).
    """
    if execs == 0:
        return Classification.UNEXECUTED
    phi = Fraction(phi)
    if phi == 1:
        return Classification.ANTIFRAGILE
    if phi == 0:
        return Classification.FRAGILE
    if phi >= Fraction(3, 4):
        return Classification.ROBUST
    return Classification.INTERMEDIATE


@dataclasses.dataclass(frozen=True)
class PointStats:
    """Ratios and classification for one point's tally."""

    point_id: int
    execs: int
    success: int
    oracle_broken: int
    exception: int
    budget_exceeded: int
    phi: Fraction | None
    chi: Fraction | None
    xi: Fraction | None
    classification: Classification

    @property
    def phi_percent(self) -> int | None:
        """Success ratio as a truncated integer percentage."""
        if self.phi is None:
            return None
        return (self.phi.numerator * 100) // self.phi.denominator


def point_stats(tally) -> PointStats:
    """Build PointStats from anything carrying the five tally counters."""
    point_id = int(tally.point_id)
    execs = int(tally.execs)
    s = int(tally.success)
    ob = int(tally.oracle_broken)
    exc = int(tally.exception)
    be = int(tally.budget_exceeded)
    for name, v in (
        ("execs", execs),
        ("success", s),
        ("oracle_broken", ob),
        ("exception", exc),
        ("budget_exceeded", be),
    ):
        if v < 0:
            raise ValueError(f"negative counter {name}={v} at point {point_id}")
    if s + ob + exc != execs:
        raise ValueError(
            f"counters do not partition execs at point {point_id}: "
            f"{s}+{ob}+{exc} != {execs}"
        )
    if be > exc:
        raise ValueError(f"budget_exceeded > exception at point {point_id}")
    if execs == 0:
        phi = chi = xi = None
    else:
        phi = Fraction(s, execs)
        chi = Fraction(ob, execs)
        xi = Fraction(exc, execs)
    return PointStats(
        point_id=point_id,
        execs=execs,
        success=s,
        oracle_broken=ob,
        exception=exc,
        budget_exceeded=be,
        phi=phi,
        chi=chi,
        xi=xi,
        classification=classify(phi, execs),
    )


@dataclasses.dataclass(frozen=True)
class CampaignSummary:
    """Aggregate view over a set of per-point stats."""

    space_size: int
    omega: int  # total successful perturbed runs
    phi_global: Fraction
    class_counts: dict
    histogram: tuple  # HISTOGRAM_BINS counts of executed points by phi


def histogram_bin(phi: Fraction) -> int:
    """Map phi in [0, 1] to one of the equal-width bins; 1 lands in the
    last bin (its upper edge is inclusive)."""
    if phi < 0 or phi > 1:
        raise ValueError(f"phi outside [0, 1]: {phi}")
    b = int(phi * HISTOGRAM_BINS)
    return min(b, HISTOGRAM_BINS - 1)


def aggregate(stats: Sequence[PointStats]) -> CampaignSummary:
    """Fold per-point stats into campaign totals.

    The campaign ratio is computed two ways, from raw counters and as the
    execs-weighted mean of per-point ratios, and both must agree exactly.
    """
    if not stats:
        raise ValueError("cannot aggregate an empty campaign")
    space = sum(st.execs for st in stats)
    if space == 0:
        raise ValueError("cannot aggregate a campaign in which nothing executed")
    omega = sum(st.success for st in stats)
    phi_global = Fraction(omega, space)
    weighted = sum(
        (st.phi * st.execs for st in stats if st.execs > 0), start=Fraction(0)
    ) / space
    if weighted != phi_global:
        raise AssertionError(
            f"aggregate ratio mismatch: {phi_global} vs weighted mean {weighted}"
        )
    class_counts = {c: 0 for c in Classification}
    for st in stats:
        class_counts[st.classification] += 1
    bins = [0] * HISTOGRAM_BINS
    for st in stats:
        if st.execs > 0:
            bins[histogram_bin(st.phi)] += 1
    return CampaignSummary(
        space_size=space,
        omega=omega,
        phi_global=phi_global,
        class_counts=class_counts,
        histogram=tuple(bins),
    )
