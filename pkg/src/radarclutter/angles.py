"""Angle arithmetic and wrapped angular intervals.

All angles are radians. The canonical range for directions is the
half-open interval [-pi, pi), counterclockwise positive. Surface
orientations live in [-pi/2, pi/2) because a line has no front/back.

Angular sets (used to bound feasible object headings) are represented
as unions of at most a few ``AngleInterval`` objects; intersections are
computed piecewise after splitting every interval at the -pi/pi seam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

TWO_PI = 2.0 * math.pi

_EPS = 1e-12


def wrap_angle(theta: float) -> float:
    """Wrap ``theta`` into [-pi, pi).

    Raises ValueError for non-finite input.
    """
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    return (theta + math.pi) % TWO_PI - math.pi


def fold_orientation(theta: float) -> float:
    """Fold a line direction into [-pi/2, pi/2); theta and theta+pi are the same line."""
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    return (theta + math.pi / 2.0) % math.pi - math.pi / 2.0


def angle_diff(a: float, b: float) -> float:
    """Signed difference a - b wrapped into [-pi, pi)."""
    return wrap_angle(a - b)


@dataclass(frozen=True)
class AngleInterval:
    """Counterclockwise sweep from ``lo`` to ``hi`` on the circle.

    ``hi >= lo`` always; the sweep width ``hi - lo`` is at most 2*pi.
    Endpoints are kept unwrapped so degenerate (width 0) intervals and
    intervals straddling the -pi/pi seam stay well defined.
    """

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if self.hi < self.lo:
            raise ValueError(f"hi < lo: [{self.lo}, {self.hi}]")
        if self.hi - self.lo > TWO_PI + _EPS:
            raise ValueError("interval sweep exceeds a full circle")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, theta: float, tol: float = 1e-12) -> bool:
        """True if the wrapped angle lies inside the sweep (inclusive)."""
        if self.width >= TWO_PI - _EPS:
            return True
        shifted = (theta - self.lo) % TWO_PI
        return shifted <= self.width + tol or shifted >= TWO_PI - tol

    def pieces(self) -> list[tuple[float, float]]:
        """Split into linear sub-intervals inside [-pi, pi]."""
        if self.width >= TWO_PI - _EPS:
            return [(-math.pi, math.pi)]
        lo = wrap_angle(self.lo)
        hi = lo + self.width
        if hi <= math.pi:
            return [(lo, hi)]
        return [(lo, math.pi), (-math.pi, hi - TWO_PI)]


def intersect_interval_sets(
    first: Sequence[AngleInterval], second: Sequence[AngleInterval]
) -> list[AngleInterval]:
    """Piecewise intersection of two unions of angular intervals.

    The result is a list of non-wrapping intervals inside [-pi, pi] and
    may contain degenerate (single point) members. Components that were
    split at the -pi/pi seam are not re-merged; callers that only need
    endpoint extremes of a function continuous across the seam are
    unaffected by the split.
    """
    out: list[AngleInterval] = []
    for a in first:
        for a_lo, a_hi in a.pieces():
            for b in second:
                for b_lo, b_hi in b.pieces():
                    lo = max(a_lo, b_lo)
                    hi = min(a_hi, b_hi)
                    if hi >= lo - _EPS:
                        out.append(AngleInterval(lo, max(lo, hi)))
    return out
