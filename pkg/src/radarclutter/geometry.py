"""Closed-form observables for direct and multipath propagation.

Propagation kinds follow the type-n m-bounce taxonomy: type-1 paths end
with a reflection at the target object, type-2 paths end at another
surface; the bounce count is the total number of reflections. Supported
kinds are the direct path (T1B1), both 2-bounce paths (T1B2, T2B2) and
the type-2 3-bounce path (T2B3).

Everything here is a pure function of sensor-frame geometry: reflection
surfaces are finite oriented segments, the sensor sits at the origin.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .angles import AngleInterval, fold_orientation, wrap_angle
from .types import EgoMotion, TargetMotion

Point = tuple[float, float]

DEFAULT_SEGMENT_SLACK_M = 0.5

# Feasible-velocity projection is meaningless when the denominator
# cos(gamma - alpha_o) gets close to zero; candidates this close to the
# tangential direction are reported as singular instead of clamped.
SINGULARITY_MARGIN_RAD = 0.05


class ProjectionSingularError(ValueError):
    """Velocity projection is singular on the supplied heading set."""


class PathKind(str, enum.Enum):
    T1B1 = "T1B1"
    T1B2 = "T1B2"
    T2B2 = "T2B2"
    T2B3 = "T2B3"


def _as_point(p: Sequence[float]) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"point must be finite, got {p!r}")
    return (x, y)


@dataclass(frozen=True)
class ReflectionSurface:
    """Oriented finite line segment standing in for a guardrail or wall."""

    p0: Point
    p1: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "p0", _as_point(self.p0))
        object.__setattr__(self, "p1", _as_point(self.p1))
        if self.length <= 0.5:
            raise ValueError(f"surface segment too short: {self.length:.3f} m")

    @cached_property
    def length(self) -> float:
        return math.hypot(self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])

    @cached_property
    def direction(self) -> Point:
        n = self.length
        return ((self.p1[0] - self.p0[0]) / n, (self.p1[1] - self.p0[1]) / n)

    @cached_property
    def normal(self) -> Point:
        dx, dy = self.direction
        return (-dy, dx)

    @cached_property
    def orientation_rad(self) -> float:
        """Line direction folded into [-pi/2, pi/2)."""
        dx, dy = self.direction
        return fold_orientation(math.atan2(dy, dx))

    def signed_offset(self, p: Sequence[float]) -> float:
        """Signed perpendicular distance of ``p`` from the segment's line."""
        nx, ny = self.normal
        return nx * (float(p[0]) - self.p0[0]) + ny * (float(p[1]) - self.p0[1])

    def param_of(self, p: Sequence[float]) -> float:
        """Distance of the projection of ``p`` along the segment from p0."""
        dx, dy = self.direction
        return dx * (float(p[0]) - self.p0[0]) + dy * (float(p[1]) - self.p0[1])

    def point_at(self, s: float) -> Point:
        dx, dy = self.direction
        return (self.p0[0] + s * dx, self.p0[1] + s * dy)

    def transformed(self, rotation_rad: float, translation: Sequence[float]) -> "ReflectionSurface":
        """Rigidly transform the segment: p' = R(rotation) p + translation."""
        c, s = math.cos(rotation_rad), math.sin(rotation_rad)
        tx, ty = float(translation[0]), float(translation[1])

        def tf(p: Point) -> Point:
            return (c * p[0] - s * p[1] + tx, s * p[0] + c * p[1] + ty)

        return ReflectionSurface(tf(self.p0), tf(self.p1))


@dataclass(frozen=True)
class PathObservables:
    """Range, azimuth and radial velocities measured for one path."""

    d: float
    alpha: float
    v_rel: float
    v_abs: float
    kind: PathKind


@dataclass(frozen=True)
class MirrorGeometry:
    """Sensor-object-surface constellation for one multipath hypothesis.

    ``o_vec`` points from the sensor to the reflection point on the
    object, ``r_vec`` to the reflection point on the surface, ``omega``
    is the surface's orientation.
    """

    o_vec: Point
    r_vec: Point
    omega: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "o_vec", _as_point(self.o_vec))
        object.__setattr__(self, "r_vec", _as_point(self.r_vec))
        if self.o == 0.0:
            raise ValueError("object vector has zero length")
        if self.r == 0.0:
            raise ValueError("surface reflection vector has zero length")
        if self.o_minus_r == 0.0:
            raise ValueError("object and surface reflection points coincide")

    @classmethod
    def from_surface(
        cls, o_vec: Sequence[float], r_point: Sequence[float], surface: ReflectionSurface
    ) -> "MirrorGeometry":
        return cls(_as_point(o_vec), _as_point(r_point), surface.orientation_rad)

    @cached_property
    def o(self) -> float:
        return math.hypot(*self.o_vec)

    @cached_property
    def r(self) -> float:
        return math.hypot(*self.r_vec)

    @cached_property
    def o_minus_r(self) -> float:
        return math.hypot(self.o_vec[0] - self.r_vec[0], self.o_vec[1] - self.r_vec[1])

    @cached_property
    def alpha_o(self) -> float:
        return math.atan2(self.o_vec[1], self.o_vec[0])

    @cached_property
    def alpha_r(self) -> float:
        return math.atan2(self.r_vec[1], self.r_vec[0])

    @cached_property
    def mirrored_dir_rad(self) -> float:
        """Direction the signal travels from the surface towards the object."""
        return mirrored_direction(self.alpha_r, self.omega)

    @cached_property
    def reflection_angle_rad(self) -> float:
        return wrap_angle(math.pi / 2.0 + self.alpha_r - self.omega)


def mirrored_direction(alpha_r: float, omega: float) -> float:
    """Mirror the direction ``alpha_r`` across a line of orientation ``omega``."""
    return wrap_angle(2.0 * omega - alpha_r)


def direct_observables(
    o_vec: Sequence[float], target: TargetMotion, ego: EgoMotion
) -> PathObservables:
    """Observables of the direct (type-1 1-bounce) path to the object."""
    ox, oy = _as_point(o_vec)
    d = math.hypot(ox, oy)
    if d == 0.0:
        raise ValueError("object vector has zero length")
    alpha = math.atan2(oy, ox)
    radial = target.speed_mps * math.cos(target.heading_rad - alpha)
    v_rel = radial - ego.speed_mps * math.cos(ego.heading_rad - alpha)
    return PathObservables(d=d, alpha=alpha, v_rel=v_rel, v_abs=radial, kind=PathKind.T1B1)


def type2_3bounce_observables(
    geom: MirrorGeometry, target: TargetMotion, ego: EgoMotion
) -> PathObservables:
    """Observables of the type-2 3-bounce path (surface, object, surface)."""
    d = geom.r + geom.o_minus_r
    alpha = geom.alpha_r
    along_path = target.speed_mps * math.cos(target.heading_rad - geom.mirrored_dir_rad)
    v_rel = along_path - ego.speed_mps * math.cos(ego.heading_rad - alpha)
    return PathObservables(d=d, alpha=alpha, v_rel=v_rel, v_abs=along_path, kind=PathKind.T2B3)


def two_bounce_observables(
    geom: MirrorGeometry, target: TargetMotion, ego: EgoMotion, kind: PathKind
) -> PathObservables:
    """Observables of a 2-bounce path (one object and one surface reflection).

    T1B2 and T2B2 share range and relative velocity; they differ in the
    arrival direction. The absolute velocity is what the ego-motion
    compensation yields when it only knows the measured azimuth, so a
    stationary object seen this way can appear to move.
    """
    if kind not in (PathKind.T1B2, PathKind.T2B2):
        raise ValueError(f"kind must be T1B2 or T2B2, got {kind}")
    d = 0.5 * (geom.o + geom.r + geom.o_minus_r)
    v_rel_11 = direct_observables(geom.o_vec, target, ego).v_rel
    v_rel_23 = type2_3bounce_observables(geom, target, ego).v_rel
    v_rel = 0.5 * v_rel_11 + 0.5 * v_rel_23
    alpha = geom.alpha_o if kind is PathKind.T1B2 else geom.alpha_r
    v_abs = v_rel + ego.speed_mps * math.cos(ego.heading_rad - alpha)
    return PathObservables(d=d, alpha=alpha, v_rel=v_rel, v_abs=v_abs, kind=kind)


def reflection_point_on_segment(
    o_vec: Sequence[float],
    surface: ReflectionSurface,
    slack_m: float = DEFAULT_SEGMENT_SLACK_M,
) -> Point | None:
    """Specular reflection point on the segment for the sensor-object pair.

    Mirrors the sensor across the surface's line and intersects the
    mirrored sight line with it, which enforces equal angles of
    incidence and reflection. Returns None when sensor and object are
    not strictly on the same side of the line or when the intersection
    misses the segment extent by more than ``slack_m``.
    """
    ox, oy = _as_point(o_vec)
    s_off = surface.signed_offset((0.0, 0.0))
    o_off = surface.signed_offset((ox, oy))
    if s_off * o_off <= 0.0:
        return None
    # Mirror image of the sensor: S* = S - 2 * offset * normal.
    nx, ny = surface.normal
    mx, my = -2.0 * s_off * nx, -2.0 * s_off * ny
    # R = S* + t (O - S*) reaches the line at t = s_off / (s_off + o_off).
    t = s_off / (s_off + o_off)
    rx, ry = mx + t * (ox - mx), my + t * (oy - my)
    s = surface.param_of((rx, ry))
    if s < -slack_m or s > surface.length + slack_m:
        return None
    return (rx, ry)


def ray_segment_intersection(
    alpha_dut: float,
    surface: ReflectionSurface,
    slack_m: float = DEFAULT_SEGMENT_SLACK_M,
) -> Point | None:
    """Intersection of the sensor ray at ``alpha_dut`` with the segment.

    Returns None when the ray misses the segment (beyond ``slack_m`` of
    either end) or runs parallel to it; a collinear ray also yields
    None because no single reflection point is defined there.
    """
    ux, uy = math.cos(alpha_dut), math.sin(alpha_dut)
    ex = surface.p1[0] - surface.p0[0]
    ey = surface.p1[1] - surface.p0[1]
    denom = ux * ey - uy * ex
    if abs(denom) < 1e-12:
        return None
    px, py = surface.p0
    t = (px * ey - py * ex) / denom
    s = (px * uy - py * ux) / denom
    if t <= 1e-9:
        return None
    if s < -slack_m / surface.length or s > 1.0 + slack_m / surface.length:
        return None
    return (t * ux, t * uy)


def feasible_heading_set(ego: EgoMotion, delta_max: float) -> list[AngleInterval]:
    """Headings an object may have when it deviates from the ego's
    driving direction (or its opposite) by at most ``delta_max``."""
    if not 0.0 <= delta_max <= math.pi / 2.0:
        raise ValueError(f"delta_max must be in [0, pi/2], got {delta_max}")
    psi = ego.sensor_yaw_rad
    return [
        AngleInterval(-psi - delta_max, -psi + delta_max),
        AngleInterval(math.pi - psi - delta_max, math.pi - psi + delta_max),
    ]


def heading_set_from_speed(alpha_o: float, v_abs_o: float, v_max: float) -> AngleInterval:
    """Headings compatible with the measured radial speed given a speed cap.

    Receding objects must head within arccos(|v_abs|/v_max) of the line
    of sight, approaching ones within the same cone around its
    opposite. Above the cap the set collapses to a single heading.
    """
    if v_max <= 0.0:
        raise ValueError(f"v_max must be positive, got {v_max}")
    flip = math.pi if v_abs_o < 0.0 else 0.0
    ratio = abs(v_abs_o) / v_max
    if ratio > 1.0:
        center = alpha_o + flip
        return AngleInterval(center, center)
    half = math.acos(ratio)
    return AngleInterval(alpha_o + flip - half, alpha_o + flip + half)


def _denominator_zeros_in(piece_lo: float, piece_hi: float, alpha_o: float) -> bool:
    """True if cos(gamma - alpha_o) vanishes within the piece (with margin)."""
    lo = piece_lo - SINGULARITY_MARGIN_RAD
    hi = piece_hi + SINGULARITY_MARGIN_RAD
    # Zeros at alpha_o + pi/2 + k*pi; find the first one >= lo.
    first = alpha_o + math.pi / 2.0
    k = math.ceil((lo - first) / math.pi)
    return first + k * math.pi <= hi


def projected_velocity_interval(
    alpha_o: float,
    v_abs_o: float,
    mirrored_dir: float,
    gamma_set: Sequence[AngleInterval],
    kind: str = "3bounce",
    offset: float = 0.0,
) -> tuple[float, float] | None:
    """Feasible absolute radial velocities of a multipath ghost.

    Projects the measured radial speed of the candidate object onto the
    mirrored propagation direction for every feasible heading:
    ``v' = v_abs_o * cos(gamma - mirrored_dir) / cos(gamma - alpha_o)``.
    The expression is monotonic on each connected piece of the heading
    set, so the extremes over all piece endpoints bound the interval.
    For 2-bounce paths the interval is halved and shifted by ``offset``
    (the constant share contributed by the candidate's own measured
    velocity and the asymmetric ego compensation).

    Returns None for an empty heading set. Raises
    ProjectionSingularError when the denominator vanishes on the set.
    """
    if kind not in ("2bounce", "3bounce"):
        raise ValueError(f"kind must be '2bounce' or '3bounce', got {kind!r}")
    values: list[float] = []
    for interval in gamma_set:
        for lo, hi in interval.pieces():
            if _denominator_zeros_in(lo, hi, alpha_o):
                raise ProjectionSingularError(
                    f"cos(gamma - alpha_o) vanishes on [{lo:.4f}, {hi:.4f}]"
                )
            for gamma in (lo, hi):
                values.append(
                    v_abs_o
                    * math.cos(gamma - mirrored_dir)
                    / math.cos(gamma - alpha_o)
                )
    if not values:
        return None
    v_lo, v_hi = min(values), max(values)
    if kind == "2bounce":
        v_lo = 0.5 * v_lo + offset
        v_hi = 0.5 * v_hi + offset
    return (v_lo, v_hi)
