"""Domain types shared by the whole package.

Coordinate convention: sensor frame with the origin at the sensor,
x pointing forward along boresight, y pointing left, angles measured
counterclockwise from x. All distances in meters, velocities in m/s,
angles in radians, RCS in dBsm.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .angles import wrap_angle


class Label(str, enum.Enum):
    NONCLUTTER = "Nonclutter"
    CLUTTER = "Clutter"
    STATIONARY = "Stationary"


class Cause(str, enum.Enum):
    NONE = "None"
    RCS_FILTER = "RcsFilter"
    NO_SIMILAR = "NoSimilar"
    EGO_REFLECTION = "EgoReflection"
    UNDERBODY = "Underbody"
    SPECULAR = "Specular"


@dataclass(frozen=True)
class Detection:
    """One resolved radar reflection point.

    ``v_rel_mps`` is the radial velocity relative to the sensor
    (negative = approaching); ``v_abs_mps`` is the ego-motion
    compensated absolute radial velocity.
    """

    range_m: float
    azimuth_rad: float
    v_rel_mps: float
    v_abs_mps: float
    rcs_dbsm: float
    id: int = 0

    def __post_init__(self) -> None:
        if not math.isfinite(self.range_m) or self.range_m < 0.0:
            raise ValueError(f"range_m must be finite and >= 0, got {self.range_m}")
        object.__setattr__(self, "azimuth_rad", wrap_angle(self.azimuth_rad))

    @property
    def xy(self) -> tuple[float, float]:
        return (
            self.range_m * math.cos(self.azimuth_rad),
            self.range_m * math.sin(self.azimuth_rad),
        )


@dataclass(frozen=True)
class EgoMotion:
    """Sensor motion state for one measurement cycle.

    ``heading_rad`` is the direction of the ego velocity in the sensor
    frame; ``sensor_yaw_rad`` is the sensor's yaw relative to the
    vehicle body.
    """

    speed_mps: float
    heading_rad: float = 0.0
    sensor_yaw_rad: float = 0.0
    timestamp_s: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.speed_mps) or self.speed_mps < 0.0:
            raise ValueError(f"speed_mps must be finite and >= 0, got {self.speed_mps}")
        object.__setattr__(self, "heading_rad", wrap_angle(self.heading_rad))
        object.__setattr__(self, "sensor_yaw_rad", wrap_angle(self.sensor_yaw_rad))


@dataclass(frozen=True)
class TargetMotion:
    """Speed and heading of a (potential) object reflection point."""

    speed_mps: float
    heading_rad: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.speed_mps) or self.speed_mps < 0.0:
            raise ValueError(f"speed_mps must be finite and >= 0, got {self.speed_mps}")
        object.__setattr__(self, "heading_rad", wrap_angle(self.heading_rad))


@dataclass(frozen=True)
class MeasurementFrame:
    """All detections of one sensor cycle plus the ego motion."""

    detections: tuple[Detection, ...]
    ego: EgoMotion
    frame_index: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "detections", tuple(self.detections))
        ids = [d.id for d in self.detections]
        if len(ids) != len(set(ids)):
            raise ValueError(f"duplicate detection ids in frame {self.frame_index}")


@dataclass(frozen=True)
class Verdict:
    """Per-detection classification result with the check that fired."""

    id: int
    label: Label
    cause: Cause = Cause.NONE

    def __post_init__(self) -> None:
        if (self.cause is not Cause.NONE) != (self.label is Label.CLUTTER):
            raise ValueError(f"cause {self.cause} inconsistent with label {self.label}")


def to_cartesian(d: float, alpha: float) -> tuple[float, float]:
    """Polar (range, azimuth) to sensor-frame Cartesian (x forward, y left)."""
    if not math.isfinite(d) or d < 0.0:
        raise ValueError(f"range must be finite and >= 0, got {d}")
    return d * math.cos(alpha), d * math.sin(alpha)


def compensate_ego_motion(v_rel: float, alpha: float, ego: EgoMotion) -> float:
    """Absolute radial velocity from the measured relative one.

    Adds back the ego velocity component along the measured azimuth:
    ``v_abs = v_rel + v_s * cos(gamma_s - alpha)``.
    """
    if not (math.isfinite(v_rel) and math.isfinite(alpha)):
        raise ValueError("v_rel and alpha must be finite")
    return v_rel + ego.speed_mps * math.cos(ego.heading_rad - alpha)
