# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Alignment angle of a three-sensor laser rangefinder set against a target surface."""

import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from ..common.errors import ParameterError, SensorRangeError

SENSOR_MIN_M = 0.2
SENSOR_MAX_M = 30.0


@dataclass(frozen=True)
class LaserReadings:
    distances_m: Tuple[float, float, float]
    spacing_m: float

    def __post_init__(self):
        if len(self.distances_m) != 3:
            raise ParameterError(f"A laser set has three sensors, got {len(self.distances_m)} readings")
        if not self.spacing_m > 0:
            raise ParameterError(f"Sensor spacing must be positive, got {self.spacing_m}")
        object.__setattr__(self, "distances_m", tuple(float(d) for d in self.distances_m))


def alignment_angle(r: LaserReadings) -> float:
    """Angle in radians of the least-squares line through ``(k * spacing, d_k)``.

    Positive when the last sensor reads farther than the first.
    """
    for k, d in enumerate(r.distances_m):
        if not SENSOR_MIN_M <= d <= SENSOR_MAX_M:
            raise SensorRangeError(
                f"Sensor {k} reading {d} m outside [{SENSOR_MIN_M}, {SENSOR_MAX_M}] m")
    x = np.arange(3, dtype=np.float64) * r.spacing_m
    d = np.asarray(r.distances_m, dtype=np.float64)
    xc, dc = x - x.mean(), d - d.mean()
    slope = float(np.dot(xc, dc) / np.dot(xc, xc))
    return math.atan(slope)


def alignment_angles(sets: Dict[str, LaserReadings]) -> Dict[str, float]:
    """Angles for every sensor set of a rig, keyed like ``sets``."""
    return {name: alignment_angle(readings) for name, readings in sets.items()}


def readings(values: Sequence[float], spacing_m: float) -> LaserReadings:
    return LaserReadings(tuple(values), spacing_m)
