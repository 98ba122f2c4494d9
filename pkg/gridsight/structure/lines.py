# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Lines in normal form ``rho = x cos(theta) + y sin(theta)``.

``x`` is the column and ``y`` the row, both in pixels with the origin at the
top-left pixel center; ``theta`` is in degrees within [0, 180).
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..common.errors import DegenerateSegmentError, GeometryError

Point = Tuple[float, float]

# |cos| or |sin| below this counts as axis-parallel
AXIS_EPS = 1e-9


@dataclass(frozen=True)
class HoughLine:
    rho: float
    theta: float
    votes: int = 0

    @property
    def cos(self) -> float:
        return math.cos(math.radians(self.theta))

    @property
    def sin(self) -> float:
        return math.sin(math.radians(self.theta))

    def is_vertical(self) -> bool:
        return abs(self.sin) < AXIS_EPS

    def is_horizontal(self) -> bool:
        return abs(self.cos) < AXIS_EPS

    def x_at(self, y: float) -> float:
        if self.is_horizontal():
            raise GeometryError(f"Horizontal line {self} has no unique x at y={y}")
        return (self.rho - y * self.sin) / self.cos

    def y_at(self, x: float) -> float:
        if self.is_vertical():
            raise GeometryError(f"Vertical line {self} has no unique y at x={x}")
        return (self.rho - x * self.cos) / self.sin

    def clip_to_image(self, width: int, height: int) -> Optional[Tuple[Point, Point]]:
        """End points of the visible part of the line, leftmost (then topmost) first.

        Returns None when the line misses the pixel-center rectangle
        ``[0, width - 1] x [0, height - 1]`` or only touches a corner.
        """
        x_max, y_max = float(width - 1), float(height - 1)
        tol = 1e-9
        candidates = []
        if not self.is_horizontal():
            for y in (0.0, y_max):
                x = self.x_at(y)
                if -tol <= x <= x_max + tol:
                    candidates.append((min(max(x, 0.0), x_max), y))
        if not self.is_vertical():
            for x in (0.0, x_max):
                y = self.y_at(x)
                if -tol <= y <= y_max + tol:
                    candidates.append((x, min(max(y, 0.0), y_max)))
        unique = []
        for p in sorted(candidates):
            if not unique or math.hypot(p[0] - unique[-1][0], p[1] - unique[-1][1]) > 1e-6:
                unique.append(p)
        if len(unique) < 2:
            return None
        return unique[0], unique[-1]

    @classmethod
    def from_points(cls, p: Point, q: Point, votes: int = 0) -> "HoughLine":
        dx, dy = q[0] - p[0], q[1] - p[1]
        length = math.hypot(dx, dy)
        if length == 0.0:
            raise DegenerateSegmentError(f"Cannot build a line through coincident points {p}")
        nx, ny = -dy / length, dx / length
        theta = math.degrees(math.atan2(ny, nx))
        rho = nx * p[0] + ny * p[1]
        if theta < 0.0:
            theta += 180.0
            rho = -rho
        if theta >= 180.0:
            theta -= 180.0
            rho = -rho
        return cls(rho=rho, theta=theta, votes=votes)

    @classmethod
    def from_slope_intercept(cls, slope: float, intercept: float, votes: int = 0) -> "HoughLine":
        """Line ``y = slope * x + intercept``."""
        return cls.from_points((0.0, intercept), (1.0, slope + intercept), votes=votes)

    def to_dict(self) -> dict:
        return {"rho": round(self.rho, 6), "theta_deg": round(self.theta, 6), "votes": int(self.votes)}


def angular_distance(a: float, b: float) -> float:
    """Distance between two line orientations in degrees, modulo 180."""
    d = abs(a - b) % 180.0
    return min(d, 180.0 - d)
