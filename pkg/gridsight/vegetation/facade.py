# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Parametric façade: equally spaced vertical segments hung between two diagonals."""

from dataclasses import dataclass
from typing import List, Tuple

from ..common.errors import DegenerateSegmentError, GeometryError, ParameterError, ParityError
from ..structure import HoughLine

Point = Tuple[float, float]


@dataclass(frozen=True)
class FacadeConfig:
    """``n_points`` odd; ``measure_fraction`` is the height along the middle segment
    (0 at the upper line, 1 at the lower) where the horizontal distance is taken."""
    n_points: int = 5
    meter_per_pixel: float = 0.05
    measure_fraction: float = 0.5

    def __post_init__(self):
        if self.n_points < 1 or self.n_points % 2 == 0:
            raise ParityError(f"n_points must be a positive odd number, got {self.n_points}")
        if not self.meter_per_pixel > 0:
            raise ParameterError(f"meter_per_pixel must be positive, got {self.meter_per_pixel}")
        if not 0.0 <= self.measure_fraction <= 1.0:
            raise ParameterError(f"measure_fraction must lie in [0, 1], got {self.measure_fraction}")


@dataclass(frozen=True)
class VerticalSegment:
    x: float
    y0: float
    y1: float

    def at(self, fraction: float) -> float:
        return self.y0 + fraction * (self.y1 - self.y0)

    def to_dict(self) -> dict:
        return {"x": round(self.x, 6), "y0": round(self.y0, 6), "y1": round(self.y1, 6)}


def facade_points(p_upper: Point, q_upper: Point, n: int) -> List[Point]:
    """Interior points ``C_k = P + k (Q - P) / (n + 1)`` for ``k = 1..n``."""
    if n < 1 or n % 2 == 0:
        raise ParityError(f"Façade point count must be a positive odd number, got {n}")
    (px, py), (qx, qy) = p_upper, q_upper
    if px == qx and py == qy:
        raise DegenerateSegmentError(f"Façade end points coincide at {p_upper}")
    dx, dy = (qx - px) / (n + 1), (qy - py) / (n + 1)
    return [(px + k * dx, py + k * dy) for k in range(1, n + 1)]


def facade_segments(upper_line: HoughLine, lower_line: HoughLine, n: int, width: int,
                    height: int) -> List[VerticalSegment]:
    """Vertical segments from points on the upper diagonal down to the lower one.

    The upper diagonal's end points are its intersections with the image border.
    """
    for role, line in (("upper", upper_line), ("lower", lower_line)):
        if line.is_vertical():
            raise GeometryError(f"The {role} diagonal is vertical; no finite vertical segment meets it")
    ends = upper_line.clip_to_image(width, height)
    if ends is None:
        raise GeometryError(f"Upper diagonal {upper_line} does not cross the {width}x{height} image")
    segments = []
    for x, y in facade_points(ends[0], ends[1], n):
        segments.append(VerticalSegment(x=x, y0=y, y1=lower_line.y_at(x)))
    return segments


def middle_segment(segments: List[VerticalSegment]) -> VerticalSegment:
    """Segment ``(n + 1) / 2`` (1-based) of an odd-sized façade."""
    assert len(segments) % 2 == 1, "façade must have an odd number of segments"
    return segments[(len(segments) + 1) // 2 - 1]


def clearance_distance(tower_x: float, middle_segment_x: float, meter_per_pixel: float) -> float:
    """Horizontal tower-to-façade distance in meters."""
    if not meter_per_pixel > 0:
        raise ParameterError(f"meter_per_pixel must be positive, got {meter_per_pixel}")
    return abs(middle_segment_x - tower_x) * meter_per_pixel
