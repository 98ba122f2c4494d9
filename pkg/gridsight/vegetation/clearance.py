# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Tree-to-tower clearance measurement on a single aerial frame."""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..common.errors import ClearanceError, GeometryError, ParameterError
from ..raster import (
    RED,
    WHITE,
    YELLOW,
    RasterRgb,
    Segment,
    render_overlay,
    to_gray,
)
from ..structure import (
    CannyParams,
    HoughLine,
    HoughParams,
    LineFamilies,
    detect_structures,
)
from .facade import (
    FacadeConfig,
    VerticalSegment,
    clearance_distance,
    facade_segments,
    middle_segment,
)
from .green import GreenThresholds, green_mask

logger = logging.getLogger(__name__)

SIDES = ("left", "right")


@dataclass(frozen=True)
class ClearanceParams:
    canny: CannyParams = field(default_factory=CannyParams)
    hough: HoughParams = field(default_factory=HoughParams)
    families: LineFamilies = field(default_factory=LineFamilies)
    # lines closer than this (pixels) are edges of one physical structure
    min_line_separation_px: float = 10.0

    def __post_init__(self):
        if not self.min_line_separation_px > 0:
            raise ParameterError(
                f"min_line_separation_px must be positive, got {self.min_line_separation_px}")


@dataclass(frozen=True)
class ClearanceSide:
    side: str
    upper: HoughLine
    lower: HoughLine
    segments: Tuple[VerticalSegment, ...]
    measure_y: float
    tower_x: float
    distance_m: float

    @property
    def middle(self) -> VerticalSegment:
        return middle_segment(list(self.segments))

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "upper": self.upper.to_dict(),
            "lower": self.lower.to_dict(),
            "segments": [s.to_dict() for s in self.segments],
            "measure_y": round(self.measure_y, 6),
            "distance_m": round(self.distance_m, 6),
        }


@dataclass(frozen=True)
class ClearanceReport:
    tower_lines: Tuple[HoughLine, ...]
    tower_x: float
    sides: Tuple[ClearanceSide, ...]
    green_fraction: float
    width: int
    height: int

    @property
    def diagonal_pairs(self) -> Dict[str, Tuple[HoughLine, HoughLine]]:
        return {s.side: (s.upper, s.lower) for s in self.sides}

    @property
    def facade_segments(self) -> Dict[str, Tuple[VerticalSegment, ...]]:
        return {s.side: s.segments for s in self.sides}

    @property
    def distances_m(self) -> Dict[str, float]:
        return {s.side: s.distance_m for s in self.sides}

    def to_dict(self) -> dict:
        return {
            "tower_lines": [line.to_dict() for line in self.tower_lines],
            "tower_x": round(self.tower_x, 6),
            "sides": [s.to_dict() for s in self.sides],
            "green_fraction": round(self.green_fraction, 6),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _tower_group(vertical: List[HoughLine], separation: float, height: int) -> List[HoughLine]:
    """The strongest vertical line plus every vertical line within ``separation`` of it."""
    mid_y = (height - 1) / 2.0
    anchor = vertical[0].x_at(mid_y)
    return [line for line in vertical if abs(line.x_at(mid_y) - anchor) <= separation]


def _tower_x_at(group: List[HoughLine], y: float) -> float:
    return float(np.mean([line.x_at(y) for line in group]))


def _pick_pair(candidates: List[HoughLine], separation: float, width: int,
               height: int) -> Optional[Tuple[HoughLine, HoughLine]]:
    """Two strongest diagonals at least ``separation`` pixels apart vertically, upper first."""
    if not candidates:
        return None
    first = candidates[0]
    ends = first.clip_to_image(width, height)
    x_ref = (ends[0][0] + ends[1][0]) / 2.0
    for other in candidates[1:]:
        if other.is_vertical():
            continue
        if abs(other.y_at(x_ref) - first.y_at(x_ref)) >= separation:
            if first.y_at(x_ref) <= other.y_at(x_ref):
                return first, other
            return other, first
    return None


def corridor_mask(upper: HoughLine, lower: HoughLine, x0: float, x1: float, width: int,
                  height: int) -> np.ndarray:
    """Pixels between the two diagonals over the column range ``[x0, x1]``."""
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    cols = np.arange(width, dtype=np.float64)
    top = (upper.rho - cols * upper.cos) / upper.sin
    bottom = (lower.rho - cols * lower.cos) / lower.sin
    lo, hi = np.minimum(top, bottom), np.maximum(top, bottom)
    return (xs >= x0) & (xs <= x1) & (ys >= lo[None, :]) & (ys <= hi[None, :])


def clearance_report(img: RasterRgb,
                     cfg: FacadeConfig = FacadeConfig(),
                     t: GreenThresholds = GreenThresholds(),
                     params: ClearanceParams = ClearanceParams()) -> ClearanceReport:
    """Detect the tower and its diagonals, hang a façade on each side and measure clearance.

    Raises
    ------
    ClearanceError
        If no vertical tower line is found. A side without a usable diagonal
        pair is left out of the report with a warning.
    """
    width, height = img.width, img.height
    structures = detect_structures(to_gray(img), params.canny, params.hough, params.families)
    if not structures.vertical:
        raise ClearanceError("No vertical tower line detected")
    group = _tower_group(structures.vertical, params.min_line_separation_px, height)
    tower_x = _tower_x_at(group, (height - 1) / 2.0)

    by_side: Dict[str, List[HoughLine]] = {side: [] for side in SIDES}
    for line in structures.diagonal:
        ends = line.clip_to_image(width, height)
        if ends is None:
            continue
        mid_x = (ends[0][0] + ends[1][0]) / 2.0
        by_side["left" if mid_x < tower_x else "right"].append(line)

    greens = green_mask(img, t).bits
    corridor = np.zeros((height, width), dtype=bool)
    sides = []
    for side in SIDES:
        pair = _pick_pair(by_side[side], params.min_line_separation_px, width, height)
        if pair is None:
            logger.warning(f"Clearance: {side} side has fewer than two separated diagonals; "
                           "side omitted")
            continue
        upper, lower = pair
        try:
            segments = facade_segments(upper, lower, cfg.n_points, width, height)
        except GeometryError as err:
            logger.warning(f"Clearance: {side} side skipped: {err}")
            continue
        middle = middle_segment(segments)
        measure_y = middle.at(cfg.measure_fraction)
        side_tower_x = _tower_x_at(group, measure_y)
        distance = clearance_distance(side_tower_x, middle.x, cfg.meter_per_pixel)
        ends = upper.clip_to_image(width, height)
        corridor |= corridor_mask(upper, lower, ends[0][0], ends[1][0], width, height)
        sides.append(
            ClearanceSide(side, upper, lower, tuple(segments), measure_y, side_tower_x, distance))
        logger.info(f"Clearance: {side} side {distance:.3f} m")

    n_corridor = int(corridor.sum())
    green_fraction = float((greens & corridor).sum()) / n_corridor if n_corridor else 0.0
    return ClearanceReport(tuple(group), tower_x, tuple(sides), green_fraction, width, height)


def render_clearance_overlay(img: RasterRgb, report: ClearanceReport) -> RasterRgb:
    """Tower and diagonal lines red, façade segments dotted yellow, distances white."""
    shapes = []
    for line in report.tower_lines:
        ends = line.clip_to_image(report.width, report.height)
        if ends is not None:
            shapes.append(Segment(ends[0][0], ends[0][1], ends[1][0], ends[1][1], RED))
    for side in report.sides:
        for line in (side.upper, side.lower):
            ends = line.clip_to_image(report.width, report.height)
            if ends is not None:
                shapes.append(Segment(ends[0][0], ends[0][1], ends[1][0], ends[1][1], RED))
        for seg in side.segments:
            shapes.append(Segment(seg.x, seg.y0, seg.x, seg.y1, YELLOW, dash=2))
        middle = side.middle
        shapes.append(Segment(side.tower_x, side.measure_y, middle.x, side.measure_y, WHITE, dash=3))
    return render_overlay(img, shapes)

