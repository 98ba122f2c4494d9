# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""The two tower-detection paths: line geometry and texture."""

import logging
from dataclasses import dataclass
from typing import List, Optional

from ..common.errors import ParameterError
from ..raster import BitMask, RasterGray
from .canny import CannyParams, canny_with
from .gabor import GaborParams, gabor_bank, pca_project, tower_mask
from .hough import HoughParams, filter_lines_by_angle, hough_lines_with
from .lines import HoughLine, angular_distance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineFamilies:
    """Orientation windows, in degrees, selecting tower and diagonal lines."""
    vertical_center: float = 0.0
    vertical_half_window: float = 10.0
    diagonal_centers: tuple = (45.0, 135.0)
    diagonal_half_window: float = 15.0

    def __post_init__(self):
        for window in (self.vertical_half_window, self.diagonal_half_window):
            if not 0.0 < window < 90.0:
                raise ParameterError(f"Line family half window must lie in (0, 90), got {window}")


@dataclass(frozen=True, eq=False)
class StructureResult:
    edges: BitMask
    lines: List[HoughLine]
    vertical: List[HoughLine]
    diagonal: List[HoughLine]


def detect_structures(img: RasterGray,
                      canny: CannyParams = CannyParams(),
                      hough: HoughParams = HoughParams(),
                      families: LineFamilies = LineFamilies()) -> StructureResult:
    """Canny edges, Hough lines and their split into vertical and diagonal families."""
    edges = canny_with(img, canny)
    lines = hough_lines_with(edges, hough)
    vertical = filter_lines_by_angle(lines, families.vertical_center, families.vertical_half_window)
    diagonal = [
        line for line in lines
        if any(angular_distance(line.theta, c) <= families.diagonal_half_window
               for c in families.diagonal_centers)
    ]
    logger.info(f"Structure detection: {len(lines)} lines, {len(vertical)} vertical, "
                f"{len(diagonal)} diagonal")
    return StructureResult(edges, lines, vertical, diagonal)


def detect_towers_hough(img: RasterGray,
                        canny: CannyParams = CannyParams(),
                        hough: HoughParams = HoughParams(),
                        families: LineFamilies = LineFamilies()) -> List[HoughLine]:
    """Vertical tower members found through Canny and Hough."""
    return detect_structures(img, canny, hough, families).vertical


def detect_towers_gabor(img: RasterGray,
                        params: Optional[GaborParams] = None,
                        threshold: Optional[float] = None) -> BitMask:
    """Tower pixels found through Gabor texture features and their first principal component."""
    stack = gabor_bank(img, params=params or GaborParams())
    return tower_mask(pca_project(stack, 1), threshold)
