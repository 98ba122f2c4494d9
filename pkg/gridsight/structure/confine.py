# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Transfer-line confinement rendering."""

import numpy as np

from ..raster import BitMask, RasterGray, check_same_shape

TOWER_LEVEL = 0.0
LINE_LEVEL = 0.25
BACKGROUND_LEVEL = 1.0


def confine_transfer_lines(edges: BitMask, towers: BitMask) -> RasterGray:
    """Towers black, remaining edges dark gray, everything else white."""
    check_same_shape(edges, towers)
    out = np.full(edges.shape, BACKGROUND_LEVEL, dtype=np.float64)
    out[edges.bits] = LINE_LEVEL
    out[towers.bits] = TOWER_LEVEL
    return RasterGray(out)
