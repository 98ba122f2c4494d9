# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Green-vegetation pixel heuristic."""

from dataclasses import dataclass

import numpy as np

from ..common.errors import ParameterError
from ..raster import BitMask, RasterRgb


@dataclass(frozen=True)
class GreenThresholds:
    """8-bit channel thresholds of the vegetation predicate."""
    gr_th: int = 100
    min_th: int = 80
    max_th: int = 150

    def __post_init__(self):
        for name in ("gr_th", "min_th", "max_th"):
            value = getattr(self, name)
            if not 0 <= value <= 255:
                raise ParameterError(f"{name} must lie in [0, 255], got {value}")
        if self.min_th > self.max_th:
            raise ParameterError(f"min_th ({self.min_th}) must not exceed max_th ({self.max_th})")


def green_mask(img: RasterRgb, t: GreenThresholds = GreenThresholds()) -> BitMask:
    """``G > gr_th`` and either ``R < min_th, B < max_th`` or ``B < min_th, R < max_th``."""
    rgb = img.data.astype(np.int32)
    red, green, blue = rgb[:, :, 0], rgb[:, :, 1], rgb[:, :, 2]
    red_low = (red < t.min_th) & (blue < t.max_th)
    blue_low = (blue < t.min_th) & (red < t.max_th)
    return BitMask((green > t.gr_th) & (red_low | blue_low))
