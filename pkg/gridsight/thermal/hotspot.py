# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Overheated-component extraction from thermal frames.

The chain is neighborhood pre-summing, min-max normalization, a 256-level
histogram and Otsu's threshold. Pixels above the threshold form the hotspot
mask; gradient edges of the remaining structures can then be exposed next to
it.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from scipy import ndimage

from ..common.errors import DegenerateHistogramError, ParameterError
from ..raster import BitMask, RasterGray, check_same_shape, normalize

logger = logging.getLogger(__name__)

N_LEVELS = 256

# Output levels of expose_neighbor_edges
HOTSPOT_LEVEL = 1.0
EDGE_LEVEL = 0.5


@dataclass(frozen=True)
class ThermalParams:
    center_included: bool = True
    edge_threshold: float = 0.1
    # hotspot pixels closer than this are not reported as neighbor edges
    edge_clearance_px: int = 2

    def __post_init__(self):
        if not 0.0 <= self.edge_threshold <= 1.0:
            raise ParameterError(f"edge_threshold must lie in [0, 1], got {self.edge_threshold}")
        if self.edge_clearance_px < 0:
            raise ParameterError(f"edge_clearance_px must be >= 0, got {self.edge_clearance_px}")


@dataclass(frozen=True, eq=False)
class Histogram256:
    """Pixel counts per gray level."""
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.shape != (N_LEVELS,):
            raise ParameterError(f"Histogram256 needs {N_LEVELS} bins, got shape {counts.shape}")
        if np.any(counts < 0):
            raise ParameterError("Histogram counts must be non-negative")
        counts = counts.astype(np.int64)
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def occupied(self) -> int:
        return int(np.count_nonzero(self.counts))


@dataclass(frozen=True)
class HotspotComponent:
    """One 8-connected region of a hotspot mask."""
    area: int
    bbox: Tuple[int, int, int, int]
    centroid: Tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "area": self.area,
            "bbox": list(self.bbox),
            "centroid": [round(c, 3) for c in self.centroid],
        }


def neighborhood_sum(img: RasterGray, center_included: bool = True) -> RasterGray:
    """Sum of every 3x3 neighborhood under replicate padding.

    With ``center_included`` the center pixel counts once, giving a 9-term
    sum; otherwise only the eight neighbors are added.
    """
    kernel = np.ones((3, 3))
    if not center_included:
        kernel[1, 1] = 0.0
    return RasterGray(ndimage.correlate(img.data, kernel, mode="nearest"))


def quantize(img: RasterGray) -> np.ndarray:
    """Gray level ``min(floor(v * 256), 255)`` of each pixel, values clipped to [0, 1]."""
    levels = np.floor(np.clip(img.data, 0.0, 1.0) * N_LEVELS).astype(np.int64)
    return np.minimum(levels, N_LEVELS - 1)


def histogram256(img: RasterGray) -> Histogram256:
    return Histogram256(np.bincount(quantize(img).ravel(), minlength=N_LEVELS))


def between_class_scores(h: Histogram256) -> List[Fraction]:
    """Exact between-class variance (up to the constant ``1 / N^2``) for every threshold.

    Threshold ``t`` puts levels ``<= t`` in the background class. Thresholds
    leaving one class empty score zero.
    """
    counts = [int(c) for c in h.counts]
    total = sum(counts)
    total_sum = sum(i * c for i, c in enumerate(counts))
    scores = []
    n0 = s0 = 0
    for t in range(N_LEVELS):
        n0 += counts[t]
        s0 += t * counts[t]
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            scores.append(Fraction(0))
            continue
        scores.append(Fraction((total * s0 - n0 * total_sum)**2, n0 * n1))
    return scores


def otsu_threshold(h: Histogram256) -> int:
    """Level maximizing the between-class variance.

    A run of consecutive maximizing levels resolves to its midpoint, rounded
    down; when several separate runs tie, the first one wins.

    Raises
    ------
    DegenerateHistogramError
        If fewer than two bins are occupied.
    """
    if h.occupied() < 2:
        raise DegenerateHistogramError(
            f"Otsu needs at least two occupied levels, got {h.occupied()}")
    scores = between_class_scores(h)
    best = max(scores)
    start = scores.index(best)
    end = start
    while end + 1 < N_LEVELS and scores[end + 1] == best:
        end += 1
    return (start + end) // 2


def extract_hotspots(img: RasterGray, params: ThermalParams = ThermalParams()) -> BitMask:
    """Mask of the pixels whose pre-summed, normalized level exceeds Otsu's threshold."""
    summed = normalize(neighborhood_sum(img, params.center_included))
    levels = quantize(summed)
    threshold = otsu_threshold(Histogram256(np.bincount(levels.ravel(), minlength=N_LEVELS)))
    logger.debug(f"Otsu threshold level {threshold}")
    return BitMask(levels > threshold)


def edge_map(img: RasterGray, edge_threshold: float = 0.1) -> np.ndarray:
    """Pixels whose central-difference gradient magnitude exceeds ``edge_threshold * max``."""
    data = img.data
    gy = np.gradient(data, axis=0) if data.shape[0] > 1 else np.zeros_like(data)
    gx = np.gradient(data, axis=1) if data.shape[1] > 1 else np.zeros_like(data)
    mag = np.hypot(gx, gy)
    peak = float(mag.max())
    if peak <= 0.0:
        return np.zeros(data.shape, dtype=bool)
    return mag > edge_threshold * peak


def expose_neighbor_edges(img: RasterGray,
                          hotspots: BitMask,
                          params: ThermalParams = ThermalParams()) -> RasterGray:
    """Render hotspots at full intensity and other structures' edges at mid intensity."""
    check_same_shape(img, hotspots)
    mask = hotspots.bits
    edges = edge_map(img, params.edge_threshold)
    if params.edge_clearance_px > 0 and mask.any():
        near = ndimage.binary_dilation(
            mask, structure=np.ones((3, 3), dtype=bool), iterations=params.edge_clearance_px)
        edges &= ~near
    out = np.zeros(img.shape, dtype=np.float64)
    out[edges] = EDGE_LEVEL
    out[mask] = HOTSPOT_LEVEL
    return RasterGray(out)


def label_components(mask: BitMask) -> List[HotspotComponent]:
    """8-connected components of ``mask`` in label order (row-major first pixel)."""
    labels, count = ndimage.label(mask.bits, structure=np.ones((3, 3), dtype=int))
    components = []
    for index, sl in enumerate(ndimage.find_objects(labels), start=1):
        region = labels[sl] == index
        ys, xs = np.nonzero(region)
        components.append(
            HotspotComponent(
                area=int(region.sum()),
                bbox=(sl[1].start, sl[0].start, sl[1].stop - sl[1].start, sl[0].stop - sl[0].start),
                centroid=(float(xs.mean() + sl[1].start), float(ys.mean() + sl[0].start)),
            ))
    logger.debug(f"Found {count} hotspot components")
    return components
