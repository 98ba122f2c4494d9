# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Canny edge detector."""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ..common.errors import ParameterError
from ..raster import BitMask, RasterGray

logger = logging.getLogger(__name__)

# Row/column offsets of the "plus" neighbor along each quantized gradient axis
# (0, 45, 90 and 135 degrees, y pointing down)
_AXIS_OFFSETS = ((0, 1), (1, 1), (1, 0), (1, -1))


@dataclass(frozen=True)
class CannyParams:
    """Smoothing and hysteresis settings; thresholds are fractions of the peak gradient."""
    sigma: float = 1.4
    t_low: float = 0.1
    t_high: float = 0.3

    def __post_init__(self):
        if not self.sigma > 0:
            raise ParameterError(f"Canny sigma must be positive, got {self.sigma}")
        if not 0.0 < self.t_low < self.t_high <= 1.0:
            raise ParameterError(
                f"Canny thresholds must satisfy 0 < t_low < t_high <= 1, got {self.t_low}, {self.t_high}")


def gradient(img: RasterGray, sigma: float):
    """Gaussian-smoothed central-difference gradient ``(gx, gy)``."""
    smooth = ndimage.gaussian_filter(img.data, sigma, mode="nearest")
    gy = np.gradient(smooth, axis=0) if smooth.shape[0] > 1 else np.zeros_like(smooth)
    gx = np.gradient(smooth, axis=1) if smooth.shape[1] > 1 else np.zeros_like(smooth)
    return gx, gy


def _shifted(a: np.ndarray, dr: int, dc: int) -> np.ndarray:
    """``out[r, c] = a[r + dr, c + dc]`` with zeros outside."""
    h, w = a.shape
    out = np.zeros_like(a)
    out[max(0, -dr):h - max(0, dr), max(0, -dc):w - max(0, dc)] = \
        a[max(0, dr):h - max(0, -dr), max(0, dc):w - max(0, -dc)]
    return out


def non_maximum_suppression(mag: np.ndarray, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Keep pixels that are ridge maxima across the quantized gradient direction.

    A pixel must be strictly greater than its "minus" neighbor and not smaller
    than its "plus" neighbor, so a two-pixel plateau keeps exactly one pixel.
    """
    angle = np.degrees(np.arctan2(gy, gx)) % 180.0
    axis = np.floor((angle + 22.5) / 45.0).astype(np.int64) % 4
    keep = np.zeros(mag.shape, dtype=bool)
    for index, (dr, dc) in enumerate(_AXIS_OFFSETS):
        plus = _shifted(mag, dr, dc)
        minus = _shifted(mag, -dr, -dc)
        keep |= (axis == index) & (mag > minus) & (mag >= plus)
    return keep & (mag > 0)


def canny(img: RasterGray, sigma: float = 1.4, t_low: float = 0.1, t_high: float = 0.3) -> BitMask:
    """Edge mask after smoothing, gradient, non-maximum suppression and hysteresis.

    Parameters
    ----------
    img : RasterGray
        Input image.
    sigma : float
        Gaussian standard deviation in pixels.
    t_low, t_high : float
        Hysteresis thresholds as fractions of the largest gradient magnitude.

    Returns
    -------
    BitMask
        Edge pixels; weak pixels survive only when 8-connected to a strong one.
    """
    CannyParams(sigma, t_low, t_high)
    gx, gy = gradient(img, sigma)
    mag = np.hypot(gx, gy)
    peak = float(mag.max())
    if peak <= 1e-12:
        return BitMask.empty(*img.shape)
    thin = non_maximum_suppression(mag, gx, gy)
    weak = thin & (mag >= t_low * peak)
    strong = thin & (mag >= t_high * peak)
    labels, count = ndimage.label(weak, structure=np.ones((3, 3), dtype=int))
    if count == 0:
        return BitMask.empty(*img.shape)
    linked = np.zeros(count + 1, dtype=bool)
    linked[np.unique(labels[strong])] = True
    linked[0] = False
    edges = linked[labels]
    logger.debug(f"Canny kept {int(edges.sum())} of {int(thin.sum())} thinned pixels")
    return BitMask(edges)


def canny_with(img: RasterGray, params: CannyParams) -> BitMask:
    return canny(img, params.sigma, params.t_low, params.t_high)
