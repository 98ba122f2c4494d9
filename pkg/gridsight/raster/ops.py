# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Pixel-level operations on gray and RGB rasters."""

from typing import Union

import numpy as np
from scipy import ndimage

from ..common import BorderPolicy
from ..common.errors import ParameterError
from .image import Kernel2D, RasterGray, RasterRgb

# Broadcast luminance weights
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def to_gray(img: RasterRgb) -> RasterGray:
    """Luminance ``(0.299 R + 0.587 G + 0.114 B) / 255``."""
    rgb = img.data.astype(np.float64)
    r, g, b = LUMA_WEIGHTS
    luma = (r * rgb[:, :, 0] + g * rgb[:, :, 1] + b * rgb[:, :, 2]) / 255.0
    return RasterGray(np.clip(luma, 0.0, 1.0))


def convolve2d(img: RasterGray,
               k: Kernel2D,
               border: Union[BorderPolicy, str, int] = BorderPolicy.Replicate) -> RasterGray:
    """Correlate ``img`` with ``k`` (the kernel is not flipped).

    Parameters
    ----------
    img : RasterGray
        Input image.
    k : Kernel2D
        Odd-sized template, centered on each output pixel.
    border : BorderPolicy
        How samples outside the image are supplied. Defaults to replicate.

    Returns
    -------
    RasterGray
        Image with the same dimensions as ``img``.
    """
    policy = BorderPolicy.parse(border)
    out = ndimage.correlate(img.data, k.weights, mode=policy.ndimage_mode, cval=0.0)
    return RasterGray(out)


def normalize(img: RasterGray) -> RasterGray:
    """Min-max rescale to [0, 1]; a constant image maps to all zeros."""
    data = img.data
    lo, hi = float(data.min()), float(data.max())
    if hi <= lo:
        return RasterGray(np.zeros_like(data))
    return RasterGray(np.clip((data - lo) / (hi - lo), 0.0, 1.0))


def crop(img: RasterGray, x: int, y: int, w: int, h: int) -> RasterGray:
    """Sub-image ``[y, y + h) x [x, x + w)``, clipped to the image bounds."""
    if w < 1 or h < 1:
        raise ParameterError(f"Crop size must be positive, got {w}x{h}")
    x0, y0 = max(0, int(x)), max(0, int(y))
    x1, y1 = min(img.width, int(x) + int(w)), min(img.height, int(y) + int(h))
    if x1 <= x0 or y1 <= y0:
        raise ParameterError(f"Crop box ({x}, {y}, {w}, {h}) lies outside a "
                             f"{img.width}x{img.height} image")
    return RasterGray(img.data[y0:y1, x0:x1])


def resize_bilinear(img: RasterGray, height: int, width: int) -> RasterGray:
    """Bilinear resampling with half-pixel centers (``align_corners=False``)."""
    if height < 1 or width < 1:
        raise ParameterError(f"Target size must be positive, got {height}x{width}")
    import torch
    import torch.nn.functional as F

    src = torch.from_numpy(np.ascontiguousarray(img.data))[None, None]
    out = F.interpolate(src, size=(height, width), mode="bilinear", align_corners=False)
    return RasterGray(out[0, 0].numpy())
