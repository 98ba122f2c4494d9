# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Single-level 2D discrete wavelet transform.

Subband names follow the inspection convention: the *vertical* detail is
low-pass along each row followed by high-pass along each column, so it
responds to intensity changes from one row to the next. The *horizontal*
detail swaps the two filters.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import pywt

from ..common.errors import ParameterError
from ..raster import RasterGray

WAVELETS = ("haar", "db2")

# Orthogonal filters with periodic extension give exact half-size subbands
_MODE = "periodization"


@dataclass(frozen=True, eq=False)
class SubbandSet:
    """The four level-1 subbands, each ``ceil(H / 2) x ceil(W / 2)``."""
    approx: np.ndarray
    vertical: np.ndarray
    horizontal: np.ndarray
    diagonal: np.ndarray
    wavelet: str
    source_shape: Tuple[int, int]

    def __post_init__(self):
        for name in ("approx", "vertical", "horizontal", "diagonal"):
            band = np.array(getattr(self, name), dtype=np.float64)
            band.setflags(write=False)
            object.__setattr__(self, name, band)
        shapes = {self.approx.shape, self.vertical.shape, self.horizontal.shape, self.diagonal.shape}
        assert len(shapes) == 1, f"subband shapes differ: {shapes}"

    def detail(self, name: str) -> np.ndarray:
        if name not in ("vertical", "horizontal", "diagonal"):
            raise ParameterError(f"Unknown detail subband {name!r}")
        return getattr(self, name)

    def energy(self) -> float:
        return float(sum(np.sum(b**2) for b in (self.approx, self.vertical, self.horizontal, self.diagonal)))


def _check_wavelet(wavelet: str) -> str:
    if wavelet not in WAVELETS:
        raise ParameterError(f"Unsupported wavelet {wavelet!r}, expected one of {WAVELETS}")
    return wavelet


def dwt2_level1(img: RasterGray, wavelet: str = "haar") -> SubbandSet:
    """Analysis filter bank with downsampling by two along both axes.

    Odd dimensions are extended by one symmetric sample before filtering.
    """
    _check_wavelet(wavelet)
    h, w = img.shape
    if h < 2 or w < 2:
        raise ParameterError(f"DWT needs an image of at least 2x2, got {w}x{h}")
    data = np.pad(img.data, ((0, h % 2), (0, w % 2)), mode="symmetric")
    coefs = pywt.dwtn(data, wavelet, mode=_MODE)
    # keys name (axis 0, axis 1): 'd' along columns and 'a' along rows is the vertical detail
    return SubbandSet(
        approx=coefs["aa"],
        vertical=coefs["da"],
        horizontal=coefs["ad"],
        diagonal=coefs["dd"],
        wavelet=wavelet,
        source_shape=(h, w),
    )


def idwt2_level1(bands: SubbandSet) -> RasterGray:
    """Synthesis bank; inverse of :func:`dwt2_level1` including the odd-size crop."""
    coefs = {
        "aa": bands.approx,
        "da": bands.vertical,
        "ad": bands.horizontal,
        "dd": bands.diagonal,
    }
    data = pywt.idwtn(coefs, bands.wavelet, mode=_MODE)
    h, w = bands.source_shape
    return RasterGray(data[:h, :w])
