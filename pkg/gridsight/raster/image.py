# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Immutable image containers shared by every stage."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..common.errors import (
    DimensionMismatchError,
    InvalidKernelError,
    ParameterError,
)


def _frozen(array: np.ndarray, dtype) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True, order="C")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class RasterGray:
    """Single-channel image, row-major, double precision, nominal range [0, 1].

    ``data`` has shape ``(height, width)``; intensities outside [0, 1] are
    allowed for intermediate results such as neighborhood sums.
    """
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise ParameterError(f"RasterGray expects a 2D array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ParameterError(f"RasterGray must be at least 1x1, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ParameterError("RasterGray values must be finite")
        object.__setattr__(self, "data", _frozen(data, np.float64))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @classmethod
    def zeros(cls, height: int, width: int) -> "RasterGray":
        return cls(np.zeros((height, width)))

    def to_array(self) -> np.ndarray:
        """Writable copy of the pixel data."""
        return np.array(self.data)


@dataclass(frozen=True, eq=False)
class RasterRgb:
    """Three-channel 8-bit image with shape ``(height, width, 3)``."""
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ParameterError(f"RasterRgb expects shape (H, W, 3), got {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ParameterError(f"RasterRgb must be at least 1x1, got shape {data.shape}")
        if data.dtype != np.uint8:
            if np.any(data < 0) or np.any(data > 255):
                raise ParameterError("RasterRgb channel values must lie in [0, 255]")
        object.__setattr__(self, "data", _frozen(data, np.uint8))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape[:2]

    @classmethod
    def from_gray(cls, img: RasterGray) -> "RasterRgb":
        """Replicate a [0, 1] gray image into three 8-bit channels."""
        levels = np.clip(np.rint(img.data * 255.0), 0, 255).astype(np.uint8)
        return cls(np.repeat(levels[:, :, None], 3, axis=2))

    def to_array(self) -> np.ndarray:
        return np.array(self.data)


@dataclass(frozen=True, eq=False)
class BitMask:
    """Boolean per-pixel mask with shape ``(height, width)``."""
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2:
            raise ParameterError(f"BitMask expects a 2D array, got shape {bits.shape}")
        object.__setattr__(self, "bits", _frozen(bits, np.bool_))

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.bits.shape

    @classmethod
    def empty(cls, height: int, width: int) -> "BitMask":
        return cls(np.zeros((height, width), dtype=bool))

    def count(self) -> int:
        return int(self.bits.sum())

    def to_gray(self) -> RasterGray:
        return RasterGray(self.bits.astype(np.float64))


@dataclass(frozen=True, eq=False)
class Kernel2D:
    """Correlation template with odd row and column counts."""
    weights: np.ndarray

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=np.float64)
        if weights.ndim != 2:
            raise InvalidKernelError(f"Kernel must be 2D, got shape {weights.shape}")
        rows, cols = weights.shape
        if rows < 1 or cols < 1 or rows % 2 == 0 or cols % 2 == 0:
            raise InvalidKernelError(f"Kernel dimensions must be odd and positive, got {rows}x{cols}")
        if not np.all(np.isfinite(weights)):
            raise InvalidKernelError("Kernel weights must be finite")
        object.__setattr__(self, "weights", _frozen(weights, np.float64))

    @property
    def rows(self) -> int:
        return self.weights.shape[0]

    @property
    def cols(self) -> int:
        return self.weights.shape[1]

    @classmethod
    def ones(cls, rows: int = 3, cols: int = 3) -> "Kernel2D":
        return cls(np.ones((rows, cols)))

    @classmethod
    def gaussian(cls, sigma: float, truncate: float = 3.0) -> "Kernel2D":
        if sigma <= 0:
            raise ParameterError(f"Gaussian sigma must be positive, got {sigma}")
        half = max(1, int(np.ceil(truncate * sigma)))
        axis = np.arange(-half, half + 1, dtype=np.float64)
        profile = np.exp(-0.5 * (axis / sigma)**2)
        weights = np.outer(profile, profile)
        return cls(weights / weights.sum())


@dataclass(frozen=True, eq=False)
class Spectrum2D:
    """Unnormalized forward 2D DFT coefficients ``F[u, v]`` of an N x M input."""
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs)
        if coeffs.ndim != 2 or coeffs.size == 0:
            raise ParameterError(f"Spectrum2D expects a non-empty 2D array, got shape {coeffs.shape}")
        object.__setattr__(self, "coeffs", _frozen(coeffs, np.complex128))

    @property
    def rows(self) -> int:
        return self.coeffs.shape[0]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[1]

    def energy(self) -> float:
        return float(np.sum(np.abs(self.coeffs)**2))


def check_same_shape(*items) -> None:
    shapes = {tuple(item.shape) for item in items}
    if len(shapes) != 1:
        raise DimensionMismatchError(f"Dimension mismatch: {sorted(shapes)}")
