# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""2D discrete Fourier transform with the unnormalized forward convention."""

import numpy as np

from .image import RasterGray, Spectrum2D


def dft2d(img: RasterGray) -> Spectrum2D:
    """``F[u, v] = sum_{x, y} f[x, y] exp(-2j pi (u x / N + v y / M))``.

    No padding is applied; the transform length equals the image size.
    """
    return Spectrum2D(np.fft.fft2(img.data))


def idft2d(spec: Spectrum2D) -> RasterGray:
    """Inverse of :func:`dft2d`; divides by ``N * M`` and keeps the real part."""
    return RasterGray(np.real(np.fft.ifft2(spec.coeffs)))


def spectrum_of(window: np.ndarray) -> Spectrum2D:
    """Spectrum of a raw coefficient array that may hold negative values."""
    return Spectrum2D(np.fft.fft2(np.asarray(window, dtype=np.float64)))
