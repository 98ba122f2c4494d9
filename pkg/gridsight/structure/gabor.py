# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Gabor texture features, principal-component projection and tower masks."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage, signal

from .. import env
from ..common.errors import DegenerateInputError, ParameterError
from ..raster import BitMask, RasterGray
from ..thermal import otsu_threshold, histogram256, quantize

logger = logging.getLogger(__name__)

# Envelope width relative to the wavelength (one-octave bandwidth) and aspect ratio
SIGMA_PER_WAVELENGTH = 0.56
ASPECT = 0.5
# Gabor channels below this peak are left unscaled
_PEAK_EPS = 1e-8
# Gabor-channel variance at or below this cannot be projected
_VARIANCE_EPS = 1e-12


@dataclass(frozen=True)
class GaborParams:
    n_orient: int = 6
    wavelengths: Tuple[float, ...] = (4.0, 8.0, 16.0, 32.0)
    spatial_weight: float = 1.0 / 8.0
    smooth_factor: float = 0.5
    jobs: int = field(default_factory=lambda: env.JOBS)

    def __post_init__(self):
        if self.n_orient < 2:
            raise ParameterError(f"n_orient must be >= 2, got {self.n_orient}")
        if len(self.wavelengths) == 0 or any(not w > 0 for w in self.wavelengths):
            raise ParameterError(f"wavelengths must be positive, got {self.wavelengths}")
        if self.spatial_weight < 0:
            raise ParameterError(f"spatial_weight must be >= 0, got {self.spatial_weight}")
        object.__setattr__(self, "wavelengths", tuple(float(w) for w in self.wavelengths))


@dataclass(frozen=True, eq=False)
class GaborFeatureStack:
    """Per-pixel features, shape ``(channels, height, width)``.

    The first ``n_orient * n_wave`` channels hold Gabor magnitudes (orientation
    major); the last two hold the X and Y pixel coordinates scaled to [0, 1].
    ``spatial_weight`` is applied to the coordinate channels when the stack is
    flattened into a feature matrix.
    """
    channels: np.ndarray
    orientations: Tuple[float, ...]
    wavelengths: Tuple[float, ...]
    spatial_weight: float = 1.0 / 8.0

    def __post_init__(self):
        channels = np.array(self.channels, dtype=np.float64)
        expected = len(self.orientations) * len(self.wavelengths) + 2
        if channels.ndim != 3 or channels.shape[0] != expected:
            raise ParameterError(f"Feature stack needs {expected} channels, got shape {channels.shape}")
        if not np.all(np.isfinite(channels)):
            raise ParameterError("Feature stack values must be finite")
        channels.setflags(write=False)
        object.__setattr__(self, "channels", channels)

    @property
    def n_channels(self) -> int:
        return self.channels.shape[0]

    @property
    def height(self) -> int:
        return self.channels.shape[1]

    @property
    def width(self) -> int:
        return self.channels.shape[2]

    @property
    def n_gabor(self) -> int:
        return self.n_channels - 2

    def channel_index(self, orientation: float, wavelength: float) -> int:
        return (self.orientations.index(orientation) * len(self.wavelengths) +
                self.wavelengths.index(wavelength))

    def feature_matrix(self) -> np.ndarray:
        """``(pixels, channels)`` matrix, reshaped row-major, coordinates weighted."""
        matrix = self.channels.reshape(self.n_channels, -1).T.copy()
        matrix[:, -2:] *= self.spatial_weight
        return matrix


def gabor_kernel(wavelength: float, theta_deg: float, max_half: Optional[int] = None) -> np.ndarray:
    """Complex, zero-mean Gabor kernel whose carrier runs along ``theta_deg``.

    The kernel is scaled by the envelope sum, so a matched sinusoid of unit
    amplitude yields a response magnitude close to 0.5.
    """
    sigma = SIGMA_PER_WAVELENGTH * wavelength
    half = int(math.ceil(3.0 * sigma / ASPECT))
    if max_half is not None:
        half = max(1, min(half, max_half))
    axis = np.arange(-half, half + 1, dtype=np.float64)
    y, x = np.meshgrid(axis, axis, indexing="ij")
    theta = math.radians(theta_deg)
    xr = x * math.cos(theta) + y * math.sin(theta)
    yr = -x * math.sin(theta) + y * math.cos(theta)
    envelope = np.exp(-(xr**2 + (ASPECT * yr)**2) / (2.0 * sigma**2))
    carrier = np.exp(2j * math.pi * xr / wavelength)
    kernel = envelope * carrier
    kernel -= envelope * (kernel.sum() / envelope.sum())
    return kernel / envelope.sum()


def gabor_response(data: np.ndarray, wavelength: float, theta_deg: float,
                   smooth_factor: float = 0.5) -> np.ndarray:
    """Smoothed magnitude of the Gabor response, same shape as ``data``."""
    h, w = data.shape
    kernel = gabor_kernel(wavelength, theta_deg, max_half=max(h, w))
    half = kernel.shape[0] // 2
    padded = np.pad(data, half, mode="reflect") if min(h, w) > 1 else np.pad(data, half, mode="edge")
    # correlation is convolution with the conjugate-flipped kernel
    response = signal.fftconvolve(padded, np.conj(kernel[::-1, ::-1]), mode="valid")
    magnitude = np.abs(response)
    if smooth_factor > 0:
        magnitude = ndimage.gaussian_filter(magnitude, smooth_factor * wavelength, mode="reflect")
    return magnitude


def gabor_bank(img: RasterGray,
               n_orient: int = 6,
               wavelengths: Sequence[float] = (4.0, 8.0, 16.0, 32.0),
               params: Optional[GaborParams] = None) -> GaborFeatureStack:
    """Gabor magnitudes for every (orientation, wavelength) pair plus X/Y channels.

    Orientations are ``k * 180 / n_orient`` degrees. Channels are evaluated on a
    thread pool; each one is independent, so the result does not depend on the
    worker count.
    """
    if params is None:
        params = GaborParams(n_orient=n_orient, wavelengths=tuple(wavelengths))
    orientations = tuple(k * 180.0 / params.n_orient for k in range(params.n_orient))
    jobs = [(theta, lam) for theta in orientations for lam in params.wavelengths]
    data = img.data

    with ThreadPoolExecutor(max_workers=max(1, params.jobs)) as executor:
        futures = [
            executor.submit(gabor_response, data, lam, theta, params.smooth_factor)
            for theta, lam in jobs
        ]
        responses = [f.result() for f in futures]

    gabor = np.stack(responses)
    peak = float(gabor.max())
    if peak > _PEAK_EPS:
        gabor = gabor / peak
    h, w = img.shape
    xs = np.broadcast_to(np.linspace(0.0, 1.0, w) if w > 1 else np.zeros(1), (h, w))
    ys = np.broadcast_to((np.linspace(0.0, 1.0, h) if h > 1 else np.zeros(1))[:, None], (h, w))
    channels = np.concatenate([gabor, xs[None], ys[None]], axis=0)
    logger.debug(f"Gabor bank: {len(jobs)} channels on {w}x{h}")
    return GaborFeatureStack(channels, orientations, params.wavelengths, params.spatial_weight)


@dataclass(frozen=True, eq=False)
class PrincipalComponents:
    """Top-k covariance eigenvectors (rows of ``components``) and their scores."""
    components: np.ndarray
    variances: np.ndarray
    scores: np.ndarray
    mean: np.ndarray


def principal_components(stack: GaborFeatureStack, k: int = 1) -> PrincipalComponents:
    """Mean-centered PCA of the feature matrix.

    Each component's sign is fixed so that its largest-magnitude loading is
    positive.
    """
    matrix = stack.feature_matrix()
    n_pixels, n_channels = matrix.shape
    if not 1 <= k <= n_channels:
        raise ParameterError(f"Component count must lie in [1, {n_channels}], got {k}")
    if n_pixels <= n_channels:
        raise ParameterError(f"PCA needs more pixels ({n_pixels}) than channels ({n_channels})")
    if float(matrix[:, :stack.n_gabor].var(axis=0).sum()) <= _VARIANCE_EPS:
        raise DegenerateInputError("Gabor features have no variance; nothing to project")
    mean = matrix.mean(axis=0)
    centered = matrix - mean
    cov = centered.T @ centered / (n_pixels - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1][:k]
    components = eigvecs[:, order].T.copy()
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return PrincipalComponents(components, eigvals[order], centered @ components.T, mean)


def pca_project(stack: GaborFeatureStack, k: int = 1) -> RasterGray:
    """First principal component as a min-max normalized image."""
    if k != 1:
        raise ParameterError(f"pca_project produces one image, so k must be 1 (got {k}); "
                             "use principal_components for more")
    pcs = principal_components(stack, 1)
    score = pcs.scores[:, 0].reshape(stack.height, stack.width)
    lo, hi = float(score.min()), float(score.max())
    if hi <= lo:
        return RasterGray(np.zeros_like(score))
    return RasterGray((score - lo) / (hi - lo))


def tower_mask(pc_image: RasterGray, threshold: Optional[float] = None) -> BitMask:
    """Pixels above ``threshold``; Otsu's level on the 256-bin histogram when omitted."""
    if threshold is None:
        level = otsu_threshold(histogram256(pc_image))
        return BitMask(quantize(pc_image) > level)
    if not 0.0 <= threshold <= 1.0:
        raise ParameterError(f"Tower threshold must lie in [0, 1], got {threshold}")
    return BitMask(pc_image.data > threshold)
