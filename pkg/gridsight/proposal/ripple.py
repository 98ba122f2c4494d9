# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Elastic-ripple growth around a salient detail coefficient.

A square window centered on the seed grows one coefficient per step. At
every radius the window's DFT is turned into normalized Fourier coefficients
(NFC) and their entropy ``h = sum NFC * ln(NFC)`` is recorded. Growth stops
when ``h`` plateaus or the radius limit is reached. Coefficients of the final
window whose normalized magnitude matches the seed's within ``e_max`` and
that are 8-connected to it form one group.
"""

import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy import ndimage

from ..common.errors import ExhaustedError, ParameterError, ZeroSpectrumError
from ..raster import BitMask, Spectrum2D, spectrum_of

logger = logging.getLogger(__name__)

Coord = Tuple[int, int]


@dataclass(frozen=True)
class ProposalParams:
    e_max: float = 0.05
    max_regions: int = 16
    max_radius: int = 32
    entropy_plateau_eps: float = 1e-3
    plateau_steps: int = 3
    min_region_px: int = 64
    wavelet: str = "haar"
    # seeds tried per subband, kept or discarded
    max_attempts: int = 64

    def __post_init__(self):
        if not self.e_max > 0:
            raise ParameterError(f"e_max must be positive, got {self.e_max}")
        if self.max_regions < 1:
            raise ParameterError(f"max_regions must be >= 1, got {self.max_regions}")
        if self.max_radius < 1:
            raise ParameterError(f"max_radius must be >= 1, got {self.max_radius}")
        if self.plateau_steps < 1:
            raise ParameterError(f"plateau_steps must be >= 1, got {self.plateau_steps}")
        if not self.entropy_plateau_eps > 0:
            raise ParameterError(f"entropy_plateau_eps must be positive, got {self.entropy_plateau_eps}")
        if self.min_region_px < 0:
            raise ParameterError(f"min_region_px must be >= 0, got {self.min_region_px}")
        if self.max_attempts < self.max_regions:
            raise ParameterError(
                f"max_attempts ({self.max_attempts}) must be >= max_regions ({self.max_regions})")


@dataclass(frozen=True)
class RippleState:
    """Final ripple around ``seed``; ``bounds`` is ``(row0, row1, col0, col1)``, end-exclusive."""
    seed: Coord
    radius: int
    entropy_trace: Tuple[float, ...]
    nfc_seed: float
    bounds: Tuple[int, int, int, int]

    @property
    def entropy(self) -> float:
        return self.entropy_trace[-1]


def nfc(spec: Spectrum2D) -> np.ndarray:
    """``|F[u, v]| / sqrt(sum |F|^2)``; the squares of the result sum to one."""
    magnitude = np.abs(spec.coeffs)
    energy = float(np.sqrt(np.sum(magnitude**2)))
    if energy == 0.0:
        raise ZeroSpectrumError("Cannot normalize an all-zero spectrum")
    return magnitude / energy


def ripple_entropy(nfc_window: np.ndarray) -> float:
    """``sum v * ln(v)`` over the positive values; zero entries contribute nothing."""
    values = np.asarray(nfc_window, dtype=np.float64).ravel()
    values = values[values > 0.0]
    return float(np.sum(values * np.log(values)))


def window_bounds(shape: Tuple[int, int], seed: Coord, radius: int) -> Tuple[int, int, int, int]:
    r, c = seed
    return (max(0, r - radius), min(shape[0], r + radius + 1), max(0, c - radius),
            min(shape[1], c + radius + 1))


def window_entropy(window: np.ndarray) -> float:
    try:
        return ripple_entropy(nfc(spectrum_of(window)))
    except ZeroSpectrumError:
        return 0.0


def window_nfc_map(window: np.ndarray) -> np.ndarray:
    """Per-coefficient normalized magnitude ``|w| sqrt(N M) / sqrt(sum |F|^2)``.

    By Parseval this equals ``|w| / ||w||``; it lives on the window grid, so it
    can be flood-filled from the seed.
    """
    spec = spectrum_of(window)
    energy = spec.energy()
    if energy == 0.0:
        return np.zeros(window.shape)
    return np.abs(window) * np.sqrt(window.size / energy)


def salient_pixel(detail: np.ndarray, suppressed: Union[BitMask, np.ndarray, None] = None) -> Coord:
    """Unsuppressed coordinate with the largest ``|coefficient|``, first in row-major order on ties."""
    detail = np.asarray(detail, dtype=np.float64)
    if suppressed is None:
        blocked = np.zeros(detail.shape, dtype=bool)
    else:
        blocked = suppressed.bits if isinstance(suppressed, BitMask) else np.asarray(suppressed, bool)
    if blocked.shape != detail.shape:
        raise ParameterError(f"Suppression mask {blocked.shape} does not match subband {detail.shape}")
    if blocked.all():
        raise ExhaustedError("Every coefficient of the subband is suppressed")
    score = np.where(blocked, -1.0, np.abs(detail))
    index = int(np.argmax(score))
    return divmod(index, detail.shape[1])


def grow_ripple(detail: np.ndarray, seed: Coord, p: ProposalParams = ProposalParams()) -> RippleState:
    """Grow the window radius ``1, 2, ...`` until the entropy plateaus or ``max_radius``.

    The plateau is ``plateau_steps`` consecutive radii whose entropy changed by
    less than ``entropy_plateau_eps``.
    """
    detail = np.asarray(detail, dtype=np.float64)
    if not (0 <= seed[0] < detail.shape[0] and 0 <= seed[1] < detail.shape[1]):
        raise ParameterError(f"Seed {seed} lies outside a subband of shape {detail.shape}")
    trace = []
    flat_steps = 0
    radius = 0
    for radius in range(1, p.max_radius + 1):
        r0, r1, c0, c1 = window_bounds(detail.shape, seed, radius)
        h = window_entropy(detail[r0:r1, c0:c1])
        if trace and abs(h - trace[-1]) < p.entropy_plateau_eps:
            flat_steps += 1
        else:
            flat_steps = 0
        trace.append(h)
        if flat_steps >= p.plateau_steps:
            break
    bounds = window_bounds(detail.shape, seed, radius)
    r0, r1, c0, c1 = bounds
    nfc_map = window_nfc_map(detail[r0:r1, c0:c1])
    nfc_seed = float(nfc_map[seed[0] - r0, seed[1] - c0])
    logger.debug(f"Ripple at {seed}: radius {radius}, h={trace[-1]:.6f}")
    return RippleState(tuple(seed), radius, tuple(trace), nfc_seed, bounds)


def flood_group(nfc_map: np.ndarray, seed: Coord, e_max: float) -> np.ndarray:
    """8-connected component of ``|nfc_map - nfc_map[seed]| <= e_max`` that holds ``seed``."""
    nfc_map = np.asarray(nfc_map, dtype=np.float64)
    admitted = np.abs(nfc_map - nfc_map[seed]) <= e_max
    labels, _ = ndimage.label(admitted, structure=np.ones((3, 3), dtype=int))
    return labels == labels[seed]


def group_by_nfc(detail: np.ndarray, ripple: RippleState, e_max: float) -> np.ndarray:
    """Boolean mask, subband-sized, of the coefficients grouped with the ripple seed."""
    detail = np.asarray(detail, dtype=np.float64)
    r0, r1, c0, c1 = ripple.bounds
    local = flood_group(
        window_nfc_map(detail[r0:r1, c0:c1]), (ripple.seed[0] - r0, ripple.seed[1] - c0), e_max)
    group = np.zeros(detail.shape, dtype=bool)
    group[r0:r1, c0:c1] = local
    return group
