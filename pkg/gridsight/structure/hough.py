# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Straight-line Hough transform over an edge mask."""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy import ndimage

from ..common.errors import ParameterError
from ..raster import BitMask
from .lines import HoughLine, angular_distance

logger = logging.getLogger(__name__)

# Edge pixels voted per chunk
_CHUNK = 4096


@dataclass(frozen=True)
class HoughParams:
    """Accumulator resolution and vote threshold.

    ``min_votes`` of None means ``min_votes_ratio`` times the image height.
    """
    rho_res: float = 1.0
    theta_res: float = 1.0
    min_votes: Optional[int] = None
    min_votes_ratio: float = 0.3

    def __post_init__(self):
        if not self.rho_res > 0 or not self.theta_res > 0:
            raise ParameterError(
                f"Hough resolutions must be positive, got rho_res={self.rho_res}, theta_res={self.theta_res}")
        if self.min_votes is not None and self.min_votes < 1:
            raise ParameterError(f"min_votes must be >= 1, got {self.min_votes}")
        if not self.min_votes_ratio > 0:
            raise ParameterError(f"min_votes_ratio must be positive, got {self.min_votes_ratio}")

    def votes_for(self, height: int) -> int:
        if self.min_votes is not None:
            return self.min_votes
        return max(1, int(math.ceil(self.min_votes_ratio * height)))


@dataclass(frozen=True, eq=False)
class HoughAccumulator:
    """Vote counts indexed ``[rho_bin, theta_bin]``; rho bins are symmetric around zero."""
    votes: np.ndarray
    rhos: np.ndarray
    thetas: np.ndarray

    @property
    def rho_res(self) -> float:
        return float(self.rhos[1] - self.rhos[0]) if len(self.rhos) > 1 else 1.0


def hough_accumulator(edges: BitMask, rho_res: float = 1.0, theta_res: float = 1.0) -> HoughAccumulator:
    """Vote every edge pixel into ``rho = x cos(theta) + y sin(theta)`` bins."""
    h, w = edges.shape
    diag = math.hypot(w - 1, h - 1)
    half = int(math.ceil(diag / rho_res))
    rhos = np.arange(-half, half + 1, dtype=np.float64) * rho_res
    thetas = np.arange(0.0, 180.0, theta_res)
    n_rho, n_theta = len(rhos), len(thetas)

    rad = np.radians(thetas)
    cos_t, sin_t = np.cos(rad), np.sin(rad)
    ys, xs = np.nonzero(edges.bits)
    flat = np.zeros(n_rho * n_theta, dtype=np.int64)
    columns = np.arange(n_theta)
    for start in range(0, len(xs), _CHUNK):
        x = xs[start:start + _CHUNK, None].astype(np.float64)
        y = ys[start:start + _CHUNK, None].astype(np.float64)
        rho_idx = np.rint((x * cos_t + y * sin_t) / rho_res).astype(np.int64) + half
        flat += np.bincount((rho_idx * n_theta + columns).ravel(), minlength=n_rho * n_theta)
    return HoughAccumulator(flat.reshape(n_rho, n_theta), rhos, thetas)


def _local_maxima(votes: np.ndarray) -> np.ndarray:
    """3x3 maxima with theta wrapping onto the rho-mirrored opposite edge."""
    padded = np.concatenate([votes[::-1, -1:], votes, votes[::-1, :1]], axis=1)
    local = ndimage.maximum_filter(padded, size=3, mode="constant", cval=0)[:, 1:-1]
    return votes == local


def peaks(acc: HoughAccumulator, min_votes: int) -> List[HoughLine]:
    """Accumulator local maxima with at least ``min_votes``, strongest first."""
    votes = acc.votes
    n_rho, n_theta = votes.shape
    center = (n_rho - 1) // 2
    rows, cols = np.nonzero(_local_maxima(votes) & (votes >= min_votes))
    order = sorted(zip(rows.tolist(), cols.tolist()), key=lambda rc: (-int(votes[rc]), rc[1], rc[0]))
    kept = []
    for r, c in order:
        clash = False
        for kr, kc in kept:
            if abs(c - kc) <= 1 and abs(r - kr) <= 1:
                clash = True
            elif abs(c - kc) >= n_theta - 1 and abs((r - center) + (kr - center)) <= 1:
                clash = True
            if clash:
                break
        if not clash:
            kept.append((r, c))
    return [
        HoughLine(rho=float(acc.rhos[r]), theta=float(acc.thetas[c]), votes=int(votes[r, c]))
        for r, c in kept
    ]


def hough_lines(edges: BitMask,
                rho_res: float = 1.0,
                theta_res: float = 1.0,
                min_votes: Optional[int] = None) -> List[HoughLine]:
    """Detect straight lines in an edge mask.

    Parameters
    ----------
    edges : BitMask
        Edge pixels, typically from :func:`canny`.
    rho_res : float
        Distance resolution in pixels.
    theta_res : float
        Angular resolution in degrees.
    min_votes : int, optional
        Vote threshold; defaults to 0.3 times the image height.

    Returns
    -------
    list of HoughLine
        Peaks after 3x3 non-maximum suppression, sorted by votes descending
        (ties by theta, then rho).
    """
    params = HoughParams(rho_res, theta_res, min_votes)
    threshold = params.votes_for(edges.height)
    if edges.count() == 0:
        return []
    acc = hough_accumulator(edges, rho_res, theta_res)
    lines = peaks(acc, threshold)
    logger.debug(f"Hough found {len(lines)} lines with >= {threshold} votes")
    return lines


def hough_lines_with(edges: BitMask, params: HoughParams) -> List[HoughLine]:
    return hough_lines(edges, params.rho_res, params.theta_res, params.votes_for(edges.height))


def filter_lines_by_angle(lines: Sequence[HoughLine], center_deg: float,
                          half_window_deg: float) -> List[HoughLine]:
    """Lines whose orientation lies within ``half_window_deg`` of ``center_deg`` (mod 180)."""
    if not 0.0 < half_window_deg < 90.0:
        raise ParameterError(f"half_window_deg must lie in (0, 90), got {half_window_deg}")
    return [line for line in lines if angular_distance(line.theta, center_deg) <= half_window_deg]
