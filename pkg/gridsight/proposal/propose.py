# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Region proposals from the vertical and horizontal DWT detail subbands."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np

from ..raster import RasterGray
from .dwt import dwt2_level1
from .ripple import ProposalParams, group_by_nfc, grow_ripple, salient_pixel

logger = logging.getLogger(__name__)

PROPOSAL_SUBBANDS = ("vertical", "horizontal")

# Seeds with a smaller magnitude carry no structure
_SEED_EPS = 1e-12


@dataclass(frozen=True)
class ProposalRegion:
    """Candidate box ``(x, y, w, h)`` in original-image pixels.

    ``label`` and ``confidence`` are filled in by the classifier.
    """
    bbox: Tuple[int, int, int, int]
    subband: str
    seed: Tuple[int, int]
    entropy: float
    nfc_seed: float
    label: Optional[str] = None
    confidence: Optional[float] = None

    @property
    def area(self) -> int:
        return self.bbox[2] * self.bbox[3]

    def with_label(self, label: str, confidence: float) -> "ProposalRegion":
        return replace(self, label=label, confidence=confidence)

    def to_dict(self) -> dict:
        out = {
            "bbox": list(self.bbox),
            "subband": self.subband,
            "seed": list(self.seed),
            "entropy": round(self.entropy, 9),
            "nfc_seed": round(self.nfc_seed, 9),
        }
        if self.label is not None:
            out["label"] = self.label
            out["confidence"] = round(float(self.confidence), 6)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ProposalRegion":
        return cls(
            bbox=tuple(int(v) for v in d["bbox"]),
            subband=str(d["subband"]),
            seed=tuple(int(v) for v in d.get("seed", (0, 0))),
            entropy=float(d.get("entropy", 0.0)),
            nfc_seed=float(d.get("nfc_seed", 1.0)),
            label=d.get("label"),
            confidence=d.get("confidence"),
        )


def _to_image_box(group: np.ndarray, height: int, width: int) -> Tuple[int, int, int, int]:
    rows, cols = np.nonzero(group)
    r0, r1, c0, c1 = rows.min(), rows.max() + 1, cols.min(), cols.max() + 1
    x0, y0 = 2 * int(c0), 2 * int(r0)
    x1, y1 = min(width, 2 * int(c1)), min(height, 2 * int(r1))
    return x0, y0, x1 - x0, y1 - y0


def propose_in_subband(detail: np.ndarray, name: str, image_shape: Tuple[int, int],
                       p: ProposalParams) -> List[ProposalRegion]:
    """Repeat salient seed, ripple, grouping and suppression on one subband."""
    height, width = image_shape
    suppressed = np.zeros(detail.shape, dtype=bool)
    regions = []
    for _ in range(p.max_attempts):
        if len(regions) >= p.max_regions or suppressed.all():
            break
        seed = salient_pixel(detail, suppressed)
        if abs(detail[seed]) <= _SEED_EPS:
            break
        ripple = grow_ripple(detail, seed, p)
        group = group_by_nfc(detail, ripple, p.e_max)
        rows, cols = np.nonzero(group)
        suppressed[rows.min():rows.max() + 1, cols.min():cols.max() + 1] = True
        box = _to_image_box(group, height, width)
        if box[2] * box[3] < p.min_region_px:
            continue
        regions.append(
            ProposalRegion(
                bbox=box, subband=name, seed=seed, entropy=ripple.entropy, nfc_seed=ripple.nfc_seed))
    logger.debug(f"{name} subband: {len(regions)} regions")
    return regions


def propose_regions(img: RasterGray, p: ProposalParams = ProposalParams()) -> List[ProposalRegion]:
    """Candidate boxes from the vertical subband first, then the horizontal one."""
    bands = dwt2_level1(img, p.wavelet)
    with ThreadPoolExecutor(max_workers=len(PROPOSAL_SUBBANDS)) as executor:
        futures = [
            executor.submit(propose_in_subband, bands.detail(name), name, img.shape, p)
            for name in PROPOSAL_SUBBANDS
        ]
        per_band = [f.result() for f in futures]
    regions = [region for band in per_band for region in band]
    logger.info(f"Proposed {len(regions)} regions on a {img.width}x{img.height} image")
    return regions
