# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Patch classification and proposal filtering."""

import logging
from typing import List, Sequence, Tuple

import numpy as np
import torch

from ..raster import RasterGray, crop, resize_bilinear
from ..proposal import ProposalRegion
from .model import CLASSES, PATCH_SIZE, REJECT_CLASS, CnnModel, to_batch

logger = logging.getLogger(__name__)


def _as_patch(patch: RasterGray) -> np.ndarray:
    if patch.shape != (PATCH_SIZE, PATCH_SIZE):
        patch = resize_bilinear(patch, PATCH_SIZE, PATCH_SIZE)
    return patch.data


def predict(model: CnnModel, patches: np.ndarray) -> np.ndarray:
    """Class probabilities ``(n, 3)`` for a stack of 64x64 patches."""
    with torch.no_grad():
        return model.probabilities(to_batch(patches)).numpy()


def classify(model: CnnModel, patch: RasterGray) -> Tuple[str, Tuple[float, ...]]:
    """Most probable label and the full probability vector."""
    probs = predict(model, _as_patch(patch)[None])[0]
    return CLASSES[int(np.argmax(probs))], tuple(float(p) for p in probs)


def region_patches(img: RasterGray, regions: Sequence[ProposalRegion]) -> np.ndarray:
    """Each region's box cropped and bilinearly resampled to 64x64."""
    return np.stack([_as_patch(crop(img, *r.bbox)) for r in regions])


def label_regions(regions: Sequence[ProposalRegion],
                  probs: np.ndarray) -> List[ProposalRegion]:
    """Annotate with argmax labels and drop the reject class, preserving order."""
    survivors = []
    for region, p in zip(regions, probs):
        index = int(np.argmax(p))
        if CLASSES[index] == REJECT_CLASS:
            continue
        survivors.append(region.with_label(CLASSES[index], float(p[index])))
    return survivors


def filter_proposals(model: CnnModel, regions: Sequence[ProposalRegion],
                     img: RasterGray) -> List[ProposalRegion]:
    """Regions not classified as ``other``, labeled with class and confidence."""
    if not regions:
        return []
    survivors = label_regions(regions, predict(model, region_patches(img, regions)))
    logger.info(f"Classifier kept {len(survivors)} of {len(regions)} proposals")
    return survivors
