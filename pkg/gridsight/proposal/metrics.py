# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Box overlap, proposal recall and proposal overlays."""

from typing import Iterable, Sequence, Tuple, Union

from ..raster import RED, WHITE, YELLOW, Box, RasterGray, RasterRgb, render_overlay
from .propose import ProposalRegion

BBox = Tuple[int, int, int, int]

SUBBAND_COLORS = {"vertical": RED, "horizontal": YELLOW}


def box_iou(a: BBox, b: BBox) -> float:
    """Intersection over union of two ``(x, y, w, h)`` boxes."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    iw = min(ax + aw, bx + bw) - max(ax, bx)
    ih = min(ay + ah, by + bh) - max(ay, by)
    if iw <= 0 or ih <= 0:
        return 0.0
    inter = iw * ih
    union = aw * ah + bw * bh - inter
    return inter / union if union > 0 else 0.0


def proposal_recall(truth: Sequence[BBox], regions: Iterable[Union[ProposalRegion, BBox]],
                    iou: float = 0.5) -> float:
    """Fraction of ground-truth boxes overlapped by some proposal at ``iou`` or better."""
    if not truth:
        return 1.0
    boxes = [r.bbox if isinstance(r, ProposalRegion) else tuple(r) for r in regions]
    hits = sum(1 for t in truth if any(box_iou(t, b) >= iou for b in boxes))
    return hits / len(truth)


def render_proposal_overlay(img: Union[RasterGray, RasterRgb],
                            regions: Iterable[ProposalRegion]) -> RasterRgb:
    """Vertical-subband boxes red, horizontal yellow, unknown subbands white."""
    shapes = [Box(*r.bbox, color=SUBBAND_COLORS.get(r.subband, WHITE)) for r in regions]
    return render_overlay(img, shapes)
