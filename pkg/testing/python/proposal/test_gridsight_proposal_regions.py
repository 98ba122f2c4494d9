# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import numpy as np
import pytest

import gridsight
import gridsight.testing
from gridsight.proposal import (
    ProposalParams,
    ProposalRegion,
    box_iou,
    proposal_recall,
    propose_regions,
    render_proposal_overlay,
)
from gridsight.raster import RED, YELLOW, RasterGray
from gridsight.testing import scenes


def test_blank_image_has_no_proposals():
    assert propose_regions(RasterGray(np.full((64, 64), 0.5))) == []
    assert propose_regions(RasterGray.zeros(33, 47)) == []


def test_planted_objects_are_recalled():
    img, truth = scenes.proposal_scene(seed=0)
    regions = propose_regions(img)
    assert proposal_recall(truth, regions, 0.5) >= 0.8


def run_pooled_recall(n_scenes, texture):
    hits = total = 0
    for seed in range(n_scenes):
        img, truth = scenes.proposal_scene(seed=seed, texture=texture)
        regions = propose_regions(img)
        hits += sum(any(box_iou(box, r.bbox) >= 0.5 for r in regions) for box in truth)
        total += len(truth)
    assert total == 5 * n_scenes
    assert hits / total >= 0.8, f"recall {hits}/{total} with texture {texture}"


def test_recall_on_textured_composites():
    run_pooled_recall(50, texture=0.05)


def test_regions_respect_bounds_and_size():
    p = ProposalParams(max_regions=6)
    img, _ = scenes.proposal_scene(seed=1)
    regions = propose_regions(img, p)
    assert regions
    for subband in ("vertical", "horizontal"):
        assert len([r for r in regions if r.subband == subband]) <= 6
    for region in regions:
        x, y, w, h = region.bbox
        assert x >= 0 and y >= 0 and x + w <= img.width and y + h <= img.height
        assert region.area >= p.min_region_px
        assert region.entropy <= 0.0
        assert 0.0 < region.nfc_seed <= 1.0 + 1e-12
    subbands = [r.subband for r in regions]
    assert subbands == sorted(subbands, key=("vertical", "horizontal").index)


def test_proposals_are_deterministic():
    img, _ = scenes.proposal_scene(seed=2)
    first = [r.to_dict() for r in propose_regions(img)]
    assert [r.to_dict() for r in propose_regions(img)] == first


def test_wavelet_choice():
    img, truth = scenes.proposal_scene(seed=0)
    regions = propose_regions(img, ProposalParams(wavelet="db2"))
    assert regions
    assert all(r.bbox[0] % 2 == 0 and r.bbox[1] % 2 == 0 for r in regions)


def test_region_dict_round_trip():
    region = ProposalRegion((4, 6, 10, 12), "vertical", (3, 2), -1.25, 0.5)
    labeled = region.with_label("insulator", 0.91)
    assert ProposalRegion.from_dict(labeled.to_dict()) == labeled
    assert "label" not in region.to_dict()


def test_box_iou():
    assert box_iou((0, 0, 10, 10), (0, 0, 10, 10)) == 1.0
    assert box_iou((0, 0, 10, 10), (10, 0, 10, 10)) == 0.0
    assert box_iou((0, 0, 10, 10), (5, 0, 10, 10)) == pytest.approx(50 / 150)
    assert proposal_recall([], []) == 1.0
    assert proposal_recall([(0, 0, 4, 4)], [(1, 1, 4, 4)], iou=0.9) == 0.0


def test_overlay_colors_follow_subband():
    img = RasterGray(np.full((32, 32), 0.5))
    regions = [
        ProposalRegion((2, 2, 10, 10), "vertical", (1, 1), -1.0, 0.5),
        ProposalRegion((16, 16, 10, 10), "horizontal", (8, 8), -1.0, 0.5),
    ]
    overlay = render_proposal_overlay(img, regions).data
    assert tuple(overlay[2, 2]) == RED
    assert tuple(overlay[16, 16]) == YELLOW
    assert tuple(overlay[0, 0]) == (128, 128, 128)


if __name__ == "__main__":
    gridsight.testing.main()
