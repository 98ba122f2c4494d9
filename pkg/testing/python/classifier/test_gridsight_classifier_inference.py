# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import functools

import numpy as np

import gridsight
import gridsight.testing
from gridsight.classifier import (
    TrainConfig,
    build_model,
    filter_proposals,
    label_regions,
    make_toy_dataset,
    region_patches,
    train,
)
from gridsight.proposal import ProposalRegion
from gridsight.raster import RasterGray
from gridsight.testing import scenes


@functools.lru_cache(maxsize=None)
def trained_model():
    return train(build_model(0), make_toy_dataset(seed=0), TrainConfig(seed=0))


def _region(bbox, subband="vertical"):
    return ProposalRegion(bbox, subband, (0, 0), -1.0, 0.5)


def test_empty_region_list():
    assert filter_proposals(build_model(0), [], RasterGray.zeros(32, 32)) == []


def test_reject_class_is_dropped():
    regions = [_region((0, 0, 8, 8)), _region((8, 8, 8, 8))]
    probs = np.array([[0.8, 0.1, 0.1], [0.05, 0.05, 0.9]])
    survivors = label_regions(regions, probs)
    assert len(survivors) == 1
    assert survivors[0].bbox == (0, 0, 8, 8)
    assert survivors[0].label == "insulator" and survivors[0].confidence == 0.8


def test_region_patches_are_resampled():
    img = RasterGray(np.random.default_rng(121).random((50, 70)))
    patches = region_patches(img, [_region((0, 0, 10, 30)), _region((20, 10, 50, 40))])
    assert patches.shape == (2, 64, 64)


def test_survivors_are_a_subsequence():
    img = RasterGray(np.random.default_rng(122).random((96, 96)))
    regions = [_region((x, y, 24, 24)) for x in (0, 30, 60) for y in (0, 40)]
    survivors = filter_proposals(build_model(5), regions, img)
    boxes = [r.bbox for r in regions]
    positions = [boxes.index(r.bbox) for r in survivors]
    assert positions == sorted(positions)


def test_trained_model_rejects_noise():
    data = scenes.noisy_field(128, 128, seed=4)
    insulator = scenes.plant_insulator(data, 20, 30)
    noise = [(70, 20, 24, 24), (60, 80, 32, 32), (8, 90, 16, 16)]
    img = RasterGray(data)
    survivors = filter_proposals(trained_model(), [_region(insulator)] + [_region(b) for b in noise], img)
    kept = {r.bbox: r.label for r in survivors}
    assert not set(noise) & set(kept)
    assert kept.get(insulator) == "insulator"


if __name__ == "__main__":
    gridsight.testing.main()
