# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import numpy as np
import pytest

import gridsight
import gridsight.testing
from gridsight.common.errors import DimensionMismatchError
from gridsight.raster import BitMask, RasterGray
from gridsight.structure import confine_transfer_lines, detect_structures, detect_towers_hough
from gridsight.structure.confine import BACKGROUND_LEVEL, LINE_LEVEL, TOWER_LEVEL
from gridsight.testing import scenes


def test_full_tower_mask_is_black():
    edges = BitMask(np.eye(16, dtype=bool))
    out = confine_transfer_lines(edges, BitMask(np.ones((16, 16), dtype=bool)))
    assert np.all(out.data == TOWER_LEVEL)


def test_empty_masks_are_white():
    out = confine_transfer_lines(BitMask.empty(12, 10), BitMask.empty(12, 10))
    assert out.shape == (12, 10)
    assert np.all(out.data == BACKGROUND_LEVEL)


def test_lines_outside_towers_stay_visible():
    edges = BitMask(np.eye(20, dtype=bool))
    towers = np.zeros((20, 20), dtype=bool)
    towers[5:10, 5:10] = True
    out = confine_transfer_lines(edges, BitMask(towers)).data
    assert np.all(out[towers] == TOWER_LEVEL)
    diagonal = np.eye(20, dtype=bool) & ~towers
    assert np.all(out[diagonal] == LINE_LEVEL)
    assert np.all(out[~diagonal & ~towers] == BACKGROUND_LEVEL)


def test_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        confine_transfer_lines(BitMask.empty(8, 8), BitMask.empty(8, 9))


def test_vertical_family_finds_tower():
    data = np.full((96, 96), 0.8)
    data[:, 40:44] = 0.1
    lines = detect_towers_hough(RasterGray(data))
    assert lines
    assert all(line.theta < 10.0 or line.theta > 170.0 for line in lines)
    assert any(abs(abs(line.rho) - 41.5) <= 3.0 for line in lines)


def test_structure_families_partition_by_angle():
    data = np.full((96, 96), 0.8)
    data[scenes.line_mask(96, 96, 60.0, 45.0)] = 0.1
    data[:, 20] = 0.1
    result = detect_structures(RasterGray(data))
    assert result.edges.shape == (96, 96)
    assert result.vertical and result.diagonal
    assert not set(map(id, result.vertical)) & set(map(id, result.diagonal))


if __name__ == "__main__":
    gridsight.testing.main()
