# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import numpy as np
import pytest

import gridsight
import gridsight.testing
from gridsight.common.errors import EmptyDatasetError, MissingFileError, ParameterError
from gridsight.classifier import CLASSES, LabeledDataset, load_dataset, make_toy_dataset, save_dataset
from gridsight.raster import RasterGray, save_png


def test_toy_dataset_is_balanced_and_deterministic():
    data = make_toy_dataset(seed=3, n_train=30, n_test=15)
    assert data.patches.shape == (45, 64, 64)
    assert data.patches.min() >= 0.0 and data.patches.max() <= 1.0
    train = data.subset("train")
    assert sorted(set(train.labels)) == sorted(CLASSES)
    assert all(train.labels.count(c) == 10 for c in CLASSES)
    np.testing.assert_array_equal(make_toy_dataset(seed=3, n_train=30, n_test=15).patches, data.patches)


def test_save_and_load(tmp_path):
    data = make_toy_dataset(seed=5, n_train=6, n_test=3)
    save_dataset(data, str(tmp_path))
    loaded = load_dataset(str(tmp_path))
    assert len(loaded) == 9
    assert len(loaded.subset("test")) == 3
    assert sorted(loaded.labels) == sorted(data.labels)
    assert np.abs(np.sort(loaded.patches.ravel()) - np.sort(data.patches.ravel())).max() <= 0.5 / 255 + 1e-12


def test_flat_layout_is_training_data(tmp_path):
    save_png(RasterGray(np.full((32, 20), 0.5)), str(tmp_path / "other" / "a.png"))
    save_png(RasterGray(np.full((64, 64), 0.2)), str(tmp_path / "insulator" / "b.png"))
    loaded = load_dataset(str(tmp_path))
    assert loaded.splits == ("train", "train")
    assert loaded.labels == ("insulator", "other")
    assert loaded.patches.shape == (2, 64, 64)


def test_bad_datasets(tmp_path):
    with pytest.raises(MissingFileError):
        load_dataset(str(tmp_path / "absent"))
    with pytest.raises(EmptyDatasetError):
        load_dataset(str(tmp_path))
    with pytest.raises(ParameterError):
        LabeledDataset(np.zeros((1, 64, 64)), ("tree", ), ("train", ))
    with pytest.raises(ParameterError):
        LabeledDataset(np.zeros((1, 32, 32)), ("other", ), ("train", ))
    with pytest.raises(ParameterError):
        LabeledDataset(np.zeros((1, 64, 64)), ("other", ), ("validation", ))


if __name__ == "__main__":
    gridsight.testing.main()
