# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import struct

import numpy as np
import pytest
import torch

import gridsight
import gridsight.testing
from gridsight.common.errors import MissingFileError, ModelFormatError
from gridsight.classifier import MAGIC, build_model, classify, load_model, save_model
from gridsight.raster import RasterGray


def test_round_trip_is_bit_exact(tmp_path):
    model = build_model(11)
    path = tmp_path / "model.gscnn"
    save_model(model, str(path))
    loaded = load_model(str(path))
    assert loaded.architecture == "cnn8" and loaded.seed == 11
    for (name, pa), (_, pb) in zip(model.named_weights(), loaded.named_weights()):
        assert torch.equal(pa, pb), name
    patch = RasterGray(np.random.default_rng(111).random((64, 64)))
    assert classify(model, patch) == classify(loaded, patch)


def test_header_layout(tmp_path):
    path = tmp_path / "linear.gscnn"
    save_model(build_model(3, "linear"), str(path))
    raw = path.read_bytes()
    assert raw.startswith(MAGIC)
    (version,) = struct.unpack("<H", raw[6:8])
    assert version == 1
    (length,) = struct.unpack("<H", raw[8:10])
    assert raw[10:10 + length] == b"linear"
    assert load_model(str(path)).architecture == "linear"


def test_bad_files(tmp_path):
    with pytest.raises(MissingFileError):
        load_model(str(tmp_path / "absent.gscnn"))

    path = tmp_path / "model.gscnn"
    save_model(build_model(0), str(path))
    raw = path.read_bytes()

    bad = tmp_path / "bad.gscnn"
    bad.write_bytes(b"XXXXXX" + raw[6:])
    with pytest.raises(ModelFormatError):
        load_model(str(bad))
    bad.write_bytes(raw[:-8])
    with pytest.raises(ModelFormatError):
        load_model(str(bad))
    bad.write_bytes(raw + b"\0")
    with pytest.raises(ModelFormatError):
        load_model(str(bad))
    bad.write_bytes(raw[:6] + struct.pack("<H", 9) + raw[8:])
    with pytest.raises(ModelFormatError):
        load_model(str(bad))


if __name__ == "__main__":
    gridsight.testing.main()
