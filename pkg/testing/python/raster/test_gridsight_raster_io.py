# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import numpy as np
import pytest

import gridsight
import gridsight.testing
from gridsight.common.errors import (
    MalformedHeaderError,
    MissingFileError,
    UnsupportedFormatError,
)
from gridsight.raster import (
    RED,
    BitMask,
    Box,
    MaskFill,
    RasterGray,
    RasterRgb,
    load_gray,
    load_image,
    render_overlay,
    save_image,
    save_overlay,
    save_png,
)


def random_rgb(seed, shape=(17, 23)):
    rng = np.random.default_rng(seed)
    return RasterRgb(rng.integers(0, 256, (*shape, 3), dtype=np.uint8))


def run_round_trip(tmp_path, suffix):
    img = random_rgb(7)
    path = str(tmp_path / f"frame{suffix}")
    save_image(img, path)
    np.testing.assert_array_equal(load_image(path).data, img.data)


def test_png_round_trip(tmp_path):
    run_round_trip(tmp_path, ".png")


def test_ppm_round_trip(tmp_path):
    run_round_trip(tmp_path, ".ppm")


def test_gray_round_trip(tmp_path):
    levels = np.random.default_rng(8).integers(0, 256, (12, 9))
    img = RasterGray(levels / 255.0)
    for suffix in (".png", ".pgm"):
        path = str(tmp_path / f"gray{suffix}")
        save_image(img, path)
        np.testing.assert_allclose(load_gray(path).data, levels / 255.0, atol=1e-15)


def test_missing_file(tmp_path):
    with pytest.raises(MissingFileError):
        load_image(str(tmp_path / "nope.png"))


def test_unsupported_and_malformed(tmp_path):
    ascii_pgm = tmp_path / "ascii.pgm"
    ascii_pgm.write_bytes(b"P2\n2 2\n255\n0 1 2 3\n")
    with pytest.raises(UnsupportedFormatError):
        load_image(str(ascii_pgm))
    deep = tmp_path / "deep.pgm"
    deep.write_bytes(b"P5\n2 2\n65535\n" + bytes(8))
    with pytest.raises(UnsupportedFormatError):
        load_image(str(deep))
    junk = tmp_path / "junk.png"
    junk.write_bytes(b"GIF89a....")
    with pytest.raises(UnsupportedFormatError):
        load_image(str(junk))
    broken = tmp_path / "broken.ppm"
    broken.write_bytes(b"P6\nabc 2\n255\n")
    with pytest.raises(MalformedHeaderError):
        load_image(str(broken))
    short = tmp_path / "short.ppm"
    short.write_bytes(b"P6\n4 4\n255\n" + bytes(10))
    with pytest.raises(MalformedHeaderError):
        load_image(str(short))
    with pytest.raises(UnsupportedFormatError):
        save_image(random_rgb(1), str(tmp_path / "frame.jpg"))


def test_box_overlay_recolors_perimeter_only(tmp_path):
    img = RasterRgb(np.zeros((10, 10, 3), dtype=np.uint8))
    x, y, w, h = 2, 3, 4, 5
    path = str(tmp_path / "overlay.png")
    save_overlay(img, [Box(x, y, w, h, RED)], path)
    out = load_image(path).data
    expected = np.zeros((10, 10), dtype=bool)
    for i in range(y, y + h):
        for j in range(x, x + w):
            if i in (y, y + h - 1) or j in (x, x + w - 1):
                expected[i, j] = True
    painted = np.any(out != 0, axis=2)
    np.testing.assert_array_equal(painted, expected)
    assert np.all(out[expected] == RED)


def test_mask_overlay():
    img = RasterGray(np.zeros((6, 6)))
    bits = np.zeros((6, 6), dtype=bool)
    bits[1:3, 2:5] = True
    out = render_overlay(img, [MaskFill(BitMask(bits), (0, 255, 0))]).data
    assert np.all(out[bits] == (0, 255, 0))
    assert np.all(out[~bits] == 0)


def test_save_png_of_gray(tmp_path):
    path = str(tmp_path / "nested" / "mask.png")
    save_png(BitMask(np.eye(4, dtype=bool)).to_gray(), path)
    np.testing.assert_array_equal(load_gray(path).data, np.eye(4))


if __name__ == "__main__":
    gridsight.testing.main()
