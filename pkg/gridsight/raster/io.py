# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""PNG and binary PGM/PPM reading and writing.

Decoding and encoding are delegated to Pillow. Binary PNM headers are checked
here first so that a truncated or non-8-bit file is reported with a precise
error instead of a generic decoder failure.
"""

import logging
import os
from typing import Tuple, Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..common.errors import (
    MalformedHeaderError,
    MissingFileError,
    UnsupportedFormatError,
)
from .image import RasterGray, RasterRgb
from .ops import to_gray

logger = logging.getLogger(__name__)

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"

_SAVE_FORMATS = {
    ".png": "PNG",
    ".pgm": "PPM",
    ".ppm": "PPM",
}

ImageLike = Union[RasterRgb, RasterGray]


def _read_pnm_header(raw: bytes) -> Tuple[str, int, int, int, int]:
    """Return ``(magic, width, height, maxval, data_offset)`` of a binary PNM."""
    magic = raw[:2].decode("ascii")
    fields = []
    pos = 2
    while len(fields) < 3:
        # whitespace and comments between fields
        while pos < len(raw) and raw[pos:pos + 1].isspace():
            pos += 1
        if pos < len(raw) and raw[pos:pos + 1] == b"#":
            while pos < len(raw) and raw[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(raw) and raw[pos:pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise MalformedHeaderError(f"{magic} header ends after {len(fields)} of 3 fields")
        fields.append(int(raw[start:pos]))
    if pos >= len(raw) or not raw[pos:pos + 1].isspace():
        raise MalformedHeaderError(f"{magic} header is not terminated by whitespace")
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"{magic} header declares an empty image {width}x{height}")
    if maxval != 255:
        raise UnsupportedFormatError(f"Only 8-bit {magic} files are supported, got maxval {maxval}")
    return magic, width, height, maxval, pos + 1


def _check_pnm(path: str, raw: bytes) -> None:
    magic, width, height, _, offset = _read_pnm_header(raw)
    channels = 1 if magic == "P5" else 3
    expected = width * height * channels
    if len(raw) - offset < expected:
        raise MalformedHeaderError(f"{path}: header declares {width}x{height} but only "
                                   f"{len(raw) - offset} of {expected} data bytes follow")


def _open(path: str) -> Image.Image:
    if not os.path.isfile(path):
        raise MissingFileError(f"No such image file: {path}")
    with open(path, "rb") as f:
        raw = f.read()
    if raw.startswith(PNG_SIGNATURE):
        pass
    elif raw[:2] in (b"P5", b"P6"):
        _check_pnm(path, raw)
    elif raw[:2] in (b"P1", b"P2", b"P3", b"P4"):
        raise UnsupportedFormatError(f"{path}: only binary PGM (P5) and PPM (P6) are supported")
    else:
        raise UnsupportedFormatError(f"{path}: not a PNG, PGM or PPM file")
    try:
        im = Image.open(path)
        im.load()
    except (UnidentifiedImageError, OSError, SyntaxError) as err:
        raise MalformedHeaderError(f"{path}: {err}") from err
    return im


def load_image(path: str) -> RasterRgb:
    """Read an 8-bit PNG/PGM/PPM file; gray inputs are replicated to three channels."""
    path = os.fspath(path)
    im = _open(path)
    if im.mode in ("I", "I;16", "I;16B", "F"):
        raise UnsupportedFormatError(f"{path}: only 8-bit images are supported, got mode {im.mode}")
    if im.mode != "RGB":
        im = im.convert("RGB")
    logger.debug(f"Loaded {path} ({im.width}x{im.height})")
    return RasterRgb(np.asarray(im, dtype=np.uint8))


def load_gray(path: str) -> RasterGray:
    """Read an image as luminance in [0, 1]; 8-bit gray files map to ``v / 255``."""
    path = os.fspath(path)
    im = _open(path)
    if im.mode == "L":
        return RasterGray(np.asarray(im, dtype=np.float64) / 255.0)
    if im.mode in ("I", "I;16", "I;16B", "F"):
        raise UnsupportedFormatError(f"{path}: only 8-bit images are supported, got mode {im.mode}")
    return to_gray(RasterRgb(np.asarray(im.convert("RGB"), dtype=np.uint8)))


def to_pil(img: ImageLike) -> Image.Image:
    if isinstance(img, RasterRgb):
        return Image.fromarray(np.ascontiguousarray(img.data))
    levels = np.clip(np.rint(img.data * 255.0), 0, 255).astype(np.uint8)
    return Image.fromarray(levels)


def save_image(img: ImageLike, path: str) -> None:
    """Write ``img`` in the format named by the file suffix (.png, .pgm, .ppm).

    Gray rasters are quantized to 8 bits. A ``.pgm`` target requires a gray
    raster and a ``.ppm`` target an RGB one.
    """
    path = os.fspath(path)
    suffix = os.path.splitext(path)[1].lower()
    if suffix not in _SAVE_FORMATS:
        raise UnsupportedFormatError(f"Cannot write {path}: use .png, .pgm or .ppm")
    if suffix == ".pgm" and isinstance(img, RasterRgb):
        img = to_gray(img)
    if suffix == ".ppm" and isinstance(img, RasterGray):
        img = RasterRgb.from_gray(img)
    _write(to_pil(img), path, _SAVE_FORMATS[suffix])


def save_png(img: ImageLike, path: str) -> None:
    """Write ``img`` as PNG regardless of the file suffix."""
    _write(to_pil(img), os.fspath(path), "PNG")


def _write(im: Image.Image, path: str, fmt: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    im.save(path, format=fmt)
    logger.debug(f"Wrote {path}")
