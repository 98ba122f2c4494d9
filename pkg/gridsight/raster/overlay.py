# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Annotation overlays drawn on top of RGB rasters."""

from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np
from PIL import ImageDraw

from ..common.errors import DimensionMismatchError
from .image import BitMask, RasterGray, RasterRgb
from .io import save_png, to_pil

Color = Tuple[int, int, int]

RED: Color = (255, 0, 0)
YELLOW: Color = (255, 255, 0)
WHITE: Color = (255, 255, 255)
GREEN: Color = (0, 255, 0)
CYAN: Color = (0, 255, 255)


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle outline; only the perimeter pixels are drawn."""
    x: int
    y: int
    w: int
    h: int
    color: Color = RED


@dataclass(frozen=True)
class Segment:
    """Straight segment between two pixel positions; ``dash`` > 0 draws it dotted."""
    x0: float
    y0: float
    x1: float
    y1: float
    color: Color = RED
    dash: int = 0


@dataclass(frozen=True, eq=False)
class MaskFill:
    """Recolor every set pixel of ``mask``; ``alpha`` < 1 blends with the image."""
    mask: BitMask
    color: Color = GREEN
    alpha: float = 1.0


Shape = Union[Box, Segment, MaskFill]


def _dash_points(seg: Segment):
    length = float(np.hypot(seg.x1 - seg.x0, seg.y1 - seg.y0))
    steps = max(1, int(np.ceil(length)))
    t = np.linspace(0.0, 1.0, steps + 1)
    xs = seg.x0 + t * (seg.x1 - seg.x0)
    ys = seg.y0 + t * (seg.y1 - seg.y0)
    for i in range(0, steps, 2 * seg.dash):
        j = min(i + seg.dash, steps)
        yield (xs[i], ys[i]), (xs[j], ys[j])


def render_overlay(img: Union[RasterRgb, RasterGray], shapes: Iterable[Shape]) -> RasterRgb:
    """Draw ``shapes`` in order onto a copy of ``img``."""
    if isinstance(img, RasterGray):
        img = RasterRgb.from_gray(img)
    canvas = img.to_array()
    # masks first so outlines stay visible
    shapes = list(shapes)
    for shape in shapes:
        if isinstance(shape, MaskFill):
            if shape.mask.shape != img.shape:
                raise DimensionMismatchError(
                    f"Overlay mask {shape.mask.shape} does not match image {img.shape}")
            bits = shape.mask.bits
            color = np.asarray(shape.color, dtype=np.float64)
            blended = (1.0 - shape.alpha) * canvas[bits] + shape.alpha * color
            canvas[bits] = np.clip(np.rint(blended), 0, 255).astype(np.uint8)

    im = to_pil(RasterRgb(canvas))
    draw = ImageDraw.Draw(im)
    for shape in shapes:
        if isinstance(shape, Box):
            if shape.w < 1 or shape.h < 1:
                continue
            draw.rectangle([shape.x, shape.y, shape.x + shape.w - 1, shape.y + shape.h - 1],
                           outline=shape.color)
        elif isinstance(shape, Segment):
            if shape.dash > 0:
                for start, end in _dash_points(shape):
                    draw.line([start, end], fill=shape.color)
            else:
                draw.line([(shape.x0, shape.y0), (shape.x1, shape.y1)], fill=shape.color)
    return RasterRgb(np.asarray(im, dtype=np.uint8))


def save_overlay(img: Union[RasterRgb, RasterGray], shapes: Iterable[Shape], path: str) -> None:
    save_png(render_overlay(img, shapes), path)
