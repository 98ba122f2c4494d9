# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Image containers, conversion, convolution, DFT and file I/O."""

from .image import (  # noqa: F401
    RasterGray, RasterRgb, BitMask, Kernel2D, Spectrum2D, check_same_shape,
)
from .ops import to_gray, convolve2d, normalize, crop, resize_bilinear  # noqa: F401
from .spectral import dft2d, idft2d, spectrum_of  # noqa: F401
from .io import load_image, load_gray, save_image, save_png  # noqa: F401
from .overlay import (  # noqa: F401
    Box, Segment, MaskFill, render_overlay, save_overlay, RED, YELLOW, WHITE, GREEN, CYAN,
)
