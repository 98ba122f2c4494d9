# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Tower and transfer-line structure detection."""

from .lines import HoughLine, angular_distance  # noqa: F401
from .canny import CannyParams, canny, canny_with, gradient, non_maximum_suppression  # noqa: F401
from .hough import (  # noqa: F401
    HoughParams, HoughAccumulator, hough_accumulator, hough_lines, hough_lines_with, peaks,
    filter_lines_by_angle,
)
from .gabor import (  # noqa: F401
    GaborParams, GaborFeatureStack, PrincipalComponents, gabor_kernel, gabor_response, gabor_bank,
    principal_components, pca_project, tower_mask,
)
from .confine import confine_transfer_lines  # noqa: F401
from .towers import (  # noqa: F401
    LineFamilies, StructureResult, detect_structures, detect_towers_hough, detect_towers_gabor,
)
