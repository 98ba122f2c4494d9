# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Vegetation extraction and tree-to-tower clearance."""

from .green import GreenThresholds, green_mask  # noqa: F401
from .facade import (  # noqa: F401
    FacadeConfig, VerticalSegment, facade_points, facade_segments, middle_segment,
    clearance_distance,
)
from .clearance import (  # noqa: F401
    ClearanceParams, ClearanceSide, ClearanceReport, clearance_report, corridor_mask,
    render_clearance_overlay,
)
