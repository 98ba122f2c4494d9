# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Thermal hotspot segmentation."""

from .hotspot import (  # noqa: F401
    ThermalParams, Histogram256, HotspotComponent, neighborhood_sum, quantize, histogram256,
    between_class_scores, otsu_threshold, extract_hotspots, edge_map, expose_neighbor_edges,
    label_components,
)
