# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import math

import numpy as np
import pytest

import gridsight
import gridsight.testing
from gridsight.common.errors import DegenerateSegmentError, GeometryError, ParameterError, ParityError
from gridsight.structure import HoughLine
from gridsight.vegetation import (
    FacadeConfig,
    clearance_distance,
    facade_points,
    facade_segments,
    middle_segment,
)


def test_points_examples():
    assert facade_points((0.0, 0.0), (4.0, 0.0), 3) == [(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]
    assert facade_points((2.0, 6.0), (10.0, 2.0), 1) == [(6.0, 4.0)]
    with pytest.raises(ParityError):
        facade_points((0.0, 0.0), (4.0, 0.0), 4)
    with pytest.raises(DegenerateSegmentError):
        facade_points((1.0, 1.0), (1.0, 1.0), 3)


def test_points_are_evenly_spaced_and_symmetric():
    rng = np.random.default_rng(41)
    for _ in range(50):
        p = tuple(rng.uniform(-100, 100, 2))
        q = tuple(rng.uniform(-100, 100, 2))
        n = int(rng.integers(0, 10)) * 2 + 1
        points = [p] + facade_points(p, q, n) + [q]
        steps = [math.dist(a, b) for a, b in zip(points, points[1:])]
        assert max(steps) - min(steps) <= 1e-9
        mid = ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0)
        inner = points[1:-1]
        for a, b in zip(inner, inner[::-1]):
            assert abs(a[0] + b[0] - 2 * mid[0]) <= 1e-9
            assert abs(a[1] + b[1] - 2 * mid[1]) <= 1e-9


def test_segments_between_parallel_diagonals():
    upper = HoughLine.from_slope_intercept(0.5, 10.0)
    lower = HoughLine.from_slope_intercept(0.5, 60.0)
    segments = facade_segments(upper, lower, 3, 101, 200)
    assert [round(s.x, 9) for s in segments] == [25.0, 50.0, 75.0]
    for s in segments:
        assert abs(s.y0 - (10.0 + 0.5 * s.x)) <= 1e-9
        assert abs(s.y1 - (60.0 + 0.5 * s.x)) <= 1e-9
    assert middle_segment(segments) is segments[1]
    single = facade_segments(upper, lower, 1, 101, 200)
    assert len(single) == 1 and abs(single[0].x - 50.0) <= 1e-9


def test_vertical_diagonal_is_rejected():
    upper = HoughLine.from_slope_intercept(0.5, 10.0)
    with pytest.raises(GeometryError):
        facade_segments(upper, HoughLine(50.0, 0.0), 3, 101, 200)
    with pytest.raises(GeometryError):
        facade_segments(HoughLine(50.0, 0.0), upper, 3, 101, 200)
    with pytest.raises(GeometryError):
        # misses the frame entirely
        facade_segments(HoughLine.from_slope_intercept(0.5, 500.0), upper, 3, 101, 200)


def test_distance_examples():
    assert clearance_distance(100.0, 250.0, 0.05) == pytest.approx(7.5)
    assert clearance_distance(250.0, 100.0, 0.05) == pytest.approx(7.5)
    assert clearance_distance(80.0, 80.0, 0.05) == 0.0
    with pytest.raises(ParameterError):
        clearance_distance(0.0, 10.0, 0.0)


def test_distance_is_linear_in_scale():
    rng = np.random.default_rng(42)
    for _ in range(100):
        tower, middle = rng.uniform(0, 500, 2)
        mpp = float(rng.uniform(0.01, 1.0))
        assert clearance_distance(tower, middle, 2 * mpp) == 2 * clearance_distance(tower, middle, mpp)


def test_config_is_validated():
    with pytest.raises(ParityError):
        FacadeConfig(n_points=4)
    with pytest.raises(ParameterError):
        FacadeConfig(meter_per_pixel=-1.0)
    with pytest.raises(ParameterError):
        FacadeConfig(measure_fraction=1.5)


if __name__ == "__main__":
    gridsight.testing.main()
