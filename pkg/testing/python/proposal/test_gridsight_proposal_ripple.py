# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import math

import numpy as np
import pytest

import gridsight
import gridsight.testing
from gridsight.common.errors import ExhaustedError, ParameterError, ZeroSpectrumError
from gridsight.proposal import (
    ProposalParams,
    RippleState,
    flood_group,
    group_by_nfc,
    grow_ripple,
    nfc,
    ripple_entropy,
    salient_pixel,
    window_nfc_map,
)
from gridsight.raster import BitMask, Spectrum2D


def test_salient_pixel_examples():
    detail = np.zeros((6, 8))
    detail[3, 5] = -2.0
    assert salient_pixel(detail) == (3, 5)
    detail = np.zeros((4, 4))
    detail[0, 1] = detail[2, 0] = 1.5
    assert salient_pixel(detail) == (0, 1)
    suppressed = np.zeros((4, 4), dtype=bool)
    suppressed[0, :] = True
    assert salient_pixel(detail, BitMask(suppressed)) == (2, 0)
    with pytest.raises(ExhaustedError):
        salient_pixel(detail, np.ones((4, 4), dtype=bool))
    with pytest.raises(ParameterError):
        salient_pixel(detail, np.zeros((3, 4), dtype=bool))


def test_salient_pixel_matches_linear_scan():
    rng = np.random.default_rng(71)
    for _ in range(200):
        detail = rng.integers(-5, 6, size=(7, 9)).astype(np.float64)
        suppressed = rng.random((7, 9)) < 0.4
        if suppressed.all():
            continue
        best, best_value = None, -1.0
        for r in range(7):
            for c in range(9):
                if not suppressed[r, c] and abs(detail[r, c]) > best_value:
                    best, best_value = (r, c), abs(detail[r, c])
        assert salient_pixel(detail, suppressed) == best


def test_nfc_examples():
    coeffs = np.zeros((3, 3), dtype=complex)
    coeffs[1, 2] = 4 - 3j
    values = nfc(Spectrum2D(coeffs))
    assert values[1, 2] == 1.0
    assert values.sum() == 1.0
    np.testing.assert_allclose(nfc(Spectrum2D(np.array([[1, -1j], [1j, -1]]))), 0.5)
    with pytest.raises(ZeroSpectrumError):
        nfc(Spectrum2D(np.zeros((2, 2))))


def test_nfc_matches_direct_formula():
    rng = np.random.default_rng(72)
    for _ in range(50):
        coeffs = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        total = math.sqrt(sum(abs(v)**2 for v in coeffs.ravel()))
        expected = np.array([[abs(v) / total for v in row] for row in coeffs])
        values = nfc(Spectrum2D(coeffs))
        np.testing.assert_allclose(values, expected, atol=1e-12)
        assert abs(float(np.sum(values**2)) - 1.0) <= 1e-9
        assert values.min() >= 0.0 and values.max() <= 1.0


def test_entropy_examples():
    assert ripple_entropy(np.array([1.0, 0.0, 0.0, 0.0])) == 0.0
    assert ripple_entropy(np.full((2, 2), 0.5)) == pytest.approx(4 * 0.5 * math.log(0.5), abs=1e-4)


def test_entropy_matches_direct_sum():
    rng = np.random.default_rng(73)
    for _ in range(50):
        window = rng.random((5, 5))
        window[rng.random((5, 5)) < 0.2] = 0.0
        window /= np.sqrt(np.sum(window**2))
        expected = sum(v * math.log(v) for v in window.ravel() if v > 0)
        h = ripple_entropy(window)
        assert h == pytest.approx(expected, abs=1e-12)
        assert h < 0.0


def test_impulse_ripple_grows_to_limit():
    detail = np.zeros((64, 64))
    detail[32, 32] = 1.0
    state = grow_ripple(detail, (32, 32), ProposalParams(max_radius=8))
    assert state.radius == 8
    assert len(state.entropy_trace) == state.radius
    for r, h in enumerate(state.entropy_trace, start=1):
        side = 2 * r + 1
        assert h == pytest.approx(-side * math.log(side), abs=1e-9)
    assert all(a > b for a, b in zip(state.entropy_trace, state.entropy_trace[1:]))


def test_constant_field_plateaus():
    p = ProposalParams()
    state = grow_ripple(np.full((40, 40), 0.3), (20, 20), p)
    assert state.radius == p.plateau_steps + 1
    assert all(abs(h) <= 1e-12 for h in state.entropy_trace)


def test_ripple_clips_at_border():
    detail = np.random.default_rng(74).random((10, 10))
    state = grow_ripple(detail, (0, 9), ProposalParams(max_radius=5))
    r0, r1, c0, c1 = state.bounds
    assert (r0, c1) == (0, 10)
    assert r1 == state.radius + 1 and c0 == 9 - state.radius
    assert 0.0 < state.nfc_seed <= 1.0 + 1e-12
    with pytest.raises(ParameterError):
        grow_ripple(detail, (10, 0))


def test_flood_group_examples():
    uniform = np.full((5, 5), 0.2)
    assert flood_group(uniform, (2, 2), 1e-6).all()

    distinct = np.arange(25, dtype=np.float64).reshape(5, 5) / 25.0
    group = flood_group(distinct, (1, 3), 0.0)
    assert group.sum() == 1 and group[1, 3]

    clusters = np.full((6, 6), 0.9)
    clusters[:3, :3] = 0.1
    clusters[5, 5] = 0.1
    group = flood_group(clusters, (0, 0), 0.2)
    expected = np.zeros((6, 6), dtype=bool)
    expected[:3, :3] = True
    np.testing.assert_array_equal(group, expected)


def test_group_maps_window_back_to_subband():
    detail = np.zeros((20, 20))
    detail[8:12, 8:12] = 1.0
    state = RippleState((9, 9), 3, (0.0, ), 0.5, (6, 13, 6, 13))
    group = group_by_nfc(detail, state, 0.05)
    window = window_nfc_map(detail[6:13, 6:13])
    assert group[8:12, 8:12].all()
    assert group.sum() == 16
    np.testing.assert_allclose(window[2:6, 2:6], 0.25)


def test_params_are_validated():
    with pytest.raises(ParameterError):
        ProposalParams(e_max=0.0)
    with pytest.raises(ParameterError):
        ProposalParams(max_regions=0)
    with pytest.raises(ParameterError):
        ProposalParams(plateau_steps=0)
    with pytest.raises(ParameterError):
        ProposalParams(max_regions=10, max_attempts=5)


if __name__ == "__main__":
    gridsight.testing.main()
