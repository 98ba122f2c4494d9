# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
from fractions import Fraction

import pytest

import gridsight
import gridsight.testing
from gridsight.airframe import (
    DEFAULT_ALPHA,
    REFERENCE_MOTOR_THRUST_G,
    ThrustParams,
    thrust_margin,
    thrust_per_motor,
)
from gridsight.common.errors import MotorCountError, ParameterError


def test_examples():
    assert thrust_per_motor(ThrustParams(25963, 1.1, 4)) == pytest.approx(14279.65, abs=1e-9)
    assert thrust_per_motor(ThrustParams(25963, Fraction(11, 10), 4)) == Fraction(1427965, 100)
    assert thrust_per_motor(ThrustParams(1000, 1.0, 2)) == 1000.0
    assert thrust_per_motor(ThrustParams(777, Fraction(1, 2), 1)) == 777
    assert DEFAULT_ALPHA == 1.1


def test_integer_inputs_stay_exact():
    out = thrust_per_motor(ThrustParams(1000, 1, 3))
    assert isinstance(out, Fraction)
    assert out == Fraction(2000, 3)
    assert isinstance(thrust_per_motor(ThrustParams(1000, 1.1, 3)), float)


def test_exact_scaling():
    base = thrust_per_motor(ThrustParams(1200, Fraction(6, 5), 6))
    for k in (2, 3, 7):
        assert thrust_per_motor(ThrustParams(1200 * k, Fraction(6, 5), 6)) == k * base
        assert thrust_per_motor(ThrustParams(1200, Fraction(6, 5) * k, 6)) == k * base
        assert thrust_per_motor(ThrustParams(1200, Fraction(6, 5), 6 * k)) == base / k


def test_zero_motors():
    with pytest.raises(MotorCountError):
        thrust_per_motor(ThrustParams(1000, 1.1, 0))
    with pytest.raises(ZeroDivisionError):
        thrust_per_motor(ThrustParams(1000, 1.1, 0))


def test_params_are_validated():
    with pytest.raises(ParameterError):
        ThrustParams(0)
    with pytest.raises(ParameterError):
        ThrustParams(100, alpha=-1.0)
    with pytest.raises(ParameterError):
        ThrustParams(100, n_motors=-2)


def test_margin_against_rated_motor():
    margin = thrust_margin(thrust_per_motor(ThrustParams(25963)), REFERENCE_MOTOR_THRUST_G)
    assert margin.sufficient
    assert margin.ratio == pytest.approx(21600 / 14279.65)
    assert not thrust_margin(2.0, 1.0).sufficient
    with pytest.raises(ParameterError):
        thrust_margin(0.0, 1.0)


if __name__ == "__main__":
    gridsight.testing.main()
