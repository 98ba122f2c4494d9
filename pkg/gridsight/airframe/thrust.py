# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Motor sizing for the inspection multirotor."""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

from ..common.errors import MotorCountError, ParameterError

# Rated thrust of the reference drone motor
REFERENCE_MOTOR_THRUST_G = 21600

# Safety factor; reproduces 14279.65 g per motor for a 25963 g airframe on four motors
DEFAULT_ALPHA = 1.1


@dataclass(frozen=True)
class ThrustParams:
    total_weight_g: Real
    alpha: Real = DEFAULT_ALPHA
    n_motors: int = 4

    def __post_init__(self):
        if not self.total_weight_g > 0:
            raise ParameterError(f"total_weight_g must be positive, got {self.total_weight_g}")
        if not self.alpha > 0:
            raise ParameterError(f"alpha must be positive, got {self.alpha}")
        if self.n_motors < 0:
            raise ParameterError(f"n_motors must not be negative, got {self.n_motors}")


def thrust_per_motor(p: ThrustParams) -> Real:
    """Required thrust per motor in grams, ``2 * alpha * W / N``.

    Integer or ``Fraction`` inputs give an exact ``Fraction``; any float
    input gives a float.

    Raises
    ------
    MotorCountError
        If ``n_motors`` is zero.
    """
    if p.n_motors == 0:
        raise MotorCountError("Thrust per motor is undefined for zero motors")
    if all(isinstance(v, Rational) for v in (p.total_weight_g, p.alpha, p.n_motors)):
        return Fraction(2) * p.alpha * p.total_weight_g / p.n_motors
    return 2 * p.alpha * p.total_weight_g / p.n_motors


@dataclass(frozen=True)
class ThrustMargin:
    required_g: float
    rated_g: float

    @property
    def ratio(self) -> float:
        return self.rated_g / self.required_g

    @property
    def sufficient(self) -> bool:
        return self.rated_g >= self.required_g


def thrust_margin(required_g: float, rated_g: float) -> ThrustMargin:
    """Compare the required per-motor thrust with a motor's rated thrust."""
    if not required_g > 0 or not rated_g > 0:
        raise ParameterError(f"Thrust values must be positive, got {required_g}, {rated_g}")
    return ThrustMargin(required_g, rated_g)
