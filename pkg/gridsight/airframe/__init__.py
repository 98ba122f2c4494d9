# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Platform sizing and sensing arithmetic."""

from .thrust import (  # noqa: F401
    DEFAULT_ALPHA, REFERENCE_MOTOR_THRUST_G, ThrustParams, ThrustMargin, thrust_per_motor, thrust_margin,
)
from .mass import BudgetItem, MassBudget, total_mass, reference_budget, load_budget_csv  # noqa: F401
from .alignment import (  # noqa: F401
    SENSOR_MIN_M, SENSOR_MAX_M, LaserReadings, alignment_angle, alignment_angles, readings,
)
