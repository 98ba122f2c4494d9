# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Exception types raised by gridsight.

Every error derives from ``GridSightError`` and from the builtin that best
describes it, so ``except ValueError`` keeps working for callers that do not
know about this package.
"""


class GridSightError(Exception):
    """Root of all gridsight errors."""


class InputError(GridSightError):
    """Raised when an input file or configuration cannot be used (CLI exit code 1)."""


class MissingFileError(InputError, FileNotFoundError):
    pass


class UnsupportedFormatError(InputError, ValueError):
    pass


class MalformedHeaderError(InputError, ValueError):
    pass


class ConfigError(InputError, ValueError):
    pass


class UsageError(GridSightError, ValueError):
    """Bad command line (CLI exit code 64)."""


class ParameterError(GridSightError, ValueError):
    pass


class InvalidKernelError(ParameterError):
    pass


class DimensionMismatchError(GridSightError, ValueError):
    pass


class DegenerateHistogramError(GridSightError, ValueError):
    pass


class DegenerateInputError(GridSightError, ValueError):
    pass


class ParityError(ParameterError):
    pass


class DegenerateSegmentError(GridSightError, ValueError):
    pass


class GeometryError(GridSightError, ValueError):
    pass


class ClearanceError(GridSightError, RuntimeError):
    pass


class ExhaustedError(GridSightError, RuntimeError):
    pass


class ZeroSpectrumError(GridSightError, ValueError):
    pass


class EmptyDatasetError(GridSightError, ValueError):
    pass


class DivergenceError(GridSightError, RuntimeError):

    def __init__(self, epoch: int, loss: float):
        super().__init__(f"Training diverged at epoch {epoch} (loss={loss})")
        self.epoch = epoch
        self.loss = loss


class SensorRangeError(GridSightError, ValueError):
    pass


class MotorCountError(GridSightError, ZeroDivisionError):
    pass


class ModelFormatError(InputError, ValueError):
    pass


__all__ = [
    "GridSightError",
    "InputError",
    "MissingFileError",
    "UnsupportedFormatError",
    "MalformedHeaderError",
    "ConfigError",
    "UsageError",
    "ParameterError",
    "InvalidKernelError",
    "DimensionMismatchError",
    "DegenerateHistogramError",
    "DegenerateInputError",
    "ParityError",
    "DegenerateSegmentError",
    "GeometryError",
    "ClearanceError",
    "ExhaustedError",
    "ZeroSpectrumError",
    "EmptyDatasetError",
    "DivergenceError",
    "SensorRangeError",
    "MotorCountError",
    "ModelFormatError",
]
