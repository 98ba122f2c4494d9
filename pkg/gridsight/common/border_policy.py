# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
from enum import IntEnum
from typing import Union

from .errors import ParameterError


class BorderPolicy(IntEnum):
    Replicate = 0
    Zero = 1

    def is_replicate(self):
        return self == BorderPolicy.Replicate

    def is_zero(self):
        return self == BorderPolicy.Zero

    @property
    def ndimage_mode(self) -> str:
        # scipy.ndimage names for the two extensions
        return "nearest" if self.is_replicate() else "constant"

    @property
    def numpy_pad_mode(self) -> str:
        return "edge" if self.is_replicate() else "constant"

    @classmethod
    def parse(cls, value: Union[str, int, "BorderPolicy"]) -> "BorderPolicy":
        if isinstance(value, BorderPolicy):
            return value
        if isinstance(value, str):
            lookup = {"replicate": cls.Replicate, "zero": cls.Zero}
            if value.lower() not in lookup:
                raise ParameterError(f"Unknown border policy {value!r}, expected one of {sorted(lookup)}")
            return lookup[value.lower()]
        return cls(value)
