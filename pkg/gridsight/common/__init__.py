# Copyright (c) GridSight Authors.
# Licensed under the MIT License.

from .border_policy import BorderPolicy  # noqa: F401
from .errors import *  # noqa: F401, F403
