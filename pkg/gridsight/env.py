# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Process-wide settings read from the environment."""

import os
import logging

import psutil

logger = logging.getLogger(__name__)

LOG_LEVEL: str = os.environ.get("GRIDSIGHT_LOG_LEVEL", "WARNING")


def _read_int(name: str, default: int) -> int:
    raw = os.environ.get(name, None)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


def default_jobs() -> int:
    """Physical core count, or 1 when it cannot be determined."""
    return psutil.cpu_count(logical=False) or 1


# Worker pool size for batch processing and per-channel filter banks
JOBS: int = max(1, _read_int("GRIDSIGHT_JOBS", default_jobs()))

# Top-level seed for every random stream (CNN init, shuffling)
SEED: int = _read_int("GRIDSIGHT_SEED", 0)

__all__ = [
    "LOG_LEVEL",
    "JOBS",
    "SEED",
]
