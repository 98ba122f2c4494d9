# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Power-grid inspection imagery toolkit."""

import logging
import sys

from tqdm import tqdm


class TqdmLoggingHandler(logging.Handler):
    """Logging handler that writes through ``tqdm.write`` to stderr.

    Batch runs show a tqdm bar on stderr; routing records through tqdm keeps
    the bar intact and leaves stdout to command output.
    """

    def __init__(self, level=logging.NOTSET, stream=None):
        super().__init__(level)
        self.stream = stream

    def emit(self, record):
        try:
            msg = self.format(record)
            tqdm.write(msg, file=self.stream or sys.stderr)
        except Exception:
            self.handleError(record)


def set_log_level(level):
    """Set the level of the ``gridsight`` logger.

    Args:
        level (str or int): a level name such as ``'INFO'`` or ``'debug'``, or a
            ``logging`` constant. Unknown names fall back to INFO.
    """
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)
    logger = logging.getLogger(__name__)
    logger.setLevel(level)


def _init_logger():
    logger = logging.getLogger(__name__)
    handler = TqdmLoggingHandler()
    formatter = logging.Formatter(
        fmt="%(asctime)s [GridSight:%(levelname)s]: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    logger.propagate = False
    set_log_level(LOG_LEVEL)


from .env import LOG_LEVEL  # noqa: E402

_init_logger()

logger = logging.getLogger(__name__)

from .common import errors  # noqa: F401
from .raster import (  # noqa: F401
    RasterGray, RasterRgb, BitMask, Kernel2D, Spectrum2D,
)
from . import (  # noqa: F401
    raster, thermal, structure, vegetation, proposal, classifier, airframe, cli,
)

from .version import __version__  # noqa: F401
