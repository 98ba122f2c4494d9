# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Batch front-end: stage commands, the inspection pipeline and its reports."""

from .config import PipelineConfig, load_config, parse_config_text, validate_paths  # noqa: F401
from .report import InspectionReport, format_number, write_json  # noqa: F401
from .stages import (  # noqa: F401
    EXIT_OK, EXIT_INPUT, EXIT_PROCESSING, EXIT_USAGE, STAGES, exit_code_for, run_stage,
)
from .pipeline import list_images, inspect_image, run_pipeline  # noqa: F401
from .main import build_parser, main  # noqa: F401
