# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Batch inspection: structures, clearance, proposals and classification per frame."""

import os
import logging
import concurrent.futures
from typing import List, Optional

from tqdm import tqdm

from ..classifier import CnnModel, filter_proposals, load_model
from ..common.errors import ConfigError, GridSightError, MissingFileError
from ..proposal import propose_regions, render_proposal_overlay
from ..raster import load_gray, load_image, save_png, to_gray
from ..structure import detect_structures
from ..thermal import extract_hotspots
from ..vegetation import clearance_report, render_clearance_overlay
from .config import PipelineConfig, validate_paths
from .report import InspectionReport, write_json
from .stages import thermal_summary

logger = logging.getLogger(__name__)

IMAGE_SUFFIXES = (".png", ".pgm", ".ppm")
REPORT_NAME = "report.json"


def list_images(path: str) -> List[str]:
    """``path`` itself when it is a file, else its image files sorted by name."""
    if os.path.isfile(path):
        return [path]
    if not os.path.isdir(path):
        raise MissingFileError(f"Input path not found: {path}")
    names = sorted(n for n in os.listdir(path) if n.lower().endswith(IMAGE_SUFFIXES))
    return [os.path.join(path, n) for n in names]


def inspect_image(path: str, config: PipelineConfig, model: Optional[CnnModel] = None) -> dict:
    """Report entry for one frame. Stage failures are recorded, not raised."""
    name = os.path.basename(path)
    entry: dict = {"image": name}
    try:
        rgb = load_image(path)
    except GridSightError as err:
        logger.warning(f"Skipping {name}: {err}")
        entry["error"] = str(err)
        return entry
    gray = to_gray(rgb)
    artifacts = os.path.join(config.out_dir, os.path.splitext(name)[0])

    if config.stage_enabled("structures"):
        result = detect_structures(gray, config.canny, config.hough, config.lines)
        entry["structures"] = {
            "lines": [line.to_dict() for line in result.lines],
            "vertical": [line.to_dict() for line in result.vertical],
            "diagonal": [line.to_dict() for line in result.diagonal],
        }
    if config.stage_enabled("clearance"):
        try:
            report = clearance_report(rgb, config.facade, config.green, config.clearance)
            entry["clearance"] = report.to_dict()
            save_png(render_clearance_overlay(rgb, report), os.path.join(artifacts, "clearance.png"))
        except GridSightError as err:
            logger.warning(f"{name}: clearance failed: {err}")
            entry["clearance"] = {"error": str(err)}
    if config.stage_enabled("propose"):
        regions = propose_regions(gray, config.proposal)
        entry["proposals"] = [r.to_dict() for r in regions]
        if model is not None:
            regions = filter_proposals(model, regions, gray)
            entry["regions"] = [r.to_dict() for r in regions]
        save_png(render_proposal_overlay(rgb, regions), os.path.join(artifacts, "regions.png"))
    return entry


def inspect_thermal(path: str, config: PipelineConfig) -> dict:
    name = os.path.basename(path)
    try:
        return thermal_summary(name, extract_hotspots(load_gray(path), config.thermal))
    except GridSightError as err:
        logger.warning(f"{name}: thermal analysis failed: {err}")
        return {"image": name, "error": str(err)}


def _map_ordered(fn, items: List[str], jobs: int, desc: str) -> list:
    """``fn`` over ``items`` on a bounded pool; results keep the order of ``items``."""
    if not items:
        return []
    with concurrent.futures.ThreadPoolExecutor(max_workers=min(jobs, len(items))) as executor:
        return list(tqdm(executor.map(fn, items), total=len(items), desc=desc, leave=False))


def run_pipeline(config: PipelineConfig) -> InspectionReport:
    """Inspect every frame under ``paths.input`` and write ``report.json``.

    Frames are processed concurrently by ``config.jobs`` workers; the report
    lists them in filename order, so reruns with the same configuration give
    byte-identical JSON.

    Raises
    ------
    ConfigError
        If no input path is set, or classification is enabled without a
        readable model. Checked before any frame is processed.
    """
    if config.paths.get("input") is None:
        raise ConfigError("paths.input is required for the pipeline")
    validate_paths(config)
    model = None
    if config.stage_enabled("classify"):
        model_path = config.paths.get("model")
        if model_path is None or not os.path.isfile(model_path):
            raise ConfigError(f"Classification is enabled but no model file is available: {model_path}")
        model = load_model(model_path)

    images = list_images(config.paths["input"])
    thermal_images = []
    if config.stage_enabled("thermal") and config.paths.get("thermal") is not None:
        thermal_images = list_images(config.paths["thermal"])
    logger.info(f"Pipeline: {len(images)} frames, {len(thermal_images)} thermal frames, "
                f"{config.jobs} workers")

    entries = _map_ordered(lambda p: inspect_image(p, config, model), images, config.jobs, "inspect")
    thermal = _map_ordered(lambda p: inspect_thermal(p, config), thermal_images, config.jobs, "thermal")
    report = InspectionReport(config.to_dict(), entries, thermal)
    path = write_json(report.to_json(), os.path.join(config.out_dir, REPORT_NAME))
    logger.info(f"Report written to {path}")
    return report


__all__ = [
    "IMAGE_SUFFIXES",
    "REPORT_NAME",
    "list_images",
    "inspect_image",
    "inspect_thermal",
    "run_pipeline",
]
