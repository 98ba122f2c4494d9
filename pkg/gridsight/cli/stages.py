# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Single-stage commands. Each writes its artifacts under the output directory
and returns the data printed on stdout."""

import json
import os
import logging
from typing import Any, Callable, Dict, List, Optional

from ..airframe import (
    DEFAULT_ALPHA,
    ThrustParams,
    alignment_angle,
    load_budget_csv,
    readings,
    reference_budget,
    thrust_per_motor,
    total_mass,
)
from ..classifier import (
    build_model,
    evaluate,
    filter_proposals,
    load_dataset,
    load_model,
    make_toy_dataset,
    save_model,
    train,
)
from ..common.errors import (
    ConfigError,
    GridSightError,
    InputError,
    MissingFileError,
    UsageError,
)
from ..proposal import ProposalRegion, propose_regions, render_proposal_overlay
from ..raster import (
    RED,
    Box,
    BitMask,
    MaskFill,
    load_gray,
    load_image,
    render_overlay,
    save_png,
)
from ..structure import confine_transfer_lines, detect_structures, detect_towers_gabor
from ..thermal import expose_neighbor_edges, extract_hotspots, label_components
from ..vegetation import clearance_report, render_clearance_overlay
from .config import PipelineConfig
from .report import format_number, write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PROCESSING = 2
EXIT_USAGE = 64

StageFn = Callable[[PipelineConfig, Dict[str, Any]], Any]


def exit_code_for(err: BaseException) -> int:
    """Exit status of an error family."""
    if isinstance(err, UsageError):
        return EXIT_USAGE
    if isinstance(err, InputError):
        return EXIT_INPUT
    return EXIT_PROCESSING


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def _artifact(config: PipelineConfig, name: str) -> str:
    return os.path.join(config.out_dir, name)


def _require(options: Dict[str, Any], key: str, stage: str) -> Any:
    value = options.get(key)
    if value is None:
        raise UsageError(f"{stage}: missing required option {key}")
    return value


def thermal_summary(name: str, mask: BitMask) -> dict:
    """Hotspot pixel count and connected components of one frame."""
    return {
        "image": name,
        "hotspot_pixels": mask.count(),
        "components": [c.to_dict() for c in label_components(mask)],
    }


def stage_thermal(config: PipelineConfig, options: Dict[str, Any]) -> dict:
    path = _require(options, "image", "thermal")
    img = load_gray(path)
    mask = extract_hotspots(img, config.thermal)
    stem = _stem(path)
    save_png(mask.to_gray(), _artifact(config, f"{stem}_hotspots.png"))
    save_png(expose_neighbor_edges(img, mask, config.thermal), _artifact(config, f"{stem}_edges.png"))
    summary = thermal_summary(os.path.basename(path), mask)
    shapes = [MaskFill(mask, RED, 0.5)] + [Box(*c["bbox"], color=RED) for c in summary["components"]]
    save_png(render_overlay(img, shapes), _artifact(config, f"{stem}_overlay.png"))
    write_json(summary, _artifact(config, f"{stem}_thermal.json"))
    return summary


def stage_structures(config: PipelineConfig, options: Dict[str, Any]) -> List[dict]:
    path = _require(options, "image", "structures")
    img = load_gray(path)
    result = detect_structures(img, config.canny, config.hough, config.lines)
    towers = detect_towers_gabor(img, config.gabor)
    stem = _stem(path)
    save_png(result.edges.to_gray(), _artifact(config, f"{stem}_edges.png"))
    save_png(towers.to_gray(), _artifact(config, f"{stem}_towers.png"))
    save_png(confine_transfer_lines(result.edges, towers), _artifact(config, f"{stem}_confined.png"))
    lines = [line.to_dict() for line in result.lines]
    write_json(lines, _artifact(config, f"{stem}_lines.json"))
    return lines


def stage_clearance(config: PipelineConfig, options: Dict[str, Any]) -> dict:
    path = _require(options, "image", "clearance")
    img = load_image(path)
    report = clearance_report(img, config.facade, config.green, config.clearance)
    stem = _stem(path)
    save_png(render_clearance_overlay(img, report), _artifact(config, f"{stem}_clearance.png"))
    write_json(report.to_json() + "\n", _artifact(config, f"{stem}_clearance.json"))
    return report.to_dict()


def stage_propose(config: PipelineConfig, options: Dict[str, Any]) -> List[dict]:
    path = _require(options, "image", "propose")
    img = load_gray(path)
    regions = propose_regions(img, config.proposal)
    stem = _stem(path)
    save_png(render_proposal_overlay(img, regions), _artifact(config, f"{stem}_proposals.png"))
    payload = [r.to_dict() for r in regions]
    write_json(payload, _artifact(config, f"{stem}_proposals.json"))
    return payload


def read_regions(path: str) -> List[ProposalRegion]:
    """Proposal list as written by the ``propose`` stage."""
    if not os.path.isfile(path):
        raise MissingFileError(f"Regions file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            items = json.load(f)
        return [ProposalRegion.from_dict(item) for item in items]
    except (ValueError, KeyError, TypeError) as err:
        raise ConfigError(f"Malformed regions file {path}: {err}") from err


def stage_classify(config: PipelineConfig, options: Dict[str, Any]) -> List[dict]:
    path = _require(options, "image", "classify")
    model_path = options.get("model") or config.paths.get("model")
    if model_path is None:
        raise UsageError("classify: a model file is required (--model or paths.model)")
    model = load_model(model_path)
    regions = read_regions(_require(options, "regions", "classify"))
    img = load_gray(path)
    survivors = filter_proposals(model, regions, img)
    stem = _stem(path)
    save_png(render_proposal_overlay(img, survivors), _artifact(config, f"{stem}_classified.png"))
    payload = [r.to_dict() for r in survivors]
    write_json(payload, _artifact(config, f"{stem}_classified.json"))
    return payload


def stage_train(config: PipelineConfig, options: Dict[str, Any]) -> dict:
    data_dir = options.get("data")
    data = load_dataset(data_dir) if data_dir else make_toy_dataset(config.seed)
    model = train(build_model(config.seed), data, config.train)
    model_path = options.get("model_out") or _artifact(config, "model.gscnn")
    save_model(model, model_path)
    summary = {
        "model": model_path,
        "epochs": config.train.epochs,
        "final_loss": round(model.loss_history[-1], 9),
        "train_size": len(data.subset("train")),
    }
    if len(data.subset("test")):
        summary["test_accuracy"] = round(evaluate(model, data), 6)
    return summary


def stage_platform(config: PipelineConfig, options: Dict[str, Any]) -> str:
    action = _require(options, "action", "platform")
    if action == "thrust":
        alpha, motors = options.get("alpha"), options.get("motors")
        params = ThrustParams(
            _require(options, "weight", "platform thrust"),
            DEFAULT_ALPHA if alpha is None else alpha,
            4 if motors is None else motors)
        return format_number(thrust_per_motor(params))
    if action == "mass":
        budget_path = options.get("budget")
        budget = load_budget_csv(budget_path) if budget_path else reference_budget()
        return format_number(total_mass(budget))
    if action == "align":
        values = [_require(options, key, "platform align") for key in ("d0", "d1", "d2")]
        return format_number(alignment_angle(readings(values, _require(options, "spacing", "platform align"))))
    raise UsageError(f"Unknown platform action {action!r}; expected thrust, mass or align")


STAGES: Dict[str, StageFn] = {
    "thermal": stage_thermal,
    "structures": stage_structures,
    "clearance": stage_clearance,
    "propose": stage_propose,
    "classify": stage_classify,
    "train": stage_train,
    "platform": stage_platform,
}


def emit(payload: Any) -> None:
    """Stage data on stdout; nothing else goes there."""
    if isinstance(payload, str):
        print(payload)
    else:
        print(json.dumps(payload, indent=2, ensure_ascii=False))


def run_stage(stage: str, config: PipelineConfig, options: Optional[Dict[str, Any]] = None) -> int:
    """Run one stage and return its exit status.

    0 on success, 1 on an input error, 2 on a processing error and 64 for an
    unknown stage or missing option. Diagnostics are logged, never printed.
    """
    fn = STAGES.get(stage)
    if fn is None:
        logger.error(f"Unknown stage {stage!r}; expected one of {', '.join(STAGES)}")
        return EXIT_USAGE
    try:
        payload = fn(config, dict(options or {}))
    except GridSightError as err:
        logger.error(f"{stage}: {err}")
        return exit_code_for(err)
    emit(payload)
    return EXIT_OK


__all__ = [
    "EXIT_OK",
    "EXIT_INPUT",
    "EXIT_PROCESSING",
    "EXIT_USAGE",
    "STAGES",
    "exit_code_for",
    "thermal_summary",
    "read_regions",
    "run_stage",
]
