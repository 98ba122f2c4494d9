# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import json
import os

import numpy as np
import pytest

import gridsight
import gridsight.testing
from gridsight.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_PROCESSING,
    EXIT_USAGE,
    PipelineConfig,
    exit_code_for,
    format_number,
    run_stage,
)
from gridsight.cli.stages import read_regions
from gridsight.common.errors import ClearanceError, ConfigError, MissingFileError, UsageError
from gridsight.raster import RasterRgb, save_png
from gridsight.testing import scenes


def _config(tmp_path, **values):
    values = {f"paths.{k}" if k in ("out", "model") else k: v for k, v in values.items()}
    return PipelineConfig().with_values({"paths.out": str(tmp_path / "out"), **values})


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_format_number():
    assert format_number(14279.650000000001) == "14279.65"
    assert format_number(30143) == "30143"
    assert format_number(0.7853981633974483) == "0.785398"
    assert format_number(-0.0000001) == "0"


def test_exit_codes():
    assert exit_code_for(UsageError("x")) == EXIT_USAGE
    assert exit_code_for(MissingFileError("x")) == EXIT_INPUT
    assert exit_code_for(ConfigError("x")) == EXIT_INPUT
    assert exit_code_for(ClearanceError("x")) == EXIT_PROCESSING


def test_platform(tmp_path, capsys):
    config = _config(tmp_path)
    assert run_stage("platform", config, {"action": "thrust", "weight": 25963}) == EXIT_OK
    assert capsys.readouterr().out == "14279.65\n"
    assert run_stage("platform", config, {"action": "mass"}) == EXIT_OK
    assert capsys.readouterr().out == "30143\n"
    options = {"action": "align", "d0": 1.0, "d1": 1.1, "d2": 1.2, "spacing": 0.1}
    assert run_stage("platform", config, options) == EXIT_OK
    assert capsys.readouterr().out == "0.785398\n"
    assert run_stage("platform", config, {"action": "thrust", "weight": 100, "motors": 0}) == EXIT_PROCESSING
    assert run_stage("platform", config, {"action": "align", "d0": 1.0}) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_unknown_stage(tmp_path):
    assert run_stage("render", _config(tmp_path), {}) == EXIT_USAGE


def test_thermal_stage(tmp_path, capsys):
    img, truth = scenes.thermal_pair()
    path = str(tmp_path / "frame.png")
    save_png(img, path)
    config = _config(tmp_path)
    assert run_stage("thermal", config, {"image": path}) == EXIT_OK
    summary = _stdout_json(capsys)
    assert summary["image"] == "frame.png"
    assert summary["hotspot_pixels"] > 0
    assert len(summary["components"]) >= 2
    for suffix in ("hotspots.png", "edges.png", "overlay.png", "thermal.json"):
        assert os.path.isfile(os.path.join(config.out_dir, f"frame_{suffix}"))
    assert run_stage("thermal", config, {"image": str(tmp_path / "absent.png")}) == EXIT_INPUT


def test_structures_stage(tmp_path, capsys):
    img, _ = scenes.stripes_and_checker(96, 8)
    data = img.data.copy()
    data[:, 40:44] = 0.0
    path = str(tmp_path / "tower.png")
    save_png(gridsight.RasterGray(data), path)
    config = _config(tmp_path)
    assert run_stage("structures", config, {"image": path}) == EXIT_OK
    lines = _stdout_json(capsys)
    assert lines and set(lines[0]) == {"rho", "theta_deg", "votes"}
    for suffix in ("edges.png", "towers.png", "confined.png", "lines.json"):
        assert os.path.isfile(os.path.join(config.out_dir, f"tower_{suffix}"))


def test_clearance_stage(tmp_path, capsys):
    img, truth = scenes.clearance_scene()
    path = str(tmp_path / "scene.png")
    save_png(img, path)
    config = _config(tmp_path)
    assert run_stage("clearance", config, {"image": path}) == EXIT_OK
    report = _stdout_json(capsys)
    assert report["sides"][0]["distance_m"] == pytest.approx(truth.distance_m, rel=0.05)
    with open(os.path.join(config.out_dir, "scene_clearance.json")) as f:
        assert json.load(f) == report

    blank = str(tmp_path / "blank.png")
    save_png(RasterRgb(np.full((60, 80, 3), 120, dtype=np.uint8)), blank)
    assert run_stage("clearance", config, {"image": blank}) == EXIT_PROCESSING


def test_propose_and_classify_stages(tmp_path, capsys):
    img, _ = scenes.proposal_scene(seed=0)
    path = str(tmp_path / "scene.png")
    save_png(img, path)
    config = _config(tmp_path, **{"proposal.max_regions": 4, "train.epochs": 1})
    assert run_stage("propose", config, {"image": path}) == EXIT_OK
    regions = _stdout_json(capsys)
    assert 0 < len(regions) <= 8
    regions_path = os.path.join(config.out_dir, "scene_proposals.json")
    assert len(read_regions(regions_path)) == len(regions)

    assert run_stage("train", config, {}) == EXIT_OK
    summary = _stdout_json(capsys)
    assert summary["epochs"] == 1 and summary["train_size"] == 300
    assert 0.0 <= summary["test_accuracy"] <= 1.0
    options = {"image": path, "model": summary["model"], "regions": regions_path}
    assert run_stage("classify", config, options) == EXIT_OK
    survivors = _stdout_json(capsys)
    boxes = [r["bbox"] for r in regions]
    assert all(r["bbox"] in boxes and r["label"] in ("insulator", "triangle") for r in survivors)

    assert run_stage("classify", config, {"image": path, "regions": regions_path}) == EXIT_USAGE
    with open(regions_path, "w") as f:
        f.write("{not json")
    assert run_stage("classify", config, options) == EXIT_INPUT


def test_read_regions(tmp_path):
    with pytest.raises(MissingFileError):
        read_regions(str(tmp_path / "absent.json"))
    path = tmp_path / "regions.json"
    path.write_text('[{"subband": "vertical"}]')
    with pytest.raises(ConfigError):
        read_regions(str(path))


if __name__ == "__main__":
    gridsight.testing.main()
