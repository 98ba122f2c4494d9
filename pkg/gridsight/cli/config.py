# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Pipeline configuration: flat ``section.key = value`` files plus flag overrides."""

import os
import logging
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Mapping, Optional, Tuple, Union, get_args, get_origin, get_type_hints

from .. import env
from ..classifier import TrainConfig
from ..common.errors import ConfigError, MissingFileError, ParameterError
from ..proposal import ProposalParams
from ..structure import CannyParams, GaborParams, HoughParams, LineFamilies
from ..thermal import ThermalParams
from ..vegetation import ClearanceParams, FacadeConfig, GreenThresholds

logger = logging.getLogger(__name__)

STAGE_NAMES = ("thermal", "structures", "clearance", "propose", "classify")

# section name -> parameter dataclass
SECTIONS = {
    "thermal": ThermalParams,
    "canny": CannyParams,
    "hough": HoughParams,
    "lines": LineFamilies,
    "gabor": GaborParams,
    "green": GreenThresholds,
    "facade": FacadeConfig,
    "proposal": ProposalParams,
    "train": TrainConfig,
}

PATH_KEYS = ("input", "thermal", "out", "model")

# machine-dependent fields kept out of the report echo
_NOT_ECHOED = {("gabor", "jobs")}

_TRUE = ("1", "true", "yes", "on")
_FALSE = ("0", "false", "no", "off")


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _coerce(value: Any, annotation: Any) -> Any:
    """Convert ``value`` (text or a parsed flag) to the declared field type ``annotation``."""
    if get_origin(annotation) is Union:
        if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none")):
            return None
        inner = [a for a in get_args(annotation) if a is not type(None)]
        return _coerce(value, inner[0])
    if annotation is bool:
        return value if isinstance(value, bool) else _parse_bool(str(value))
    if annotation is int:
        return int(value)
    if annotation is float:
        return float(value)
    if annotation is tuple or get_origin(annotation) is tuple:
        if isinstance(value, (tuple, list)):
            return tuple(float(v) for v in value)
        return tuple(float(v) for v in str(value).split(",") if v.strip())
    if annotation is str:
        return str(value)
    raise TypeError(f"unsupported field type {annotation!r}")


def _defaults() -> Dict[str, Any]:
    return {name: cls() for name, cls in SECTIONS.items()}


@dataclass(frozen=True)
class PipelineConfig:
    """Every module parameter set, stage toggles, paths, seed and worker count."""
    params: Dict[str, Any] = field(default_factory=_defaults)
    stages: Dict[str, bool] = field(default_factory=lambda: {name: True for name in STAGE_NAMES})
    paths: Dict[str, Optional[str]] = field(
        default_factory=lambda: {"input": None, "thermal": None, "out": "gridsight-out", "model": None})
    seed: int = field(default_factory=lambda: env.SEED)
    jobs: int = field(default_factory=lambda: env.JOBS)

    def __post_init__(self):
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")

    def __getattr__(self, name: str):
        params = self.__dict__.get("params", {})
        if name in params:
            return params[name]
        raise AttributeError(name)

    @property
    def clearance(self) -> ClearanceParams:
        return ClearanceParams(self.canny, self.hough, self.lines)

    @property
    def out_dir(self) -> str:
        return self.paths["out"] or "."

    def stage_enabled(self, name: str) -> bool:
        return bool(self.stages.get(name, False))

    def with_values(self, values: Mapping[str, Any]) -> "PipelineConfig":
        """Apply ``section.key`` values on top of this configuration.

        Top-level keys are ``seed`` and ``jobs``; ``stages.<name>`` toggles a
        stage and ``paths.<name>`` sets a path. ``None`` values are skipped so
        unset command-line flags leave the configuration alone.
        """
        grouped: Dict[str, Dict[str, Any]] = {}
        seed, jobs = self.seed, self.jobs
        stages, paths = dict(self.stages), dict(self.paths)
        for key, value in values.items():
            if value is None:
                continue
            if key in ("seed", "jobs"):
                try:
                    number = int(value)
                except (TypeError, ValueError):
                    raise ConfigError(f"{key} must be an integer, got {value!r}") from None
                seed, jobs = (number, jobs) if key == "seed" else (seed, number)
                continue
            section, _, name = key.partition(".")
            if not name:
                raise ConfigError(f"Configuration key {key!r} is not of the form section.key")
            if section == "stages":
                if name not in STAGE_NAMES:
                    raise ConfigError(f"Unknown stage {name!r}; expected one of {STAGE_NAMES}")
                try:
                    stages[name] = _coerce(value, bool)
                except ValueError as err:
                    raise ConfigError(f"{key}: {err}") from None
            elif section == "paths":
                if name not in PATH_KEYS:
                    raise ConfigError(f"Unknown path {name!r}; expected one of {PATH_KEYS}")
                paths[name] = str(value)
            elif section in SECTIONS:
                grouped.setdefault(section, {})[name] = value
            else:
                raise ConfigError(f"Unknown configuration section {section!r} in {key!r}")

        params = dict(self.params)
        for section, updates in grouped.items():
            current = params[section]
            known = {f.name for f in fields(current)}
            hints = get_type_hints(type(current))
            converted = {}
            for name, value in updates.items():
                if name not in known:
                    raise ConfigError(f"Unknown key {section}.{name}")
                try:
                    converted[name] = _coerce(value, hints[name])
                except (TypeError, ValueError) as err:
                    raise ConfigError(f"{section}.{name}: cannot parse {value!r} ({err})") from None
            try:
                params[section] = replace(current, **converted)
            except ParameterError as err:
                raise ConfigError(f"Invalid [{section}] settings: {err}") from err
        # one seed drives every random stream
        params["train"] = replace(params["train"], seed=seed)
        params["gabor"] = replace(params["gabor"], jobs=jobs)
        return PipelineConfig(params, stages, paths, seed, jobs)

    def to_dict(self) -> dict:
        """Effective configuration, keys in a fixed order, for report echo; worker counts are not echoed."""
        out: Dict[str, Any] = {"seed": self.seed}
        out["stages"] = {name: self.stages[name] for name in STAGE_NAMES}
        out["paths"] = {name: self.paths.get(name) for name in PATH_KEYS}
        for section in SECTIONS:
            obj = self.params[section]
            out[section] = {
                f.name: _plain(getattr(obj, f.name)) for f in fields(obj) if (section, f.name) not in _NOT_ECHOED
            }
        return out


def _plain(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    return value


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, str]:
    """``section.key = value`` lines; ``#`` starts a comment, blank lines are skipped."""
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"{source}:{lineno}: expected 'section.key = value', got {raw!r}")
        values[key.strip()] = value.strip()
    return values


def load_config(path: Optional[str] = None,
                overrides: Optional[Mapping[str, Any]] = None) -> PipelineConfig:
    """Defaults, then the file at ``path``, then ``overrides`` (command-line flags)."""
    config = PipelineConfig()
    if path is not None:
        if not os.path.isfile(path):
            raise MissingFileError(f"Configuration file not found: {path}")
        with open(path, encoding="utf-8") as f:
            config = config.with_values(parse_config_text(f.read(), path))
        logger.info(f"Loaded configuration from {path}")
    return config.with_values(dict(overrides or {}))


def validate_paths(config: PipelineConfig, keys: Tuple[str, ...] = ("input", "thermal", "model")) -> None:
    """Referenced paths that are set must exist."""
    for key in keys:
        path = config.paths.get(key)
        if path is not None and not os.path.exists(path):
            raise ConfigError(f"paths.{key} does not exist: {path}")


__all__ = [
    "STAGE_NAMES",
    "SECTIONS",
    "PipelineConfig",
    "parse_config_text",
    "load_config",
    "validate_paths",
]
