# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Schema-versioned inspection reports."""

import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..version import SCHEMA, __version__


@dataclass(frozen=True)
class InspectionReport:
    config: Dict[str, Any]
    images: List[Dict[str, Any]] = field(default_factory=list)
    thermal: List[Dict[str, Any]] = field(default_factory=list)
    schema: str = SCHEMA
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "version": self.version,
            "config": self.config,
            "images": self.images,
            "thermal": self.thermal,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def write_json(payload: Any, path: str) -> str:
    """Write ``payload`` as indented JSON with a trailing newline; returns ``path``."""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


def format_number(value: float) -> str:
    """Plain decimal text: integers without a fraction, others to at most six places."""
    value = float(value)
    if value.is_integer():
        return str(int(value))
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text
