# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Component mass budget."""

import csv
import os
from dataclasses import dataclass
from typing import List, Tuple

from ..common.errors import ConfigError, MissingFileError, ParameterError

BUDGET_COLUMNS = ("name", "unit_weight_g", "pieces")


@dataclass(frozen=True)
class BudgetItem:
    name: str
    unit_weight_g: float
    pieces: int

    def __post_init__(self):
        if self.unit_weight_g < 0:
            raise ParameterError(f"{self.name}: unit weight must be >= 0, got {self.unit_weight_g}")
        if self.pieces < 1:
            raise ParameterError(f"{self.name}: pieces must be >= 1, got {self.pieces}")

    @property
    def weight_g(self) -> float:
        return self.unit_weight_g * self.pieces


@dataclass(frozen=True)
class MassBudget:
    items: Tuple[BudgetItem, ...] = ()

    @classmethod
    def of(cls, rows: List[Tuple[str, float, int]]) -> "MassBudget":
        return cls(tuple(BudgetItem(name, weight, pieces) for name, weight, pieces in rows))


def total_mass(b: MassBudget):
    """Sum of ``unit_weight_g * pieces`` in grams."""
    return sum((item.weight_g for item in b.items), 0)


def reference_budget() -> MassBudget:
    """Component list of the reference inspection robot; totals 30143 g."""
    return MassBudget.of([
        ("thermal camera", 72, 1),
        ("visible camera", 116, 1),
        ("laser sensor", 850, 12),
        ("robot arm 6dof", 940, 2),
        ("robot arm 4dof", 640, 2),
        ("drone motor", 1038, 4),
        ("drone frame", 12000, 1),
        ("imu gps", 180, 1),
        ("fpga board", 263, 1),
    ])


def _number(text: str, column: str, line: int):
    try:
        value = float(text)
    except ValueError as err:
        raise ConfigError(f"Budget line {line}: {column} {text!r} is not a number") from err
    return int(value) if value.is_integer() else value


def load_budget_csv(path: str) -> MassBudget:
    """Read a budget CSV with the header ``name,unit_weight_g,pieces``."""
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise MissingFileError(f"No such budget file: {path}")
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or tuple(n.strip() for n in reader.fieldnames) != BUDGET_COLUMNS:
            raise ConfigError(f"{path}: expected columns {','.join(BUDGET_COLUMNS)}, "
                              f"got {reader.fieldnames}")
        items = []
        for line, row in enumerate(reader, start=2):
            row = {k.strip(): (v or "").strip() for k, v in row.items()}
            pieces = _number(row["pieces"], "pieces", line)
            if not isinstance(pieces, int):
                raise ConfigError(f"Budget line {line}: pieces must be an integer, got {pieces}")
            try:
                items.append(BudgetItem(row["name"], _number(row["unit_weight_g"], "unit_weight_g", line),
                                        pieces))
            except ParameterError as err:
                raise ConfigError(f"Budget line {line}: {err}") from err
    return MassBudget(tuple(items))
