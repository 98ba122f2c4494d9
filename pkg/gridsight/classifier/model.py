# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Eight-layer patch classifier.

conv(3x3, 8) -> relu -> maxpool(2) -> conv(3x3, 16) -> relu -> maxpool(2)
-> fully-connected(64) -> fully-connected(3), followed by softmax. The
``linear`` architecture skips the convolutional stages and feeds the
flattened patch straight into the two fully-connected layers.
"""

import math
from typing import List, Tuple

import numpy as np
import torch
import torch.nn.functional as F
from torch import nn

from ..common.errors import ParameterError

CLASSES: Tuple[str, ...] = ("insulator", "triangle", "other")
REJECT_CLASS = "other"
PATCH_SIZE = 64
DTYPE = torch.float64

ARCHITECTURES = ("cnn8", "linear")


class CnnModel(nn.Module):
    """Network plus the descriptor needed to rebuild it: architecture name and init seed."""

    def __init__(self, architecture: str = "cnn8", seed: int = 0):
        super().__init__()
        if architecture not in ARCHITECTURES:
            raise ParameterError(f"Unknown architecture {architecture!r}, expected one of {ARCHITECTURES}")
        self.architecture = architecture
        self.seed = int(seed)
        self.loss_history: List[float] = []
        if architecture == "cnn8":
            self.features = nn.Sequential(
                nn.Conv2d(1, 8, 3, padding=1, dtype=DTYPE),
                nn.ReLU(),
                nn.MaxPool2d(2),
                nn.Conv2d(8, 16, 3, padding=1, dtype=DTYPE),
                nn.ReLU(),
                nn.MaxPool2d(2),
            )
            flat = 16 * (PATCH_SIZE // 4) * (PATCH_SIZE // 4)
        else:
            self.features = nn.Sequential()
            flat = PATCH_SIZE * PATCH_SIZE
        self.fc1 = nn.Linear(flat, 64, dtype=DTYPE)
        self.fc2 = nn.Linear(64, len(CLASSES), dtype=DTYPE)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        """Logits for a ``(batch, 1, 64, 64)`` tensor."""
        x = self.features(x)
        x = torch.flatten(x, 1)
        return self.fc2(self.fc1(x))

    def probabilities(self, x: torch.Tensor) -> torch.Tensor:
        return F.softmax(self(x), dim=1)

    def layer_count(self) -> int:
        return len(self.features) + 2

    def activation_pattern(self, x: torch.Tensor) -> List[torch.Tensor]:
        """ReLU on/off states and max-pool winner indices for input ``x``."""
        pattern = []
        with torch.no_grad():
            for layer in self.features:
                if isinstance(layer, nn.ReLU):
                    pattern.append(x > 0)
                elif isinstance(layer, nn.MaxPool2d):
                    pattern.append(F.max_pool2d(x, 2, return_indices=True)[1])
                x = layer(x)
        return pattern

    def named_weights(self) -> List[Tuple[str, torch.Tensor]]:
        return [(name, p) for name, p in self.named_parameters()]


def _xavier_bound(weight: torch.Tensor) -> float:
    receptive = weight[0][0].numel() if weight.dim() > 2 else 1
    fan_in = weight.shape[1] * receptive
    fan_out = weight.shape[0] * receptive
    return math.sqrt(6.0 / (fan_in + fan_out))


def build_model(seed: int = 0, architecture: str = "cnn8", zero_init: bool = False) -> CnnModel:
    """Fresh model; weights uniform in ``+-sqrt(6 / (fan_in + fan_out))`` from a seeded stream.

    Biases start at zero. ``zero_init`` zeroes every weight as well, which
    makes the output exactly uniform.
    """
    model = CnnModel(architecture, seed)
    gen = torch.Generator().manual_seed(int(seed))
    with torch.no_grad():
        for name, param in model.named_parameters():
            if name.endswith("bias") or zero_init:
                param.zero_()
            else:
                bound = _xavier_bound(param)
                param.uniform_(-bound, bound, generator=gen)
    return model


def standardize(patches: np.ndarray) -> np.ndarray:
    """Per-patch zero mean and unit variance; flat patches map to zeros."""
    patches = np.asarray(patches, dtype=np.float64)
    mean = patches.mean(axis=(-2, -1), keepdims=True)
    std = patches.std(axis=(-2, -1), keepdims=True)
    flat = std <= 1e-12
    return np.where(flat, 0.0, (patches - mean) / np.where(flat, 1.0, std))


def to_batch(patches: np.ndarray) -> torch.Tensor:
    """``(n, 64, 64)`` array to a standardized ``(n, 1, 64, 64)`` float64 tensor."""
    patches = np.asarray(patches, dtype=np.float64)
    if patches.ndim == 2:
        patches = patches[None]
    if patches.shape[-2:] != (PATCH_SIZE, PATCH_SIZE):
        raise ParameterError(f"Patches must be {PATCH_SIZE}x{PATCH_SIZE}, got {patches.shape[-2:]}")
    return torch.from_numpy(standardize(patches)).unsqueeze(1)


def label_index(label: str) -> int:
    if label not in CLASSES:
        raise ParameterError(f"Unknown label {label!r}, expected one of {CLASSES}")
    return CLASSES.index(label)
