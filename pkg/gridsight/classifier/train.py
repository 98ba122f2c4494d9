# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Mini-batch training with momentum."""

import copy
import logging
import math
from dataclasses import dataclass, field

import torch
import torch.nn.functional as F
from tqdm import tqdm

from .. import env
from ..common.errors import DivergenceError, EmptyDatasetError, ParameterError
from .dataset import LabeledDataset
from .model import CnnModel, to_batch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:
    lr: float = 0.01
    epochs: int = 30
    batch_size: int = 16
    seed: int = field(default_factory=lambda: env.SEED)
    momentum: float = 0.9
    progress: bool = False

    def __post_init__(self):
        if not self.lr > 0:
            raise ParameterError(f"Learning rate must be positive, got {self.lr}")
        if self.epochs < 1:
            raise ParameterError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ParameterError(f"batch_size must be >= 1, got {self.batch_size}")
        if not 0.0 <= self.momentum < 1.0:
            raise ParameterError(f"momentum must lie in [0, 1), got {self.momentum}")


def batch_loss(model: CnnModel, inputs: torch.Tensor, targets: torch.Tensor) -> torch.Tensor:
    """Mean cross-entropy of the logits against class indices."""
    return F.cross_entropy(model(inputs), targets)


def train(model: CnnModel, data: LabeledDataset, cfg: TrainConfig = TrainConfig()) -> CnnModel:
    """Train a copy of ``model`` on the ``train`` split and return it.

    Shuffling draws from a generator seeded with ``cfg.seed``, so identical
    inputs give identical weights. The mean loss of every epoch is logged and
    kept in ``loss_history``.

    Raises
    ------
    EmptyDatasetError
        If the training split is empty.
    DivergenceError
        If an epoch's loss is not finite.
    """
    train_set = data.subset("train")
    if len(train_set) == 0:
        raise EmptyDatasetError("Training split is empty")
    model = copy.deepcopy(model)
    model.train()
    inputs = to_batch(train_set.patches)
    targets = torch.from_numpy(train_set.label_indices())
    n = inputs.shape[0]
    gen = torch.Generator().manual_seed(int(cfg.seed))
    optimizer = torch.optim.SGD(model.parameters(), lr=cfg.lr, momentum=cfg.momentum)
    history = []
    epochs = tqdm(range(1, cfg.epochs + 1), desc="train", disable=not cfg.progress)
    for epoch in epochs:
        order = torch.randperm(n, generator=gen)
        total = 0.0
        for start in range(0, n, cfg.batch_size):
            idx = order[start:start + cfg.batch_size]
            optimizer.zero_grad()
            loss = batch_loss(model, inputs[idx], targets[idx])
            loss.backward()
            optimizer.step()
            total += float(loss.item()) * len(idx)
        epoch_loss = total / n
        if not math.isfinite(epoch_loss):
            raise DivergenceError(epoch, epoch_loss)
        history.append(epoch_loss)
        logger.info(f"epoch {epoch}/{cfg.epochs}: loss {epoch_loss:.6f}")
    model.eval()
    model.loss_history = history
    return model


def evaluate(model: CnnModel, data: LabeledDataset, split: str = "test") -> float:
    """Classification accuracy on ``split``."""
    subset = data.subset(split)
    if len(subset) == 0:
        raise EmptyDatasetError(f"Split {split!r} is empty")
    with torch.no_grad():
        predicted = model(to_batch(subset.patches)).argmax(dim=1)
    truth = torch.from_numpy(subset.label_indices())
    return float((predicted == truth).double().mean().item())
