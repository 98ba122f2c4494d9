# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Finite-difference verification of back-propagated gradients."""

import copy
import logging
import math
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import torch

from .model import CnnModel, label_index, to_batch
from .train import batch_loss

logger = logging.getLogger(__name__)

GradTransform = Callable[[str, torch.Tensor], torch.Tensor]


def _counts(model: CnnModel, n_weights: int, min_per_tensor: int) -> Dict[str, int]:
    """Weights to score per parameter, proportional to tensor size with a per-tensor floor."""
    params = dict(model.named_parameters())
    total = sum(p.numel() for p in params.values())
    return {
        name: min(p.numel(), max(min_per_tensor, math.ceil(n_weights * p.numel() / total)))
        for name, p in params.items()
    }


def relative_error(analytic: float, numeric: float, abs_floor: float = 1e-6) -> float:
    return abs(analytic - numeric) / max(abs(analytic) + abs(numeric), abs_floor)


def gradient_check(model: CnnModel,
                   sample: Tuple[np.ndarray, str],
                   n_weights: int = 256,
                   step: float = 1e-5,
                   seed: int = 0,
                   grad_transform: Optional[GradTransform] = None,
                   abs_floor: float = 1e-6,
                   max_redraws: int = 64) -> float:
    """Largest relative error between analytic and central-difference partial derivatives.

    At least ``n_weights`` weights, spread over every parameter tensor, are
    checked one at a time: ``dL/dw`` against ``(L(w + h) - L(w - h)) / 2h``.
    A weight whose perturbation flips a ReLU or a max-pool winner sits on a
    kink of the loss; it is skipped and another weight of the same tensor is
    drawn, up to ``max_redraws`` skips per tensor.

    ``grad_transform(name, grad)`` may alter the analytic gradient before the
    comparison.
    """
    model = copy.deepcopy(model)
    rng = np.random.default_rng(seed)
    patch, label = sample
    x = to_batch(patch)
    y = torch.tensor([label_index(label)])

    params = dict(model.named_parameters())
    model.zero_grad()
    batch_loss(model, x, y).backward()
    grads = {name: p.grad.detach().clone().reshape(-1) for name, p in params.items()}
    if grad_transform is not None:
        grads = {name: grad_transform(name, g) for name, g in grads.items()}
    base_pattern = model.activation_pattern(x)

    def loss_at(flat: torch.Tensor, index: int, value: float):
        original = float(flat[index])
        with torch.no_grad():
            flat[index] = value
            try:
                loss = float(batch_loss(model, x, y).item())
                pattern = model.activation_pattern(x)
            finally:
                flat[index] = original
        return loss, all(torch.equal(a, b) for a, b in zip(pattern, base_pattern))

    worst = 0.0
    scored = 0
    for name, count in _counts(model, n_weights, 8).items():
        flat = params[name].data.view(-1)
        done = skipped = 0
        for index in rng.permutation(flat.numel()).tolist():
            if done == count or skipped > max_redraws:
                break
            w = float(flat[index])
            plus, plus_smooth = loss_at(flat, index, w + step)
            minus, minus_smooth = loss_at(flat, index, w - step)
            if not (plus_smooth and minus_smooth):
                skipped += 1
                continue
            numeric = (plus - minus) / (2.0 * step)
            worst = max(worst, relative_error(float(grads[name][index]), numeric, abs_floor))
            done += 1
        if done < count:
            logger.warning(f"Gradient check scored only {done} of {count} weights of {name}")
        scored += done
    model.zero_grad()
    logger.debug(f"Gradient check over {scored} weights: {worst:.3e}")
    return worst
