# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
import numpy as np
import pytest
import torch

import gridsight
import gridsight.testing
from gridsight.common.errors import DivergenceError, EmptyDatasetError, ParameterError
from gridsight.classifier import (
    LabeledDataset,
    TrainConfig,
    batch_loss,
    build_model,
    evaluate,
    label_index,
    make_patch,
    make_toy_dataset,
    predict,
    to_batch,
    train,
)


def test_memorizes_one_sample():
    patch = make_patch("triangle", np.random.default_rng(91))
    data = LabeledDataset.from_items([(patch, "triangle")])
    model = train(build_model(0), data, TrainConfig(epochs=200, batch_size=1, seed=0))
    probs = predict(model, patch[None])[0]
    assert probs[label_index("triangle")] >= 0.99
    assert len(model.loss_history) == 200


def test_training_is_deterministic():
    data = make_toy_dataset(seed=1, n_train=30, n_test=0)
    cfg = TrainConfig(epochs=3, seed=5)
    a = train(build_model(2), data, cfg)
    b = train(build_model(2), data, cfg)
    for (name, pa), (_, pb) in zip(a.named_weights(), b.named_weights()):
        assert torch.equal(pa, pb), name
    assert a.loss_history == b.loss_history


def test_input_model_is_not_modified():
    model = build_model(4)
    before = model.fc2.weight.detach().clone()
    train(model, make_toy_dataset(seed=2, n_train=9, n_test=0), TrainConfig(epochs=1))
    assert torch.equal(model.fc2.weight, before)


def test_small_step_lowers_batch_loss():
    data = make_toy_dataset(seed=3, n_train=24, n_test=0)
    model = build_model(6)
    inputs = to_batch(data.patches)
    targets = torch.from_numpy(data.label_indices())
    loss = batch_loss(model, inputs, targets)
    loss.backward()
    with torch.no_grad():
        for p in model.parameters():
            p -= 1e-3 * p.grad
        after = batch_loss(model, inputs, targets)
    assert float(after) < float(loss)


def test_toy_dataset_accuracy():
    data = make_toy_dataset(seed=0)
    assert len(data.subset("train")) == 300 and len(data.subset("test")) == 150
    model = train(build_model(0), data, TrainConfig(seed=0))
    assert evaluate(model, data) >= 0.90
    history = model.loss_history
    blocks = [np.mean(history[i:i + 5]) for i in range(0, len(history) - 4, 5)]
    for earlier, later in zip(blocks, blocks[1:]):
        assert later <= earlier + 1e-3


def test_empty_and_divergent_training():
    empty = LabeledDataset.from_items([])
    with pytest.raises(EmptyDatasetError):
        train(build_model(0), empty)
    with pytest.raises(EmptyDatasetError):
        evaluate(build_model(0), make_toy_dataset(n_train=3, n_test=0))
    data = make_toy_dataset(seed=4, n_train=12, n_test=0)
    with pytest.raises(DivergenceError) as info:
        train(build_model(0), data, TrainConfig(lr=1e300, epochs=3, momentum=0.0))
    assert info.value.epoch >= 1


def test_config_is_validated():
    with pytest.raises(ParameterError):
        TrainConfig(lr=0.0)
    with pytest.raises(ParameterError):
        TrainConfig(epochs=0)
    with pytest.raises(ParameterError):
        TrainConfig(momentum=1.0)


if __name__ == "__main__":
    gridsight.testing.main()
