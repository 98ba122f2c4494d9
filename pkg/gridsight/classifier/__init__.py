# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Small CNN that classifies proposed regions."""

from .model import (  # noqa: F401
    CLASSES, REJECT_CLASS, PATCH_SIZE, ARCHITECTURES, CnnModel, build_model, standardize, to_batch,
    label_index,
)
from .dataset import (  # noqa: F401
    SPLITS, LabeledDataset, load_dataset, save_dataset, make_patch, make_toy_dataset,
)
from .train import TrainConfig, batch_loss, train, evaluate  # noqa: F401
from .gradcheck import gradient_check  # noqa: F401
from .serialization import MAGIC, save_model, load_model  # noqa: F401
from .inference import (  # noqa: F401
    predict, classify, region_patches, label_regions, filter_proposals,
)
