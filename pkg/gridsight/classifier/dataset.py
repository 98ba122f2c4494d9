# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""Labeled 64x64 patch collections."""

import logging
import os
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..common.errors import EmptyDatasetError, MissingFileError, ParameterError
from ..raster import RasterGray, load_gray, resize_bilinear, save_png
from .model import CLASSES, PATCH_SIZE, label_index

logger = logging.getLogger(__name__)

SPLITS = ("train", "test")


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Patches ``(n, 64, 64)`` with a class label and a split tag each."""
    patches: np.ndarray
    labels: Tuple[str, ...]
    splits: Tuple[str, ...]

    def __post_init__(self):
        patches = np.array(self.patches, dtype=np.float64)
        if patches.size == 0:
            patches = patches.reshape(0, PATCH_SIZE, PATCH_SIZE)
        if patches.ndim != 3 or patches.shape[1:] != (PATCH_SIZE, PATCH_SIZE):
            raise ParameterError(f"Patches must have shape (n, {PATCH_SIZE}, {PATCH_SIZE}), "
                                 f"got {patches.shape}")
        if not len(self.labels) == len(self.splits) == patches.shape[0]:
            raise ParameterError("Patch, label and split counts differ")
        for label in self.labels:
            label_index(label)
        for split in self.splits:
            if split not in SPLITS:
                raise ParameterError(f"Unknown split {split!r}, expected one of {SPLITS}")
        patches.setflags(write=False)
        object.__setattr__(self, "patches", patches)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "splits", tuple(self.splits))

    def __len__(self) -> int:
        return len(self.labels)

    def subset(self, split: str) -> "LabeledDataset":
        keep = [i for i, s in enumerate(self.splits) if s == split]
        return LabeledDataset(self.patches[keep], tuple(self.labels[i] for i in keep),
                              tuple(self.splits[i] for i in keep))

    def label_indices(self) -> np.ndarray:
        return np.array([label_index(label) for label in self.labels], dtype=np.int64)

    @classmethod
    def from_items(cls, items: Sequence[Tuple[np.ndarray, str]], split: str = "train") -> "LabeledDataset":
        if not items:
            return cls(np.zeros((0, PATCH_SIZE, PATCH_SIZE)), (), ())
        patches = np.stack([np.asarray(p, dtype=np.float64) for p, _ in items])
        return cls(patches, tuple(label for _, label in items), (split,) * len(items))


def _scan(root: str, split: str, patches: List[np.ndarray], labels: List[str],
          splits: List[str]) -> None:
    for label in CLASSES:
        folder = os.path.join(root, label)
        if not os.path.isdir(folder):
            continue
        for name in sorted(os.listdir(folder)):
            if not name.lower().endswith(".png"):
                continue
            img = load_gray(os.path.join(folder, name))
            if img.shape != (PATCH_SIZE, PATCH_SIZE):
                img = resize_bilinear(img, PATCH_SIZE, PATCH_SIZE)
            patches.append(img.data)
            labels.append(label)
            splits.append(split)


def load_dataset(root: str) -> LabeledDataset:
    """Read ``root/<split>/<class>/*.png``, or ``root/<class>/*.png`` as training data.

    Patches of another size are resampled to 64x64.
    """
    root = os.fspath(root)
    if not os.path.isdir(root):
        raise MissingFileError(f"No such dataset directory: {root}")
    patches: List[np.ndarray] = []
    labels: List[str] = []
    splits: List[str] = []
    if any(os.path.isdir(os.path.join(root, s)) for s in SPLITS):
        for split in SPLITS:
            _scan(os.path.join(root, split), split, patches, labels, splits)
    else:
        _scan(root, "train", patches, labels, splits)
    if not patches:
        raise EmptyDatasetError(f"No labeled PNG patches under {root}")
    logger.info(f"Loaded {len(patches)} patches from {root}")
    return LabeledDataset(np.stack(patches), tuple(labels), tuple(splits))


def save_dataset(ds: LabeledDataset, root: str) -> None:
    """Write every patch to ``root/<split>/<class>/<index>.png`` (8-bit)."""
    root = os.fspath(root)
    for index, (patch, label, split) in enumerate(zip(ds.patches, ds.labels, ds.splits)):
        save_png(RasterGray(np.clip(patch, 0.0, 1.0)),
                 os.path.join(root, split, label, f"{index:05d}.png"))


def _tight(small: np.ndarray) -> np.ndarray:
    """Resample a small crop to the patch size, as proposal crops are."""
    return resize_bilinear(RasterGray(small), PATCH_SIZE, PATCH_SIZE).data


def _insulator(rng: np.random.Generator) -> np.ndarray:
    if rng.random() < 0.5:
        width = int(rng.integers(3, 7)) * 2
        height = int(rng.integers(12, 21)) * 2
        hi, lo = rng.uniform(0.75, 0.95), rng.uniform(0.05, 0.25)
        period = int(rng.integers(1, 3))
        ribs = np.where((np.arange(height) // period) % 2 == 0, hi, lo)
        return _tight(np.repeat(ribs[:, None], width, axis=1))
    patch = rng.uniform(0.35, 0.55) + rng.normal(0.0, 0.03, (PATCH_SIZE, PATCH_SIZE))
    width = int(rng.integers(6, 13))
    height = int(rng.integers(28, 49))
    x0 = int(rng.integers(4, PATCH_SIZE - width - 4))
    y0 = int(rng.integers(2, PATCH_SIZE - height - 2))
    period = int(rng.integers(2, 5))
    hi, lo = rng.uniform(0.75, 0.95), rng.uniform(0.05, 0.25)
    rows = np.arange(height)
    ribs = np.where((rows // period) % 2 == 0, hi, lo)
    patch[y0:y0 + height, x0:x0 + width] = ribs[:, None]
    return patch


def _triangle(rng: np.random.Generator) -> np.ndarray:
    patch = rng.uniform(0.35, 0.55) + rng.normal(0.0, 0.03, (PATCH_SIZE, PATCH_SIZE))
    base = rng.uniform(30, 56)
    height = rng.uniform(24, 50)
    cx = rng.uniform(base / 2 + 2, PATCH_SIZE - base / 2 - 2)
    top = rng.uniform(2, PATCH_SIZE - height - 2)
    thickness = rng.uniform(2.5, 5.0)
    ys, xs = np.mgrid[0:PATCH_SIZE, 0:PATCH_SIZE].astype(np.float64)
    apex = np.array([cx, top])
    corners = [apex, np.array([cx - base / 2, top + height]), np.array([cx + base / 2, top + height])]
    band = np.zeros(patch.shape, dtype=bool)
    for a, b in zip(corners, corners[1:] + corners[:1]):
        d = b - a
        t = np.clip(((xs - a[0]) * d[0] + (ys - a[1]) * d[1]) / float(d @ d), 0.0, 1.0)
        dist = np.hypot(xs - a[0] - t * d[0], ys - a[1] - t * d[1])
        band |= dist <= thickness / 2
    value = rng.uniform(0.75, 0.95) if rng.random() < 0.5 else rng.uniform(0.05, 0.25)
    patch[band] = value
    return patch


def _clutter(rng: np.random.Generator) -> np.ndarray:
    if rng.random() < 0.5:
        size = int(rng.integers(8, 33))
        small = rng.uniform(0.3, 0.6) + rng.normal(0.0, rng.uniform(0.03, 0.15), (size, size))
        return _tight(small)
    base = rng.uniform(0.3, 0.7)
    noise = rng.normal(0.0, rng.uniform(0.05, 0.2), (PATCH_SIZE, PATCH_SIZE))
    ys, xs = np.mgrid[0:PATCH_SIZE, 0:PATCH_SIZE].astype(np.float64)
    for _ in range(int(rng.integers(0, 4))):
        cx, cy = rng.uniform(0, PATCH_SIZE, 2)
        radius = rng.uniform(4, 16)
        noise += rng.uniform(-0.3, 0.3) * np.exp(-((xs - cx)**2 + (ys - cy)**2) / (2 * radius**2))
    return base + noise


_GENERATORS = {"insulator": _insulator, "triangle": _triangle, "other": _clutter}


def make_patch(label: str, rng: np.random.Generator) -> np.ndarray:
    """One synthetic patch in [0, 1]: ribbed bar, triangle outline or clutter."""
    return np.clip(_GENERATORS[label](rng), 0.0, 1.0)


def make_toy_dataset(seed: int = 0, n_train: int = 300, n_test: int = 150) -> LabeledDataset:
    """Balanced three-class synthetic set, classes interleaved."""
    rng = np.random.default_rng(seed)
    patches, labels, splits = [], [], []
    for split, count in (("train", n_train), ("test", n_test)):
        for i in range(count):
            label = CLASSES[i % len(CLASSES)]
            patches.append(make_patch(label, rng))
            labels.append(label)
            splits.append(split)
    return LabeledDataset(np.stack(patches), tuple(labels), tuple(splits))
