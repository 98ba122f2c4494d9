# Copyright (c) GridSight Authors.
# Licensed under the MIT License.
"""``GSCNN1`` model container.

Layout, all integers little-endian::

    magic      6 bytes  b"GSCNN1"
    version    uint16
    arch       uint16 length + UTF-8 name
    seed       uint64
    count      uint32 number of tensors
    table      per tensor: uint16 length + UTF-8 name, uint8 ndim, ndim x uint32 dims
    weights    per tensor, in table order: float64 values, row-major
"""

import logging
import os
import struct
from typing import BinaryIO, List, Tuple

import numpy as np
import torch

from ..common.errors import MissingFileError, ModelFormatError
from .model import CnnModel

logger = logging.getLogger(__name__)

MAGIC = b"GSCNN1"
FORMAT_VERSION = 1


def _write_str(f: BinaryIO, text: str) -> None:
    raw = text.encode("utf-8")
    f.write(struct.pack("<H", len(raw)))
    f.write(raw)


class _Reader:

    def __init__(self, raw: bytes, path: str):
        self.raw = raw
        self.pos = 0
        self.path = path

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.raw):
            raise ModelFormatError(f"{self.path}: truncated model file")
        out = self.raw[self.pos:self.pos + n]
        self.pos += n
        return out

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def string(self) -> str:
        (length,) = self.unpack("<H")
        try:
            return self.take(length).decode("utf-8")
        except UnicodeDecodeError as err:
            raise ModelFormatError(f"{self.path}: bad string in header") from err


def save_model(model: CnnModel, path: str) -> None:
    path = os.fspath(path)
    tensors = [(name, p.detach().to(torch.float64).cpu().numpy()) for name, p in model.named_parameters()]
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<H", FORMAT_VERSION))
        _write_str(f, model.architecture)
        f.write(struct.pack("<Q", model.seed))
        f.write(struct.pack("<I", len(tensors)))
        for name, values in tensors:
            _write_str(f, name)
            f.write(struct.pack("<B", values.ndim))
            f.write(struct.pack(f"<{values.ndim}I", *values.shape))
        for _, values in tensors:
            f.write(np.ascontiguousarray(values, dtype="<f8").tobytes())
    logger.info(f"Saved {model.architecture} model to {path}")


def load_model(path: str) -> CnnModel:
    """Rebuild a model written by :func:`save_model`; the weights are restored bit-exactly."""
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise MissingFileError(f"No such model file: {path}")
    with open(path, "rb") as f:
        reader = _Reader(f.read(), path)
    if reader.take(len(MAGIC)) != MAGIC:
        raise ModelFormatError(f"{path}: not a GSCNN1 model file")
    (version,) = reader.unpack("<H")
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"{path}: unsupported model format version {version}")
    architecture = reader.string()
    (seed,) = reader.unpack("<Q")
    (count,) = reader.unpack("<I")
    table: List[Tuple[str, Tuple[int, ...]]] = []
    for _ in range(count):
        name = reader.string()
        (ndim,) = reader.unpack("<B")
        table.append((name, tuple(reader.unpack(f"<{ndim}I"))))
    try:
        model = CnnModel(architecture, seed)
    except ValueError as err:
        raise ModelFormatError(f"{path}: {err}") from err
    params = dict(model.named_parameters())
    if [name for name, _ in table] != list(params):
        raise ModelFormatError(f"{path}: tensor table does not match the {architecture} layout")
    with torch.no_grad():
        for name, shape in table:
            if tuple(params[name].shape) != shape:
                raise ModelFormatError(
                    f"{path}: {name} has shape {shape}, expected {tuple(params[name].shape)}")
            n = int(np.prod(shape))
            values = np.frombuffer(reader.take(8 * n), dtype="<f8").reshape(shape)
            params[name].copy_(torch.from_numpy(values.astype(np.float64)))
    if reader.pos != len(reader.raw):
        raise ModelFormatError(f"{path}: {len(reader.raw) - reader.pos} trailing bytes")
    model.eval()
    return model
