"""Bit-exact checkpoint directories.

Layout: ``meta.json`` holds the format version, a model description block
(architecture, class names or vocabulary, seed), and the parameter table
as an ordered list of ``{name, shape, offset}``; ``weights.bin`` holds the
little-endian float32 values concatenated in table order.  Loading returns
exactly the bytes that were saved.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np
import torch

from ..errors import CheckpointError

FORMAT_VERSION = 1

META_FILE = "meta.json"
WEIGHTS_FILE = "weights.bin"


def save_checkpoint(
    directory: str | Path, tensors: dict[str, torch.Tensor], model_meta: dict
) -> Path:
    """Write a checkpoint; tensor iteration order fixes the table order."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    table = []
    chunks = []
    offset = 0
    for name, tensor in tensors.items():
        if tensor.dtype != torch.float32:
            raise CheckpointError(
                f"parameter {name!r} has dtype {tensor.dtype}; checkpoints store float32"
            )
        array = tensor.detach().cpu().contiguous().numpy().astype("<f4", copy=False)
        raw = array.tobytes()
        table.append({"name": name, "shape": list(tensor.shape), "offset": offset})
        chunks.append(raw)
        offset += len(raw)
    meta = {
        "format_version": FORMAT_VERSION,
        "model": model_meta,
        "parameters": table,
    }
    (directory / WEIGHTS_FILE).write_bytes(b"".join(chunks))
    (directory / META_FILE).write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return directory


def load_checkpoint(directory: str | Path) -> tuple[dict[str, torch.Tensor], dict]:
    """Read a checkpoint back; raises CheckpointError on any inconsistency."""
    directory = Path(directory)
    meta_path = directory / META_FILE
    weights_path = directory / WEIGHTS_FILE
    if not meta_path.is_file() or not weights_path.is_file():
        raise CheckpointError(f"{directory} is not a checkpoint directory")
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"{meta_path} is not valid JSON: {exc}") from None
    if meta.get("format_version") != FORMAT_VERSION:
        raise CheckpointError(
            f"unsupported checkpoint format version {meta.get('format_version')!r}"
        )
    raw = weights_path.read_bytes()
    tensors: dict[str, torch.Tensor] = {}
    expected_end = 0
    for entry in meta["parameters"]:
        shape = tuple(entry["shape"])
        count = int(np.prod(shape)) if shape else 1
        start = entry["offset"]
        end = start + 4 * count
        if end > len(raw):
            raise CheckpointError(
                f"weights file truncated: {entry['name']!r} needs bytes up to {end}, "
                f"file has {len(raw)}"
            )
        array = np.frombuffer(raw, dtype="<f4", count=count, offset=start)
        tensors[entry["name"]] = torch.from_numpy(array.copy()).reshape(shape)
        expected_end = max(expected_end, end)
    if expected_end != len(raw):
        raise CheckpointError(
            f"weights file has {len(raw)} bytes but the table accounts for {expected_end}"
        )
    return tensors, meta["model"]


def checkpoint_hash(directory: str | Path) -> str:
    """Content hash of a checkpoint (metadata plus weights)."""
    directory = Path(directory)
    digest = hashlib.sha256()
    for name in (META_FILE, WEIGHTS_FILE):
        path = directory / name
        if not path.is_file():
            raise CheckpointError(f"{directory} is not a checkpoint directory")
        digest.update(path.read_bytes())
    return digest.hexdigest()
