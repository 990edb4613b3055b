"""Image/prompt embedding fusion and sinusoidal positional encoding.

The projected dense image vector is broadcast-added to every prompt
position, and the standard sinusoid table is added on top exactly once
(the sequence remembers whether it has been position-encoded).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from ..errors import DoubleEncoding, OddDimension, ShapeError, ValidationError
from .prompt import PromptSequence

IMAGE_EMBEDDING_DIM = 512


@dataclass(frozen=True)
class DenseImageEmbedding:
    """512-d dense image vector from the generator's image encoder."""

    vector: np.ndarray

    def __post_init__(self) -> None:
        if self.vector.shape != (IMAGE_EMBEDDING_DIM,):
            raise ShapeError(
                f"dense image embeddings are {IMAGE_EMBEDDING_DIM}-d; "
                f"got {self.vector.shape}"
            )
        if not np.all(np.isfinite(self.vector)):
            raise ValidationError("dense image embedding contains non-finite values")


@dataclass
class FusedSequence:
    """(length x d) fused matrix; flag tracks positional encoding."""

    matrix: torch.Tensor
    position_encoded: bool = False


def fuse(
    image_embedding: DenseImageEmbedding,
    prompt: PromptSequence,
    projection: torch.nn.Linear,
) -> FusedSequence:
    """Project the image vector to model width and add it to every row."""
    if projection.in_features != IMAGE_EMBEDDING_DIM:
        raise ShapeError(
            f"projection must map {IMAGE_EMBEDDING_DIM} -> d; "
            f"it maps {projection.in_features}"
        )
    if projection.out_features != prompt.embedded.shape[1]:
        raise ShapeError(
            f"projection width {projection.out_features} != prompt width "
            f"{prompt.embedded.shape[1]}"
        )
    with torch.no_grad():
        vec = torch.from_numpy(image_embedding.vector).to(prompt.embedded.dtype)
        projected = projection(vec)
        fused = prompt.embedded + projected.unsqueeze(0)
    return FusedSequence(matrix=fused, position_encoded=False)


def positional_encoding(
    seq_len: int, d: int, dtype: torch.dtype = torch.float32
) -> torch.Tensor:
    """Sinusoid table: (k, 2i) = sin(k / 10000^(2i/d)), (k, 2i+1) = cos(...)."""
    if d % 2 != 0:
        raise OddDimension(f"model dimension must be even; got {d}")
    positions = np.arange(seq_len, dtype=np.float64)[:, None]
    dims = np.arange(0, d, 2, dtype=np.float64)
    angles = positions / np.power(10000.0, dims / d)
    table = np.empty((seq_len, d), dtype=np.float64)
    table[:, 0::2] = np.sin(angles)
    table[:, 1::2] = np.cos(angles)
    return torch.from_numpy(table).to(dtype)


def add_positional(fused: FusedSequence) -> FusedSequence:
    """Add the sinusoid table row-wise; refuses to encode twice."""
    if fused.position_encoded:
        raise DoubleEncoding("sequence is already position-encoded")
    seq_len, d = fused.matrix.shape
    table = positional_encoding(seq_len, d, dtype=fused.matrix.dtype)
    return FusedSequence(matrix=fused.matrix + table, position_encoded=True)
