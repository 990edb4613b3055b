"""Triplet, cross-entropy, and combined losses for the classification stage.

The hinge operates on squared Euclidean distances between anchor/positive
and anchor/negative embeddings; the combined objective is the plain
unweighted sum of the triplet and cross-entropy terms.  All functions
preserve the dtype they are given, so float64 inputs yield float64 math
for oracle-grade comparisons while training runs in float32.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import torch

from ..errors import ShapeError, ValidationError
from ..labels import NUM_CLASSES

DEFAULT_MARGIN = 0.2

PROB_SUM_TOL = 1e-6
LOG_FLOOR = 1e-12


@dataclass(frozen=True)
class ClassifierEmbedding:
    """128-d image embedding produced by the classifier encoder."""

    vector: np.ndarray

    EXPECTED_DIM = 128

    def __post_init__(self) -> None:
        if self.vector.shape != (self.EXPECTED_DIM,):
            raise ShapeError(
                f"classifier embeddings are {self.EXPECTED_DIM}-d; got {self.vector.shape}"
            )
        if not np.all(np.isfinite(self.vector)):
            raise ValidationError("classifier embedding contains non-finite values")


@dataclass(frozen=True)
class TripletDistances:
    """Squared distances anchor<->positive (phi) and anchor<->negative (psi)."""

    phi: float
    psi: float

    def __post_init__(self) -> None:
        if self.phi < 0 or self.psi < 0:
            raise ValidationError("squared distances must be non-negative")


@dataclass(frozen=True)
class ClassProbabilities:
    """A 5-way probability vector over the diagnosis classes."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        if self.probs.shape != (NUM_CLASSES,):
            raise ShapeError(f"expected {NUM_CLASSES} probabilities; got {self.probs.shape}")
        if np.any(self.probs < 0) or np.any(self.probs > 1):
            raise ValidationError("probabilities must lie in [0, 1]")
        if abs(float(self.probs.sum()) - 1.0) > PROB_SUM_TOL:
            raise ValidationError(f"probabilities sum to {self.probs.sum()}, not 1")


@dataclass(frozen=True)
class LossBreakdown:
    """The combined objective and its two parts."""

    triplet: float
    cross_entropy: float
    total: float
    alpha: float = DEFAULT_MARGIN


def _as_tensor(x) -> torch.Tensor:
    if isinstance(x, torch.Tensor):
        return x
    arr = np.asarray(x, dtype=np.float64)
    return torch.from_numpy(arr)


def squared_distances(a: torch.Tensor, b: torch.Tensor) -> torch.Tensor:
    """Row-wise squared Euclidean distance; differentiable."""
    if a.shape != b.shape:
        raise ShapeError(f"embedding shapes differ: {tuple(a.shape)} vs {tuple(b.shape)}")
    return ((a - b) ** 2).sum(dim=-1)


def triplet_distances(a, p, n) -> TripletDistances:
    """Squared distances for one (anchor, positive, negative) vector triple."""
    a, p, n = _as_tensor(a), _as_tensor(p), _as_tensor(n)
    phi = squared_distances(a, p)
    psi = squared_distances(a, n)
    return TripletDistances(phi=float(phi), psi=float(psi))


def triplet_hinge(
    phi: torch.Tensor, psi: torch.Tensor, alpha: float, reduction: str = "mean"
) -> torch.Tensor:
    """Batched hinge max(phi - psi + alpha, 0); differentiable."""
    if alpha < 0:
        raise ValidationError(f"margin alpha must be non-negative; got {alpha}")
    if reduction not in ("mean", "sum"):
        raise ValidationError(f"unknown reduction {reduction!r}")
    per_item = torch.clamp(phi - psi + alpha, min=0)
    return per_item.mean() if reduction == "mean" else per_item.sum()


def triplet_loss(
    batch: Iterable[TripletDistances],
    alpha: float = DEFAULT_MARGIN,
    reduction: str = "mean",
) -> float:
    """Hinge loss over a batch of precomputed distances.

    The default reduces by batch mean; ``reduction="sum"`` restores the
    plain summed form.
    """
    items = list(batch)
    if not items:
        raise ValidationError("triplet_loss needs at least one distance pair")
    phi = torch.tensor([d.phi for d in items], dtype=torch.float64)
    psi = torch.tensor([d.psi for d in items], dtype=torch.float64)
    return float(triplet_hinge(phi, psi, alpha, reduction))


def cross_entropy_loss(
    probabilities: Sequence[ClassProbabilities] | np.ndarray,
    labels: Sequence[int],
) -> float:
    """Mean negative log-likelihood of the true classes.

    Accepts explicit probability vectors; logs are clamped at 1e-12 so a
    confidently wrong model yields a large but finite loss.
    """
    if isinstance(probabilities, np.ndarray):
        probs = probabilities.astype(np.float64)
    else:
        probs = np.stack([p.probs for p in probabilities]).astype(np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if probs.shape[0] != labels.shape[0]:
        raise ShapeError(
            f"{probs.shape[0]} probability rows vs {labels.shape[0]} labels"
        )
    if probs.shape[0] == 0:
        raise ValidationError("cross_entropy_loss needs at least one instance")
    picked = probs[np.arange(len(labels)), labels]
    return float(-np.mean(np.log(np.maximum(picked, LOG_FLOOR))))


def cross_entropy_from_logits(
    logits: torch.Tensor, labels: torch.Tensor
) -> torch.Tensor:
    """Differentiable form of the same loss via log-softmax."""
    log_probs = torch.log_softmax(logits, dim=-1)
    picked = log_probs.gather(1, labels.view(-1, 1)).squeeze(1)
    return -picked.mean()


def combined_loss(
    triplet_part: float, ce_part: float, alpha: float = DEFAULT_MARGIN
) -> LossBreakdown:
    """Total objective: unweighted sum of the two parts."""
    if triplet_part < 0 or ce_part < 0:
        raise ValidationError("loss parts must be non-negative")
    return LossBreakdown(
        triplet=float(triplet_part),
        cross_entropy=float(ce_part),
        total=float(triplet_part) + float(ce_part),
        alpha=alpha,
    )
