"""K-nearest-neighbour baseline over embedding vectors."""

from __future__ import annotations

import numpy as np

from ..errors import EmptyTrainSet, ValidationError
from ..labels import ClassLabel


def knn_baseline(
    train_embeddings: np.ndarray,
    train_labels: np.ndarray,
    query_embeddings: np.ndarray,
    k: int,
) -> list[ClassLabel]:
    """Majority vote over the k nearest training points (Euclidean).

    Vote ties break by the smaller mean distance to the tied class's
    neighbours, then by the lower class code.
    """
    train_embeddings = np.asarray(train_embeddings, dtype=np.float64)
    train_labels = np.asarray(train_labels, dtype=np.int64)
    query_embeddings = np.asarray(query_embeddings, dtype=np.float64)
    if train_embeddings.shape[0] == 0:
        raise EmptyTrainSet("knn_baseline called with no training points")
    if not 1 <= k <= train_embeddings.shape[0]:
        raise ValidationError(
            f"k must be in [1, {train_embeddings.shape[0]}]; got {k}"
        )

    predictions = []
    for query in query_embeddings:
        dists = np.sqrt(((train_embeddings - query) ** 2).sum(axis=1))
        # Stable order: by distance, then training index.
        nearest = np.argsort(dists, kind="stable")[:k]
        votes: dict[int, list[float]] = {}
        for idx in nearest:
            votes.setdefault(int(train_labels[idx]), []).append(float(dists[idx]))
        best = min(
            votes.items(),
            key=lambda item: (-len(item[1]), float(np.mean(item[1])), item[0]),
        )
        predictions.append(ClassLabel(best[0]))
    return predictions
