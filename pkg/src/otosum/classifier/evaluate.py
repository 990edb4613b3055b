"""Evaluation helpers: manifest-level predictions, embeddings, geometry."""

from __future__ import annotations

import numpy as np
import torch

from ..data.manifest import DatasetManifest
from ..data.preprocess import load_image_tensor
from ..labels import ClassLabel
from ..metrics.classification import PRF, confusion, precision_recall_f1
from .model import ImageClassifier


def _batched_images(manifest: DatasetManifest, batch_size: int):
    batch = []
    for record in manifest.records:
        img = load_image_tensor(manifest.resolve(record), "classifier")
        batch.append(torch.from_numpy(img.data))
        if len(batch) == batch_size:
            yield torch.stack(batch).to(memory_format=torch.channels_last)
            batch = []
    if batch:
        yield torch.stack(batch).to(memory_format=torch.channels_last)


@torch.no_grad()
def predict_manifest(
    model: ImageClassifier, manifest: DatasetManifest, batch_size: int = 64
) -> list[ClassLabel]:
    model.net.eval()
    preds: list[ClassLabel] = []
    for batch in _batched_images(manifest, batch_size):
        _, logits = model.net(batch)
        preds.extend(ClassLabel(int(i)) for i in logits.argmax(dim=1))
    return preds


@torch.no_grad()
def encode_manifest(
    model: ImageClassifier, manifest: DatasetManifest, batch_size: int = 64
) -> tuple[np.ndarray, np.ndarray]:
    """Embeddings (N, 128) and label codes (N,) for every record."""
    model.net.eval()
    chunks = []
    for batch in _batched_images(manifest, batch_size):
        emb, _ = model.net(batch)
        chunks.append(emb.numpy().astype(np.float64))
    embeddings = (
        np.concatenate(chunks) if chunks else np.empty((0, model.net.embed.out_features))
    )
    labels = np.array([int(r.label) for r in manifest.records], dtype=np.int64)
    return embeddings, labels


def evaluate_classifier(
    model: ImageClassifier, manifest: DatasetManifest, batch_size: int = 64
) -> PRF:
    preds = predict_manifest(model, manifest, batch_size)
    truth = [r.label for r in manifest.records]
    return precision_recall_f1(confusion(preds, truth))


def class_distance_means(
    embeddings: np.ndarray, labels: np.ndarray
) -> tuple[float, float]:
    """Mean intra-class and inter-class pairwise Euclidean distances."""
    diffs = embeddings[:, None, :] - embeddings[None, :, :]
    dists = np.sqrt((diffs**2).sum(axis=2))
    same = labels[:, None] == labels[None, :]
    upper = np.triu(np.ones_like(same, dtype=bool), k=1)
    intra = dists[same & upper]
    inter = dists[~same & upper]
    return float(intra.mean()), float(inter.mean())
