"""Training loop for the classification stage.

Each batch draws one uniform triplet per anchor, runs anchors, positives,
and negatives through the shared encoder, and backpropagates the combined
objective (triplet hinge on embeddings plus cross-entropy on the anchor
head).  ``loss_mode`` selects the combined objective or either term alone,
mirroring the three deep rows of the comparison table.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from ..data.manifest import DatasetManifest
from ..data.preprocess import load_image_tensor
from ..data.triplets import sample_triplet
from ..errors import NonFiniteLoss, ValidationError
from ..labels import ClassLabel
from ..metrics.classification import macro_f1
from ..nn.adam import Adam
from .losses import DEFAULT_MARGIN, cross_entropy_from_logits, triplet_hinge
from .model import ImageClassifier

LOSS_MODES = ("combined", "ce", "triplet")

HISTORY_COLUMNS = ("epoch", "triplet_loss", "ce_loss", "total_loss", "val_macro_f1")


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    triplet_loss: float
    ce_loss: float
    total_loss: float
    val_macro_f1: float


@dataclass
class TrainResult:
    model: ImageClassifier
    history: list[EpochStats]
    best_epoch: int


class _SplitTensors:
    """A manifest preloaded as one channels-last float32 batch."""

    def __init__(self, manifest: DatasetManifest):
        tensors = []
        labels = []
        self.index: dict[str, int] = {}
        for i, record in enumerate(manifest.records):
            img = load_image_tensor(manifest.resolve(record), "classifier")
            tensors.append(torch.from_numpy(img.data))
            labels.append(int(record.label))
            self.index[record.id] = i
        self.images = (
            torch.stack(tensors).to(memory_format=torch.channels_last)
            if tensors
            else torch.empty(0, 3, 226, 226)
        )
        self.labels = torch.tensor(labels, dtype=torch.int64)
        self.ids = [r.id for r in manifest.records]

    def __len__(self) -> int:
        return len(self.ids)


def _validate(model: ImageClassifier, split: _SplitTensors, batch_size: int) -> float:
    model.net.eval()
    preds: list[ClassLabel] = []
    with torch.no_grad():
        for start in range(0, len(split), batch_size):
            batch = split.images[start : start + batch_size]
            _, logits = model.net(batch)
            preds.extend(ClassLabel(int(i)) for i in logits.argmax(dim=1))
    truth = [ClassLabel(int(c)) for c in split.labels]
    return macro_f1(preds, truth)


def train_classifier(
    train_manifest: DatasetManifest,
    val_manifest: DatasetManifest,
    epochs: int = 100,
    batch_size: int = 32,
    learning_rate: float = 1e-3,
    seed: int = 0,
    margin: float = DEFAULT_MARGIN,
    loss_mode: str = "combined",
    triplet_reduction: str = "mean",
    quiet: bool = True,
) -> TrainResult:
    """Train from a fresh seeded initialization; keep the best-validation model.

    Deterministic: the (manifests, config, seed) tuple fully determines the
    history and the returned parameters.  Raises NonFiniteLoss with an
    epoch/batch diagnostic if the objective leaves the reals.
    """
    if loss_mode not in LOSS_MODES:
        raise ValidationError(f"loss_mode must be one of {LOSS_MODES}; got {loss_mode!r}")
    if epochs < 0:
        raise ValidationError(f"epochs must be non-negative; got {epochs}")

    torch.manual_seed(seed)
    model = ImageClassifier.new(seed=seed)
    net = model.net
    rng = np.random.Generator(np.random.PCG64(seed))

    history: list[EpochStats] = []
    if epochs == 0:
        return TrainResult(model=model, history=history, best_epoch=-1)

    train = _SplitTensors(train_manifest)
    val = _SplitTensors(val_manifest)
    optimizer = Adam(dict(net.named_parameters()), lr=learning_rate)

    best_f1 = -1.0
    best_epoch = -1
    best_state = None

    for epoch in range(1, epochs + 1):
        net.train()
        order = rng.permutation(len(train))
        sums = np.zeros(3, dtype=np.float64)  # triplet, ce, total
        seen = 0
        for batch_no, start in enumerate(range(0, len(order), batch_size)):
            anchor_idx = order[start : start + batch_size]
            anchor_ids = [train.ids[i] for i in anchor_idx]

            if loss_mode == "ce":
                idx = torch.from_numpy(anchor_idx)
                x = train.images.index_select(0, idx)
                _, logits = net(x)
                ce = cross_entropy_from_logits(logits, train.labels.index_select(0, idx))
                trip = torch.zeros((), dtype=ce.dtype)
            else:
                triplets = [
                    sample_triplet(train_manifest, aid, rng) for aid in anchor_ids
                ]
                a = torch.tensor([train.index[t.anchor.id] for t in triplets])
                p = torch.tensor([train.index[t.positive.id] for t in triplets])
                n = torch.tensor([train.index[t.negative.id] for t in triplets])
                x = train.images.index_select(0, torch.cat([a, p, n]))
                emb, logits = net(x)
                k = len(triplets)
                phi = ((emb[:k] - emb[k : 2 * k]) ** 2).sum(dim=1)
                psi = ((emb[:k] - emb[2 * k :]) ** 2).sum(dim=1)
                trip = triplet_hinge(phi, psi, margin, triplet_reduction)
                if loss_mode == "combined":
                    ce = cross_entropy_from_logits(
                        logits[:k], train.labels.index_select(0, a)
                    )
                else:
                    ce = torch.zeros((), dtype=trip.dtype)

            loss = trip + ce
            if not torch.isfinite(loss):
                raise NonFiniteLoss(
                    f"epoch {epoch} batch {batch_no}: loss={loss.item()} "
                    f"(triplet={trip.item()}, ce={ce.item()})"
                )
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()

            count = len(anchor_idx)
            sums += count * np.array(
                [float(trip.detach()), float(ce.detach()), float(loss.detach())]
            )
            seen += count

        val_f1 = _validate(model, val, max(batch_size, 64))
        stats = EpochStats(
            epoch=epoch,
            triplet_loss=sums[0] / seen,
            ce_loss=sums[1] / seen,
            total_loss=sums[2] / seen,
            val_macro_f1=val_f1,
        )
        history.append(stats)
        if not quiet:
            print(
                f"epoch {epoch:4d}  triplet {stats.triplet_loss:.4f}  "
                f"ce {stats.ce_loss:.4f}  total {stats.total_loss:.4f}  "
                f"val_f1 {val_f1:.4f}"
            )
        if val_f1 > best_f1:
            best_f1 = val_f1
            best_epoch = epoch
            best_state = {k: v.detach().clone() for k, v in net.state_dict().items()}

    if best_state is not None:
        net.load_state_dict(best_state)
    net.eval()
    return TrainResult(model=model, history=history, best_epoch=best_epoch)


def write_history_csv(history: list[EpochStats], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(HISTORY_COLUMNS)
        for row in history:
            writer.writerow(
                [
                    row.epoch,
                    repr(row.triplet_loss),
                    repr(row.ce_loss),
                    repr(row.total_loss),
                    repr(row.val_macro_f1),
                ]
            )
    return path
