"""Teacher-forced training of the summary generator.

The vocabulary is built from the training summaries plus the rendered
prompt template; gold class labels drive the prompts; the image encoder
and projection learn jointly with the transformer.  The reported loss is
per-token cross-entropy with PAD positions masked out.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from ..data.manifest import DatasetManifest
from ..data.preprocess import load_image_tensor
from ..errors import NonFiniteLoss, ValidationError
from ..labels import ClassLabel
from ..nn.adam import Adam
from .model import GeneratorDims, SummaryGenerator
from .prompt import DEFAULT_PROMPT_TEMPLATE, render_prompt
from .vocab import BOS, EOS, PAD, Vocabulary

GEN_HISTORY_COLUMNS = ("epoch", "train_token_ce", "val_token_ce")


@dataclass(frozen=True)
class GenEpochStats:
    epoch: int
    train_token_ce: float
    val_token_ce: float


@dataclass
class GenTrainResult:
    model: SummaryGenerator
    history: list[GenEpochStats]
    best_epoch: int


class _GenSplit:
    """Preloaded images, prompt ids, and padded reference sequences."""

    def __init__(self, manifest: DatasetManifest, vocab: Vocabulary, template: str):
        self.images = (
            torch.stack(
                [
                    torch.from_numpy(
                        load_image_tensor(manifest.resolve(r), "generator").data
                    )
                    for r in manifest.records
                ]
            )
            if manifest.records
            else torch.empty(0, 3, 224, 224)
        )
        prompt_ids = {
            label: vocab.encode(render_prompt(label, template)) for label in ClassLabel
        }
        self.prompts = [prompt_ids[r.label] for r in manifest.records]
        self.references = [vocab.encode(r.summary) for r in manifest.records]

    def __len__(self) -> int:
        return len(self.prompts)


def _pad_batch(sequences: list[list[int]]) -> tuple[torch.Tensor, torch.Tensor]:
    """Right-pad with PAD; returns (ids, keep_mask)."""
    width = max(len(s) for s in sequences)
    ids = torch.full((len(sequences), width), PAD, dtype=torch.int64)
    for i, seq in enumerate(sequences):
        ids[i, : len(seq)] = torch.tensor(seq, dtype=torch.int64)
    return ids, ids != PAD


def masked_token_ce(logits: torch.Tensor, targets: torch.Tensor) -> torch.Tensor:
    """Mean cross-entropy over non-PAD target positions; differentiable."""
    log_probs = torch.log_softmax(logits, dim=-1)
    picked = log_probs.gather(2, targets.unsqueeze(-1)).squeeze(-1)
    keep = targets != PAD
    return -(picked * keep).sum() / keep.sum().clamp(min=1)


def _run_batch(
    net, split: _GenSplit, indices: list[int]
) -> tuple[torch.Tensor, int]:
    prompts = [split.prompts[i] for i in indices]
    refs = [split.references[i] for i in indices]
    prompt_ids, prompt_pad = _pad_batch(prompts)
    dec_in, _ = _pad_batch([[BOS] + r for r in refs])
    targets, _ = _pad_batch([r + [EOS] for r in refs])
    images = split.images[indices]
    logits = net(prompt_ids, prompt_pad, images, dec_in, dec_in != PAD)
    loss = masked_token_ce(logits, targets)
    tokens = int((targets != PAD).sum())
    return loss, tokens


def _epoch_eval(net, split: _GenSplit, batch_size: int) -> float:
    if len(split) == 0:
        return float("nan")
    net.eval()
    total = 0.0
    tokens = 0
    with torch.no_grad():
        for start in range(0, len(split), batch_size):
            indices = list(range(start, min(start + batch_size, len(split))))
            loss, count = _run_batch(net, split, indices)
            total += float(loss) * count
            tokens += count
    return total / tokens


def train_generator(
    train_manifest: DatasetManifest,
    val_manifest: DatasetManifest,
    epochs: int = 50,
    batch_size: int = 8,
    learning_rate: float = 3e-5,
    seed: int = 0,
    dims: GeneratorDims = GeneratorDims(),
    template: str = DEFAULT_PROMPT_TEMPLATE,
    quiet: bool = True,
) -> GenTrainResult:
    """Train a fresh generator; the best-validation checkpoint is kept.

    With an empty validation manifest the last epoch wins (useful for
    overfit checks on a handful of pairs).
    """
    if epochs < 0:
        raise ValidationError(f"epochs must be non-negative; got {epochs}")
    vocab = Vocabulary.build(
        [r.summary for r in train_manifest.records]
        + [render_prompt(label, template) for label in ClassLabel]
    )
    torch.manual_seed(seed)
    model = SummaryGenerator.new(vocab, dims, seed)
    net = model.net
    rng = np.random.Generator(np.random.PCG64(seed))

    history: list[GenEpochStats] = []
    if epochs == 0:
        return GenTrainResult(model=model, history=history, best_epoch=-1)

    train = _GenSplit(train_manifest, vocab, template)
    val = _GenSplit(val_manifest, vocab, template)
    optimizer = Adam(dict(net.named_parameters()), lr=learning_rate)

    best_val = float("inf")
    best_epoch = -1
    best_state = None

    for epoch in range(1, epochs + 1):
        net.train()
        order = rng.permutation(len(train))
        total = 0.0
        tokens = 0
        for batch_no, start in enumerate(range(0, len(order), batch_size)):
            indices = [int(i) for i in order[start : start + batch_size]]
            loss, count = _run_batch(net, train, indices)
            if not torch.isfinite(loss):
                raise NonFiniteLoss(
                    f"epoch {epoch} batch {batch_no}: token cross-entropy={loss.item()}"
                )
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total += float(loss.detach()) * count
            tokens += count

        val_ce = _epoch_eval(net, val, batch_size)
        stats = GenEpochStats(
            epoch=epoch, train_token_ce=total / tokens, val_token_ce=val_ce
        )
        history.append(stats)
        if not quiet:
            print(
                f"epoch {epoch:4d}  train_ce {stats.train_token_ce:.4f}  "
                f"val_ce {stats.val_token_ce:.4f}"
            )
        selector = stats.val_token_ce if len(val) else stats.train_token_ce
        if selector < best_val:
            best_val = selector
            best_epoch = epoch
            best_state = {k: v.detach().clone() for k, v in net.state_dict().items()}

    if best_state is not None:
        net.load_state_dict(best_state)
    net.eval()
    return GenTrainResult(model=model, history=history, best_epoch=best_epoch)


def write_gen_history_csv(history: list[GenEpochStats], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(GEN_HISTORY_COLUMNS)
        for row in history:
            writer.writerow([row.epoch, repr(row.train_token_ce), repr(row.val_token_ce)])
    return path
