"""Residual CNN encoder with a 128-d embedding layer and a 5-way head.

Desk-scale 18-layer layout: a downsampling stem, four stages of two basic
residual blocks at widths 16/32/64/128, global average pooling, a dense
embedding layer (the one the combined loss refines), and the softmax head.
Input is a classifier-mode 3x226x226 tensor.
"""

from __future__ import annotations

from collections import OrderedDict
from pathlib import Path

import numpy as np
import torch
from torch import nn

from ..data.preprocess import ImageTensor
from ..errors import CheckpointError, ShapeError
from ..labels import CLASS_NAMES, NUM_CLASSES, ClassLabel
from ..nn import checkpoint as ckpt
from ..nn.graph import BatchNorm2d, Conv2d, Dense, LayerGraph, ResidualBlock
from ..nn.init import init_parameters, load_into_module
from ..nn.params import named_float_state
from .losses import ClassifierEmbedding, ClassProbabilities

EMBEDDING_DIM = 128
STAGE_WIDTHS = (16, 32, 64, 128)


class BasicBlock(nn.Module):
    def __init__(self, cin: int, cout: int, stride: int = 1):
        super().__init__()
        self.conv1 = nn.Conv2d(cin, cout, 3, stride, 1, bias=False)
        self.norm1 = nn.BatchNorm2d(cout)
        self.conv2 = nn.Conv2d(cout, cout, 3, 1, 1, bias=False)
        self.norm2 = nn.BatchNorm2d(cout)
        self.shortcut = nn.Sequential()
        if stride != 1 or cin != cout:
            self.shortcut = nn.Sequential(
                nn.Conv2d(cin, cout, 1, stride, bias=False), nn.BatchNorm2d(cout)
            )

    def forward(self, x):
        h = torch.relu(self.norm1(self.conv1(x)))
        h = self.norm2(self.conv2(h))
        return torch.relu(h + self.shortcut(x))


class ClassifierNet(nn.Module):
    """The torch module; names mirror :func:`classifier_graph` exactly."""

    def __init__(self):
        super().__init__()
        w1, w2, w3, w4 = STAGE_WIDTHS
        self.stem = nn.Sequential(
            OrderedDict(
                conv=nn.Conv2d(3, w1, 5, 4, 2, bias=False),
                norm=nn.BatchNorm2d(w1),
                relu=nn.ReLU(),
                pool=nn.MaxPool2d(3, 2, 1),
            )
        )
        self.stage1 = nn.Sequential(
            OrderedDict(block1=BasicBlock(w1, w1), block2=BasicBlock(w1, w1))
        )
        self.stage2 = nn.Sequential(
            OrderedDict(block1=BasicBlock(w1, w2, 2), block2=BasicBlock(w2, w2))
        )
        self.stage3 = nn.Sequential(
            OrderedDict(block1=BasicBlock(w2, w3, 2), block2=BasicBlock(w3, w3))
        )
        self.stage4 = nn.Sequential(
            OrderedDict(block1=BasicBlock(w3, w4, 2), block2=BasicBlock(w4, w4))
        )
        self.embed = nn.Linear(w4, EMBEDDING_DIM)
        self.head = nn.Linear(EMBEDDING_DIM, NUM_CLASSES)

    def forward(self, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        """Return (embeddings, logits) for a batch of 3x226x226 images."""
        h = self.stem(x)
        h = self.stage4(self.stage3(self.stage2(self.stage1(h))))
        h = h.mean(dim=(2, 3))
        emb = self.embed(h)
        return emb, self.head(emb)


def classifier_graph() -> LayerGraph:
    """Descriptor list matching :class:`ClassifierNet` parameter names."""
    w1, w2, w3, w4 = STAGE_WIDTHS
    layers = [
        Conv2d("stem.conv", 3, w1, kernel=5, stride=4, padding=2),
        BatchNorm2d("stem.norm", w1, w1),
        ResidualBlock("stage1.block1", w1, w1),
        ResidualBlock("stage1.block2", w1, w1),
        ResidualBlock("stage2.block1", w1, w2, stride=2),
        ResidualBlock("stage2.block2", w2, w2),
        ResidualBlock("stage3.block1", w2, w3, stride=2),
        ResidualBlock("stage3.block2", w3, w3),
        ResidualBlock("stage4.block1", w3, w4, stride=2),
        ResidualBlock("stage4.block2", w4, w4),
        Dense("embed", w4, EMBEDDING_DIM),
        Dense("head", EMBEDDING_DIM, NUM_CLASSES),
    ]
    return LayerGraph(layers)


class ImageClassifier:
    """A loaded classifier: encode, classify, save/restore."""

    def __init__(self, net: ClassifierNet, seed: int = 0):
        # channels_last everywhere so training and reloaded-inference hit
        # the same conv kernels (bit-identical metrics across a round trip)
        self.net = net.to(memory_format=torch.channels_last)
        self.seed = seed
        self.net.eval()

    @classmethod
    def new(cls, seed: int = 0) -> "ImageClassifier":
        net = ClassifierNet()
        load_into_module(net, init_parameters(classifier_graph(), seed))
        return cls(net, seed)

    @classmethod
    def load(cls, directory: str | Path) -> "ImageClassifier":
        tensors, meta = ckpt.load_checkpoint(directory)
        if meta.get("kind") != "classifier":
            raise CheckpointError(
                f"{directory} holds a {meta.get('kind')!r} checkpoint, not a classifier"
            )
        net = ClassifierNet()
        result = net.load_state_dict(tensors, strict=False)
        allowed = {n for n, b in net.named_buffers() if b.dtype != torch.float32}
        stray = [n for n in result.missing_keys if n not in allowed]
        if stray or result.unexpected_keys:
            raise CheckpointError(
                f"checkpoint does not match the classifier architecture: "
                f"missing={stray} unexpected={list(result.unexpected_keys)}"
            )
        return cls(net, seed=meta.get("seed", 0))

    def save(self, directory: str | Path) -> Path:
        meta = {
            "kind": "classifier",
            "architecture": classifier_graph().describe(),
            "class_names": CLASS_NAMES,
            "embedding_dim": EMBEDDING_DIM,
            "seed": self.seed,
        }
        return ckpt.save_checkpoint(directory, named_float_state(self.net), meta)

    def _check_input(self, image: ImageTensor) -> torch.Tensor:
        if image.mode != "classifier":
            raise ShapeError(f"classifier expects classifier-mode tensors, got {image.mode!r}")
        return (
            torch.from_numpy(image.data)
            .unsqueeze(0)
            .to(memory_format=torch.channels_last)
        )

    @torch.no_grad()
    def encode(self, image: ImageTensor) -> ClassifierEmbedding:
        self.net.eval()
        emb, _ = self.net(self._check_input(image))
        return ClassifierEmbedding(vector=emb.squeeze(0).numpy().astype(np.float64))

    @torch.no_grad()
    def classify(self, image: ImageTensor) -> tuple[ClassLabel, ClassProbabilities]:
        """Argmax of the head softmax; ties resolve to the lowest class code."""
        self.net.eval()
        _, logits = self.net(self._check_input(image))
        probs = torch.softmax(logits.squeeze(0).double(), dim=-1).numpy()
        return ClassLabel(int(np.argmax(probs))), ClassProbabilities(probs=probs)

    @torch.no_grad()
    def encode_batch(self, batch: torch.Tensor) -> np.ndarray:
        """Embeddings for a preprocessed (N, 3, 226, 226) batch."""
        self.net.eval()
        emb, _ = self.net(batch.to(memory_format=torch.channels_last))
        return emb.numpy().astype(np.float64)
