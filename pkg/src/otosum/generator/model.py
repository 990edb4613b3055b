"""Compact transformer encoder-decoder over fused image/prompt embeddings.

Pre-layer-norm blocks, 8-head attention, feed-forward width 4d.  The
encoder consumes the position-encoded fused prompt; the decoder is
teacher-forced during training and autoregressive at inference.  A small
CNN trained jointly with the transformer supplies the 512-d dense image
vector.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from torch import nn

from ..data.preprocess import ImageTensor
from ..errors import CheckpointError, ShapeError
from ..labels import ClassLabel
from ..nn import checkpoint as ckpt
from ..nn.graph import (
    BatchNorm2d,
    Conv2d,
    Dense,
    Embedding,
    LayerGraph,
    LayerNorm,
    MultiHeadAttention,
)
from ..nn.init import init_parameters, load_into_module
from ..nn.params import named_float_state
from .fusion import IMAGE_EMBEDDING_DIM, DenseImageEmbedding, positional_encoding
from .prompt import DEFAULT_PROMPT_TEMPLATE, PromptSequence, build_prompt
from .vocab import PAD, Vocabulary


@dataclass(frozen=True)
class GeneratorDims:
    d_model: int = 256
    heads: int = 8
    encoder_layers: int = 4
    decoder_layers: int = 4

    @property
    def ff(self) -> int:
        return 4 * self.d_model


class Attention(nn.Module):
    """Multi-head scaled dot-product attention with q/k/v/output projections."""

    def __init__(self, d: int, heads: int):
        super().__init__()
        if d % heads != 0:
            raise ShapeError(f"dim {d} not divisible by {heads} heads")
        self.heads = heads
        self.head_dim = d // heads
        self.query = nn.Linear(d, d)
        self.key = nn.Linear(d, d)
        self.value = nn.Linear(d, d)
        self.output = nn.Linear(d, d)

    def forward(self, q_input, kv_input, mask=None):
        """mask broadcasts over (batch, heads, q_len, k_len); True = keep."""
        b, q_len, d = q_input.shape
        k_len = kv_input.shape[1]
        shape = (b, -1, self.heads, self.head_dim)
        q = self.query(q_input).view(b, q_len, self.heads, self.head_dim).transpose(1, 2)
        k = self.key(kv_input).view(*shape).transpose(1, 2)
        v = self.value(kv_input).view(*shape).transpose(1, 2)
        scores = q @ k.transpose(-2, -1) / math.sqrt(self.head_dim)
        if mask is not None:
            scores = scores.masked_fill(~mask, float("-inf"))
        attn = torch.softmax(scores, dim=-1)
        mixed = (attn @ v).transpose(1, 2).reshape(b, q_len, d)
        return self.output(mixed)


class EncoderLayer(nn.Module):
    def __init__(self, dims: GeneratorDims):
        super().__init__()
        d = dims.d_model
        self.norm1 = nn.LayerNorm(d)
        self.attn = Attention(d, dims.heads)
        self.norm2 = nn.LayerNorm(d)
        self.ff1 = nn.Linear(d, dims.ff)
        self.ff2 = nn.Linear(dims.ff, d)

    def forward(self, x, pad_mask):
        h = self.norm1(x)
        x = x + self.attn(h, h, pad_mask)
        h = self.norm2(x)
        return x + self.ff2(torch.relu(self.ff1(h)))


class DecoderLayer(nn.Module):
    def __init__(self, dims: GeneratorDims):
        super().__init__()
        d = dims.d_model
        self.norm1 = nn.LayerNorm(d)
        self.self_attn = Attention(d, dims.heads)
        self.norm2 = nn.LayerNorm(d)
        self.cross_attn = Attention(d, dims.heads)
        self.norm3 = nn.LayerNorm(d)
        self.ff1 = nn.Linear(d, dims.ff)
        self.ff2 = nn.Linear(dims.ff, d)

    def forward(self, x, memory, causal_mask, memory_mask):
        h = self.norm1(x)
        x = x + self.self_attn(h, h, causal_mask)
        h = self.norm2(x)
        x = x + self.cross_attn(h, memory, memory_mask)
        h = self.norm3(x)
        return x + self.ff2(torch.relu(self.ff1(h)))


class TransformerStack(nn.Module):
    def __init__(self, layers: list[nn.Module], d: int):
        super().__init__()
        self.layers = nn.ModuleList(layers)
        self.final_norm = nn.LayerNorm(d)


class ImageEncoderNet(nn.Module):
    """3x224x224 standardized image -> 512-d dense vector."""

    def __init__(self):
        super().__init__()
        self.body = nn.Sequential(
            OrderedDict(
                conv1=nn.Conv2d(3, 16, 5, 4, 2, bias=False),
                norm1=nn.BatchNorm2d(16),
                relu1=nn.ReLU(),
                pool=nn.MaxPool2d(3, 2, 1),
                conv2=nn.Conv2d(16, 32, 3, 2, 1, bias=False),
                norm2=nn.BatchNorm2d(32),
                relu2=nn.ReLU(),
                conv3=nn.Conv2d(32, 64, 3, 2, 1, bias=False),
                norm3=nn.BatchNorm2d(64),
                relu3=nn.ReLU(),
            )
        )
        self.fc = nn.Linear(64, IMAGE_EMBEDDING_DIM)

    def forward(self, x):
        h = self.body(x).mean(dim=(2, 3))
        return self.fc(h)


class GeneratorNet(nn.Module):
    """Torch module; parameter names mirror :func:`generator_graph`."""

    def __init__(self, vocab_size: int, dims: GeneratorDims = GeneratorDims()):
        super().__init__()
        self.dims = dims
        self.vocab_size = vocab_size
        self.image_encoder = ImageEncoderNet()
        self.project = nn.Linear(IMAGE_EMBEDDING_DIM, dims.d_model)
        self.token_embedding = nn.Embedding(vocab_size, dims.d_model)
        self.encoder = TransformerStack(
            [EncoderLayer(dims) for _ in range(dims.encoder_layers)], dims.d_model
        )
        self.decoder = TransformerStack(
            [DecoderLayer(dims) for _ in range(dims.decoder_layers)], dims.d_model
        )
        self.lm_head = nn.Linear(dims.d_model, vocab_size)

    def _pe(self, length: int, dtype) -> torch.Tensor:
        return positional_encoding(length, self.dims.d_model, dtype=dtype)

    def fuse_batch(
        self, prompt_ids: torch.Tensor, prompt_pad: torch.Tensor, images: torch.Tensor
    ) -> tuple[torch.Tensor, torch.Tensor]:
        """Fused, position-encoded encoder input and its attention mask.

        prompt_ids: (B, L) int64 with PAD; prompt_pad: (B, L) bool, True at
        real tokens; images: (B, 3, 224, 224) standardized.
        """
        image_vec = self.image_encoder(images)
        projected = self.project(image_vec)
        fused = self.token_embedding(prompt_ids) + projected.unsqueeze(1)
        fused = fused + self._pe(fused.shape[1], fused.dtype).unsqueeze(0)
        mask = prompt_pad[:, None, None, :]  # broadcast over heads and queries
        return fused, mask

    def encode(self, fused: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
        h = fused
        for layer in self.encoder.layers:
            h = layer(h, mask)
        return self.encoder.final_norm(h)

    def decode(
        self,
        token_ids: torch.Tensor,
        memory: torch.Tensor,
        memory_mask: torch.Tensor,
        token_pad: torch.Tensor | None = None,
    ) -> torch.Tensor:
        """Logits (B, T, vocab) for teacher-forced or autoregressive input."""
        b, t = token_ids.shape
        h = self.token_embedding(token_ids)
        h = h + self._pe(t, h.dtype).unsqueeze(0)
        causal = torch.tril(torch.ones(t, t, dtype=torch.bool))[None, None, :, :]
        if token_pad is not None:
            causal = causal & token_pad[:, None, None, :]
        for layer in self.decoder.layers:
            h = layer(h, memory, causal, memory_mask)
        return self.lm_head(self.decoder.final_norm(h))

    def forward(self, prompt_ids, prompt_pad, images, decoder_ids, decoder_pad=None):
        fused, mask = self.fuse_batch(prompt_ids, prompt_pad, images)
        memory = self.encode(fused, mask)
        return self.decode(decoder_ids, memory, mask, decoder_pad)


def generator_graph(vocab_size: int, dims: GeneratorDims = GeneratorDims()) -> LayerGraph:
    d = dims.d_model
    layers = [
        Conv2d("image_encoder.body.conv1", 3, 16, kernel=5, stride=4, padding=2),
        BatchNorm2d("image_encoder.body.norm1", 16, 16),
        Conv2d("image_encoder.body.conv2", 16, 32, stride=2),
        BatchNorm2d("image_encoder.body.norm2", 32, 32),
        Conv2d("image_encoder.body.conv3", 32, 64, stride=2),
        BatchNorm2d("image_encoder.body.norm3", 64, 64),
        Dense("image_encoder.fc", 64, IMAGE_EMBEDDING_DIM),
        Dense("project", IMAGE_EMBEDDING_DIM, d),
        Embedding("token_embedding", None, d, vocab_size=vocab_size),
    ]
    for i in range(dims.encoder_layers):
        prefix = f"encoder.layers.{i}"
        layers += [
            LayerNorm(f"{prefix}.norm1", d, d),
            MultiHeadAttention(f"{prefix}.attn", d, d, heads=dims.heads),
            LayerNorm(f"{prefix}.norm2", d, d),
            Dense(f"{prefix}.ff1", d, dims.ff),
            Dense(f"{prefix}.ff2", dims.ff, d),
        ]
    layers.append(LayerNorm("encoder.final_norm", d, d))
    for i in range(dims.decoder_layers):
        prefix = f"decoder.layers.{i}"
        layers += [
            LayerNorm(f"{prefix}.norm1", d, d),
            MultiHeadAttention(f"{prefix}.self_attn", d, d, heads=dims.heads),
            LayerNorm(f"{prefix}.norm2", d, d),
            MultiHeadAttention(f"{prefix}.cross_attn", d, d, heads=dims.heads),
            LayerNorm(f"{prefix}.norm3", d, d),
            Dense(f"{prefix}.ff1", d, dims.ff),
            Dense(f"{prefix}.ff2", dims.ff, d),
        ]
    layers.append(LayerNorm("decoder.final_norm", d, d))
    layers.append(Dense("lm_head", d, vocab_size))
    return LayerGraph(layers)


class SummaryGenerator:
    """A loaded generator: image encoding, prompting, decoding, save/restore."""

    def __init__(self, net: GeneratorNet, vocab: Vocabulary, seed: int = 0):
        self.net = net
        self.vocab = vocab
        self.seed = seed
        self.net.eval()

    @property
    def dims(self) -> GeneratorDims:
        return self.net.dims

    @classmethod
    def new(
        cls, vocab: Vocabulary, dims: GeneratorDims = GeneratorDims(), seed: int = 0
    ) -> "SummaryGenerator":
        net = GeneratorNet(len(vocab), dims)
        load_into_module(net, init_parameters(generator_graph(len(vocab), dims), seed))
        return cls(net, vocab, seed)

    @classmethod
    def load(cls, directory: str | Path) -> "SummaryGenerator":
        tensors, meta = ckpt.load_checkpoint(directory)
        if meta.get("kind") != "generator":
            raise CheckpointError(
                f"{directory} holds a {meta.get('kind')!r} checkpoint, not a generator"
            )
        vocab = Vocabulary(tokens=list(meta["vocabulary"]))
        dims = GeneratorDims(**meta["dims"])
        net = GeneratorNet(len(vocab), dims)
        result = net.load_state_dict(tensors, strict=False)
        allowed = {n for n, b in net.named_buffers() if b.dtype != torch.float32}
        stray = [n for n in result.missing_keys if n not in allowed]
        if stray or result.unexpected_keys:
            raise CheckpointError(
                f"checkpoint does not match the generator architecture: "
                f"missing={stray} unexpected={list(result.unexpected_keys)}"
            )
        return cls(net, vocab, seed=meta.get("seed", 0))

    def save(self, directory: str | Path) -> Path:
        dims = self.dims
        meta = {
            "kind": "generator",
            "architecture": generator_graph(len(self.vocab), dims).describe(),
            "vocabulary": self.vocab.tokens,
            "dims": {
                "d_model": dims.d_model,
                "heads": dims.heads,
                "encoder_layers": dims.encoder_layers,
                "decoder_layers": dims.decoder_layers,
            },
            "seed": self.seed,
        }
        return ckpt.save_checkpoint(directory, named_float_state(self.net), meta)

    def _check_image(self, image: ImageTensor) -> torch.Tensor:
        if image.mode != "generator":
            raise ShapeError(
                f"generator expects generator-mode tensors, got {image.mode!r}"
            )
        return torch.from_numpy(image.data).unsqueeze(0)

    @torch.no_grad()
    def encode_image_dense(self, image: ImageTensor) -> DenseImageEmbedding:
        """The 512-d dense vector for one preprocessed image."""
        self.net.eval()
        vec = self.net.image_encoder(self._check_image(image)).squeeze(0)
        return DenseImageEmbedding(vector=vec.numpy().astype(np.float64))

    def build_prompt(
        self, label: ClassLabel, template: str = DEFAULT_PROMPT_TEMPLATE
    ) -> PromptSequence:
        return build_prompt(label, self.vocab, self.net.token_embedding, template)

    @torch.no_grad()
    def encode_for_decoding(
        self, image: ImageTensor, label: ClassLabel, template: str = DEFAULT_PROMPT_TEMPLATE
    ) -> tuple[torch.Tensor, torch.Tensor]:
        """Encoder memory and mask for a single (image, label) pair."""
        self.net.eval()
        token_ids = self.build_prompt(label, template).token_ids
        prompt_ids = torch.tensor([token_ids], dtype=torch.int64)
        pad = torch.ones_like(prompt_ids, dtype=torch.bool)
        fused, mask = self.net.fuse_batch(prompt_ids, pad, self._check_image(image))
        return self.net.encode(fused, mask), mask
