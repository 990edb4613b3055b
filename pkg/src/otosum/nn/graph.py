"""Declarative layer descriptors for the architectures in this package.

A :class:`LayerGraph` is an ordered list of descriptors with declared
feature widths.  It drives three things: shape-composition validation,
deterministic parameter initialization (each descriptor enumerates its
parameter tensors with their fan-in), and the human-readable architecture
block stored in checkpoint metadata.  The actual forward/backward runs on
torch modules whose parameter names match the descriptors one-to-one.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterator

from ..errors import ShapeError


@dataclass(frozen=True)
class ParamInit:
    """How one parameter tensor is created: full name, shape, init rule."""

    name: str
    shape: tuple[int, ...]
    kind: str  # "weight" (uniform fan-in), "bias" (zeros), "gain" (ones)
    fan_in: int = 1


@dataclass(frozen=True)
class LayerSpec:
    """Base descriptor: a named layer with declared in/out feature widths.

    ``in_features`` may be None for layers consuming non-feature input
    (token ids, pooled maps), which composes with anything.
    """

    name: str
    in_features: int | None
    out_features: int

    def param_inits(self) -> list[ParamInit]:
        return []

    def describe(self) -> dict:
        d = asdict(self)
        d["kind"] = type(self).__name__
        return d


@dataclass(frozen=True)
class Conv2d(LayerSpec):
    kernel: int = 3
    stride: int = 1
    padding: int = 1

    def param_inits(self) -> list[ParamInit]:
        fan_in = (self.in_features or 1) * self.kernel * self.kernel
        shape = (self.out_features, self.in_features or 1, self.kernel, self.kernel)
        return [ParamInit(f"{self.name}.weight", shape, "weight", fan_in)]


@dataclass(frozen=True)
class BatchNorm2d(LayerSpec):
    def param_inits(self) -> list[ParamInit]:
        c = self.out_features
        return [
            ParamInit(f"{self.name}.weight", (c,), "gain"),
            ParamInit(f"{self.name}.bias", (c,), "bias"),
        ]


@dataclass(frozen=True)
class ResidualBlock(LayerSpec):
    """Two 3x3 conv+norm pairs with a skip path; downsampling via stride."""

    stride: int = 1

    def _subspecs(self) -> list[LayerSpec]:
        cin, cout = self.in_features or 1, self.out_features
        specs: list[LayerSpec] = [
            Conv2d(f"{self.name}.conv1", cin, cout, stride=self.stride),
            BatchNorm2d(f"{self.name}.norm1", cout, cout),
            Conv2d(f"{self.name}.conv2", cout, cout),
            BatchNorm2d(f"{self.name}.norm2", cout, cout),
        ]
        if self.stride != 1 or cin != cout:
            specs.append(
                Conv2d(f"{self.name}.shortcut.0", cin, cout, kernel=1, stride=self.stride, padding=0)
            )
            specs.append(BatchNorm2d(f"{self.name}.shortcut.1", cout, cout))
        return specs

    def param_inits(self) -> list[ParamInit]:
        return [p for spec in self._subspecs() for p in spec.param_inits()]


@dataclass(frozen=True)
class Dense(LayerSpec):
    with_bias: bool = True

    def param_inits(self) -> list[ParamInit]:
        fan_in = self.in_features or 1
        inits = [
            ParamInit(f"{self.name}.weight", (self.out_features, fan_in), "weight", fan_in)
        ]
        if self.with_bias:
            inits.append(ParamInit(f"{self.name}.bias", (self.out_features,), "bias"))
        return inits


@dataclass(frozen=True)
class LayerNorm(LayerSpec):
    def param_inits(self) -> list[ParamInit]:
        return [
            ParamInit(f"{self.name}.weight", (self.out_features,), "gain"),
            ParamInit(f"{self.name}.bias", (self.out_features,), "bias"),
        ]


@dataclass(frozen=True)
class MultiHeadAttention(LayerSpec):
    """Four d->d projections (query, key, value, output)."""

    heads: int = 8

    def __post_init__(self) -> None:
        if self.out_features % self.heads != 0:
            raise ShapeError(
                f"{self.name}: dim {self.out_features} not divisible by {self.heads} heads"
            )

    def param_inits(self) -> list[ParamInit]:
        d = self.out_features
        inits = []
        for proj in ("query", "key", "value", "output"):
            inits.append(ParamInit(f"{self.name}.{proj}.weight", (d, d), "weight", d))
            inits.append(ParamInit(f"{self.name}.{proj}.bias", (d,), "bias"))
        return inits


@dataclass(frozen=True)
class Embedding(LayerSpec):
    """Token-id lookup table; rows scaled like a dense layer of width d."""

    vocab_size: int = 0

    def param_inits(self) -> list[ParamInit]:
        d = self.out_features
        return [
            ParamInit(f"{self.name}.weight", (self.vocab_size, d), "weight", d)
        ]


@dataclass
class LayerGraph:
    """Ordered layer descriptors with adjacent-width validation."""

    layers: list[LayerSpec] = field(default_factory=list)

    def validate(self) -> None:
        names = [p.name for p in self.param_inits()]
        if len(names) != len(set(names)):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ShapeError(f"duplicate parameter names in graph: {dupes}")
        for prev, cur in zip(self.layers, self.layers[1:]):
            if cur.in_features is None:
                continue
            if prev.out_features != cur.in_features:
                raise ShapeError(
                    f"layer {cur.name!r} expects {cur.in_features} input features "
                    f"but {prev.name!r} produces {prev.out_features}"
                )

    def param_inits(self) -> list[ParamInit]:
        return [p for layer in self.layers for p in layer.param_inits()]

    def describe(self) -> list[dict]:
        return [layer.describe() for layer in self.layers]

    def __iter__(self) -> Iterator[LayerSpec]:
        return iter(self.layers)
