"""Views over a torch module's named tensors.

``ParameterTensor`` is the package's inspection/serialization unit: a
dotted name, its shape, the value array, and (when populated) the
gradient of the same shape.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch

from ..errors import ShapeError


@dataclass
class ParameterTensor:
    name: str
    shape: tuple[int, ...]
    values: torch.Tensor
    gradient: torch.Tensor | None = None

    def __post_init__(self) -> None:
        if tuple(self.values.shape) != self.shape:
            raise ShapeError(
                f"{self.name}: values shape {tuple(self.values.shape)} != declared {self.shape}"
            )
        if self.gradient is not None and self.gradient.shape != self.values.shape:
            raise ShapeError(
                f"{self.name}: gradient shape {tuple(self.gradient.shape)} "
                f"!= values shape {tuple(self.values.shape)}"
            )


def parameter_store(module: torch.nn.Module) -> list[ParameterTensor]:
    """Snapshot a module's trainable parameters (names are unique by construction)."""
    return [
        ParameterTensor(name, tuple(p.shape), p.data, p.grad)
        for name, p in module.named_parameters()
    ]


def named_float_state(module: torch.nn.Module) -> dict[str, torch.Tensor]:
    """All float32 parameters and buffers, in state-dict order.

    This is the tensor set a checkpoint stores; integer buffers such as
    batch-norm step counters are derivable and excluded.
    """
    return {
        name: tensor
        for name, tensor in module.state_dict().items()
        if tensor.dtype == torch.float32
    }
