"""Seeded parameter initialization.

Weights draw from uniform(-sqrt(1/fan_in), +sqrt(1/fan_in)), biases start
at zero, and norm gains at one.  A single torch generator seeded once
produces all draws in graph order, so a (graph, seed) pair maps to
bit-identical parameters.
"""

from __future__ import annotations

import math

import torch

from ..errors import ShapeError
from .graph import LayerGraph


def init_parameters(graph: LayerGraph, seed: int) -> dict[str, torch.Tensor]:
    """Create the float32 parameter set for a validated graph."""
    graph.validate()
    gen = torch.Generator().manual_seed(int(seed))
    params: dict[str, torch.Tensor] = {}
    for init in graph.param_inits():
        if init.kind == "weight":
            bound = math.sqrt(1.0 / init.fan_in)
            tensor = torch.empty(init.shape, dtype=torch.float32)
            tensor.uniform_(-bound, bound, generator=gen)
        elif init.kind == "bias":
            tensor = torch.zeros(init.shape, dtype=torch.float32)
        elif init.kind == "gain":
            tensor = torch.ones(init.shape, dtype=torch.float32)
        else:
            raise ShapeError(f"unknown init kind {init.kind!r} for {init.name!r}")
        params[init.name] = tensor
    return params


def load_into_module(module: torch.nn.Module, params: dict[str, torch.Tensor]) -> None:
    """Copy an initialized parameter set into a torch module.

    Every parameter of the module must be covered; buffers (norm running
    statistics) keep their torch defaults.  A name or shape mismatch means
    the module and its descriptor graph have drifted apart.
    """
    result = module.load_state_dict(params, strict=False)
    buffer_names = {name for name, _ in module.named_buffers()}
    stray = [name for name in result.missing_keys if name not in buffer_names]
    if stray or result.unexpected_keys:
        raise ShapeError(
            f"parameter set does not match module: missing={stray} "
            f"unexpected={list(result.unexpected_keys)}"
        )
