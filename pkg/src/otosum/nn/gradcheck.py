"""Finite-difference verification of analytic gradients.

The checker is intentionally independent of the backward pass it verifies:
it re-evaluates the loss at theta +/- eps per coordinate and compares the
central difference against the autograd gradient with a symmetric relative
error.  Run it on float64 parameters; float32 rounding would drown the
signal at useful eps values.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
import torch

from ..errors import NonFiniteLoss

LossFn = Callable[[dict[str, torch.Tensor]], torch.Tensor]

MIN_COORDS = 200


def grad_check(
    loss_fn: LossFn,
    params: dict[str, torch.Tensor],
    eps: float = 1e-4,
    max_coords: int = MIN_COORDS,
    seed: int = 0,
) -> float:
    """Return the max relative error between analytic and numeric gradients.

    Coordinates are subsampled (at least ``max_coords``, or all if fewer)
    with a seeded generator.  The error per coordinate is
    ``|analytic - numeric| / max(1e-8, |analytic| + |numeric|)``.
    """
    leaves = {
        name: p.detach().clone().requires_grad_(True) for name, p in params.items()
    }
    loss = loss_fn(leaves)
    if not torch.isfinite(loss):
        raise NonFiniteLoss(f"loss is {loss.item()} at the checked point")
    grads = torch.autograd.grad(loss, list(leaves.values()), allow_unused=True)
    analytic = {
        name: (g if g is not None else torch.zeros_like(p))
        for (name, p), g in zip(leaves.items(), grads)
    }

    sizes = [(name, p.numel()) for name, p in params.items()]
    total = sum(n for _, n in sizes)
    rng = np.random.Generator(np.random.PCG64(seed))
    count = min(total, max(max_coords, MIN_COORDS))
    chosen = rng.choice(total, size=count, replace=False)

    frozen = {name: p.detach().clone() for name, p in params.items()}
    worst = 0.0
    with torch.no_grad():
        for flat_index in sorted(int(i) for i in chosen):
            name, local = _locate(sizes, flat_index)
            base = frozen[name].reshape(-1)
            original = base[local].item()

            base[local] = original + eps
            loss_plus = loss_fn(frozen)
            base[local] = original - eps
            loss_minus = loss_fn(frozen)
            base[local] = original

            if not (torch.isfinite(loss_plus) and torch.isfinite(loss_minus)):
                raise NonFiniteLoss(f"loss not finite near coordinate {name}[{local}]")
            numeric = (loss_plus.item() - loss_minus.item()) / (2.0 * eps)
            exact = analytic[name].reshape(-1)[local].item()
            err = abs(exact - numeric) / max(1e-8, abs(exact) + abs(numeric))
            worst = max(worst, err)
    return worst


def _locate(sizes: list[tuple[str, int]], flat_index: int) -> tuple[str, int]:
    for name, n in sizes:
        if flat_index < n:
            return name, flat_index
        flat_index -= n
    raise IndexError(flat_index)
