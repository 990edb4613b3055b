"""Bias-corrected Adam over named parameter tensors.

Kept deliberately small and explicit: the update is the textbook

    m <- b1*m + (1-b1)*g         mhat = m / (1 - b1^t)
    v <- b2*v + (1-b2)*g^2       vhat = v / (1 - b2^t)
    theta <- theta - lr * mhat / (sqrt(vhat) + eps)

applied in place, with t incremented once per step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import torch


@dataclass
class AdamState:
    """Moment buffers and step counter for one parameter set."""

    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    t: int = 0
    m: dict[str, torch.Tensor] = field(default_factory=dict)
    v: dict[str, torch.Tensor] = field(default_factory=dict)


class Adam:
    def __init__(
        self,
        named_params: dict[str, torch.Tensor],
        lr: float = 1e-3,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.params = dict(named_params)
        self.state = AdamState(
            lr=lr,
            beta1=beta1,
            beta2=beta2,
            eps=eps,
            m={n: torch.zeros_like(p) for n, p in self.params.items()},
            v={n: torch.zeros_like(p) for n, p in self.params.items()},
        )

    def zero_grad(self) -> None:
        for p in self.params.values():
            if p.grad is not None:
                p.grad.zero_()

    @torch.no_grad()
    def step(self) -> None:
        s = self.state
        s.t += 1
        bc1 = 1.0 - s.beta1**s.t
        bc2 = 1.0 - s.beta2**s.t
        for name, p in self.params.items():
            g = p.grad
            if g is None:
                continue
            m = s.m[name]
            v = s.v[name]
            m.mul_(s.beta1).add_(g, alpha=1.0 - s.beta1)
            v.mul_(s.beta2).addcmul_(g, g, value=1.0 - s.beta2)
            update = (m / bc1) / ((v / bc2).sqrt() + s.eps)
            p.add_(update, alpha=-s.lr)


def adam_step(params: dict[str, torch.Tensor], state: AdamState) -> AdamState:
    """Functional entry point: one in-place update of params under state."""
    optimizer = Adam.__new__(Adam)
    optimizer.params = params
    optimizer.state = state
    optimizer.step()
    return state
