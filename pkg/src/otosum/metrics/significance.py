"""Pooled two-proportion z-test with an erfc-based two-tailed p-value.

p = erfc(|z| / sqrt(2)) is the exact two-tailed normal tail mass; libm's
erfc keeps it accurate to well below 1e-12 relative error for |z| <= 10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DegenerateProportion, ValidationError


@dataclass(frozen=True)
class SignificanceResult:
    z: float
    p_two_tailed: float
    p1: float
    p2: float
    n1: int
    n2: int


def normal_two_tailed_p(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


def two_proportion_z(p1: float, p2: float, n1: int, n2: int) -> SignificanceResult:
    """Compare two proportions with the pooled standard error."""
    for name, p in (("p1", p1), ("p2", p2)):
        if not 0.0 <= p <= 1.0:
            raise ValidationError(f"{name} must lie in [0, 1]; got {p}")
    for name, n in (("n1", n1), ("n2", n2)):
        if n < 1:
            raise ValidationError(f"{name} must be at least 1; got {n}")
    pooled = (p1 * n1 + p2 * n2) / (n1 + n2)
    if pooled <= 0.0 or pooled >= 1.0:
        raise DegenerateProportion(
            f"pooled proportion {pooled} admits no variance; z is undefined"
        )
    se = math.sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2))
    z = (p1 - p2) / se
    return SignificanceResult(
        z=z, p_two_tailed=normal_two_tailed_p(z), p1=p1, p2=p2, n1=n1, n2=n2
    )
