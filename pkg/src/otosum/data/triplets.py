"""Anchor/positive/negative sampling for metric learning.

The positive is drawn uniformly from the anchor's class (excluding the
anchor itself), the negative uniformly from all other classes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NoNegativeAvailable, NoPositiveAvailable
from .manifest import DatasetManifest, ImageRecord


@dataclass(frozen=True)
class Triplet:
    anchor: ImageRecord
    positive: ImageRecord
    negative: ImageRecord

    def __post_init__(self) -> None:
        assert self.positive.label == self.anchor.label
        assert self.positive.id != self.anchor.id
        assert self.negative.label != self.anchor.label


def sample_triplet(
    manifest: DatasetManifest, anchor_id: str, rng: np.random.Generator
) -> Triplet:
    """Draw a uniform triplet for the given anchor.

    Deterministic for a given generator state.  Raises
    NoPositiveAvailable / NoNegativeAvailable when the manifest cannot
    supply the same-class or different-class record.
    """
    anchor = manifest.record(anchor_id)
    positives = [
        r for r in manifest.records if r.label == anchor.label and r.id != anchor.id
    ]
    negatives = [r for r in manifest.records if r.label != anchor.label]
    if not positives:
        raise NoPositiveAvailable(
            f"anchor {anchor_id!r} is the only record of class {anchor.label.name}"
        )
    if not negatives:
        raise NoNegativeAvailable(
            f"no record outside class {anchor.label.name} for anchor {anchor_id!r}"
        )
    positive = positives[rng.integers(len(positives))]
    negative = negatives[rng.integers(len(negatives))]
    return Triplet(anchor=anchor, positive=positive, negative=negative)
