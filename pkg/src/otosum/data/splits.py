"""Deterministic stratified splitting and k-fold construction.

All randomness comes from numpy's PCG64 generator seeded with the caller's
64-bit seed, so splits are reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import TooFewRecords, ValidationError
from ..labels import ClassLabel
from .manifest import DatasetManifest, ImageRecord

RATIO_SUM_TOL = 1e-9


@dataclass(frozen=True)
class SplitSpec:
    """Three-way split request: (train, val, test) fractions plus a seed."""

    ratios: tuple[float, float, float] = (0.70, 0.15, 0.15)
    seed: int = 0
    stratified: bool = True

    def __post_init__(self) -> None:
        if len(self.ratios) != 3:
            raise ValidationError("ratios must have exactly three entries")
        for r in self.ratios:
            if not 0.0 < r < 1.0:
                raise ValidationError(f"each ratio must lie in (0, 1); got {r}")
        if abs(sum(self.ratios) - 1.0) > RATIO_SUM_TOL:
            raise ValidationError(f"ratios must sum to 1; got {sum(self.ratios)}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be an unsigned 64-bit integer")


def _apportion(n: int, ratios: tuple[float, float, float]) -> list[int]:
    """Largest-remainder apportionment of ``n`` items over three parts.

    Each part receives floor(ratio * n); leftover units go to the parts
    with the largest fractional remainders, ties favouring train, then
    val, then test.  Guarantees |allocated - ratio * n| < 1 per part.
    """
    exact = [r * n for r in ratios]
    counts = [int(np.floor(e)) for e in exact]
    leftovers = n - sum(counts)
    # Sort part indices by descending fractional remainder; index order
    # (train < val < test) breaks ties.
    order = sorted(range(3), key=lambda i: (-(exact[i] - counts[i]), i))
    for i in range(leftovers):
        counts[order[i]] += 1
    return counts


def _shuffled(records: list[ImageRecord], rng: np.random.Generator) -> list[ImageRecord]:
    perm = rng.permutation(len(records))
    return [records[i] for i in perm]


def stratified_split(
    manifest: DatasetManifest, spec: SplitSpec
) -> tuple[DatasetManifest, DatasetManifest, DatasetManifest]:
    """Split a manifest into (train, val, test) manifests.

    Stratified mode allocates per class; each class must have at least 3
    records.  Unstratified mode allocates over the whole record list.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    parts: tuple[list[ImageRecord], ...] = ([], [], [])

    if spec.stratified:
        groups = manifest.by_label()
        for label in ClassLabel:
            members = groups[label]
            if not members:
                continue
            if len(members) < 3:
                raise TooFewRecords(
                    f"class {label.name} has {len(members)} records; "
                    "need at least 3 to populate train/val/test"
                )
            shuffled = _shuffled(members, rng)
            counts = _apportion(len(members), spec.ratios)
            offset = 0
            for part, count in zip(parts, counts):
                part.extend(shuffled[offset : offset + count])
                offset += count
    else:
        shuffled = _shuffled(manifest.records, rng)
        counts = _apportion(len(shuffled), spec.ratios)
        offset = 0
        for part, count in zip(parts, counts):
            part.extend(shuffled[offset : offset + count])
            offset += count

    return tuple(manifest.subset(part) for part in parts)  # type: ignore[return-value]


def make_folds(
    manifest: DatasetManifest, k: int, seed: int = 0
) -> list[tuple[DatasetManifest, DatasetManifest]]:
    """Build k stratified (train, test) folds covering the dataset once.

    Records of each class are shuffled with the seeded generator and dealt
    round-robin into k test buckets, so per-class test counts differ by at
    most one across folds.
    """
    if k < 2:
        raise ValidationError(f"k must be at least 2; got {k}")
    buckets: list[list[ImageRecord]] = [[] for _ in range(k)]
    rng = np.random.Generator(np.random.PCG64(seed))
    groups = manifest.by_label()
    for label in ClassLabel:
        members = groups[label]
        if not members:
            continue
        if len(members) < k:
            raise TooFewRecords(
                f"class {label.name} has {len(members)} records; cannot fill {k} folds"
            )
        shuffled = _shuffled(members, rng)
        for i, record in enumerate(shuffled):
            buckets[i % k].append(record)

    folds = []
    for i in range(k):
        test_ids = {r.id for r in buckets[i]}
        train = [r for r in manifest.records if r.id not in test_ids]
        folds.append((manifest.subset(train), manifest.subset(buckets[i])))
    return folds
