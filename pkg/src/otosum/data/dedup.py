"""Near-duplicate detection with a 64-bit difference hash.

The curation stand-in for manual redundancy filtering: each image is
downscaled to a 9x8 grayscale patch and hashed by comparing horizontally
adjacent pixels; pairs within a Hamming-distance threshold are reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import DecodeError

HASH_BITS = 64
DEFAULT_THRESHOLD = 8

_SUFFIXES = {".png", ".jpg", ".jpeg"}


def dhash(img: Image.Image) -> int:
    """64-bit difference hash: horizontal gradient signs of a 9x8 thumbnail."""
    gray = img.convert("L").resize((9, 8), Image.BILINEAR)
    px = np.asarray(gray, dtype=np.int16)
    bits = (px[:, 1:] > px[:, :-1]).flatten()
    value = 0
    for bit in bits:
        value = (value << 1) | int(bit)
    return value


def dhash_file(path: str | Path) -> int:
    try:
        with Image.open(path) as img:
            img.load()
            return dhash(img)
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"{path}: {exc}") from None


def hamming(a: int, b: int) -> int:
    return (a ^ b).bit_count()


@dataclass(frozen=True)
class DuplicatePair:
    path_a: str
    path_b: str
    distance: int


@dataclass
class DedupReport:
    pairs: list[DuplicatePair]
    skipped: list[str] = field(default_factory=list)


def dedup_scan(
    image_dir: str | Path, hamming_threshold: int = DEFAULT_THRESHOLD
) -> DedupReport:
    """Hash every image under ``image_dir`` and report near-duplicate pairs.

    Pairs are sorted ascending by distance, then lexicographically by path,
    so output order is deterministic.  Undecodable files are skipped and
    listed in the report.
    """
    root = Path(image_dir)
    paths = sorted(
        p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in _SUFFIXES
    )
    hashes: list[tuple[str, int]] = []
    skipped: list[str] = []
    for path in paths:
        try:
            hashes.append((str(path), dhash_file(path)))
        except DecodeError as exc:
            skipped.append(str(exc))
    pairs = []
    for i in range(len(hashes)):
        for j in range(i + 1, len(hashes)):
            d = hamming(hashes[i][1], hashes[j][1])
            if d <= hamming_threshold:
                pairs.append(DuplicatePair(hashes[i][0], hashes[j][0], d))
    pairs.sort(key=lambda p: (p.distance, p.path_a, p.path_b))
    return DedupReport(pairs=pairs, skipped=skipped)
