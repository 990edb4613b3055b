"""Procedural five-class image set for desk-scale experiments.

Real otoscopic data cannot ship with the package, so training-level checks
run on a synthetic stand-in: each class gets a distinct color palette and
texture family (blobs, stripes, a dark disc, chalky patches, smooth
gradient), with per-image randomness so the classes are learnable but not
trivially constant.  Every image also carries a short patient-friendly
summary assembled from class-specific sentence pools.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from ..labels import ClassLabel
from .manifest import DatasetManifest, ImageRecord, save_manifest

DEFAULT_SIZE = 128


def _grid(size: int) -> tuple[np.ndarray, np.ndarray]:
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    return ys / size, xs / size


def _clip_to_image(channels: list[np.ndarray]) -> np.ndarray:
    rgb = np.stack(channels, axis=-1)
    return np.clip(rgb * 255.0, 0, 255).astype(np.uint8)


def _acute_otitis(rng: np.random.Generator, size: int) -> np.ndarray:
    ys, xs = _grid(size)
    base_r = 0.75 + 0.1 * rng.uniform(-1, 1) + 0.1 * ys
    base_g = 0.25 + 0.08 * rng.uniform(-1, 1)
    base_b = 0.22 + 0.05 * rng.uniform(-1, 1)
    r = np.full((size, size), 0.0) + base_r
    g = np.full((size, size), 0.0) + base_g
    b = np.full((size, size), 0.0) + base_b
    for _ in range(rng.integers(4, 9)):
        cy, cx = rng.uniform(0.1, 0.9, size=2)
        rad = rng.uniform(0.05, 0.16)
        blob = np.exp(-(((ys - cy) ** 2 + (xs - cx) ** 2) / (2 * rad**2)))
        r += 0.25 * blob
        g -= 0.10 * blob
    noise = rng.normal(0, 0.02, size=(size, size))
    return _clip_to_image([r + noise, g + noise, b + noise])


def _cerumen(rng: np.random.Generator, size: int) -> np.ndarray:
    ys, xs = _grid(size)
    freq = rng.uniform(6, 12)
    phase = rng.uniform(0, 2 * np.pi)
    wobble = 0.15 * np.sin(2 * np.pi * xs * rng.uniform(1, 3))
    stripes = 0.5 + 0.5 * np.sin(2 * np.pi * freq * (ys + wobble) + phase)
    r = 0.55 + 0.25 * stripes
    g = 0.38 + 0.22 * stripes
    b = 0.12 + 0.08 * stripes
    noise = rng.normal(0, 0.025, size=(size, size))
    return _clip_to_image([r + noise, g + noise, b + noise])


def _chronic_otitis(rng: np.random.Generator, size: int) -> np.ndarray:
    ys, xs = _grid(size)
    r = 0.80 + 0.05 * rng.uniform(-1, 1) - 0.15 * ys
    g = 0.62 + 0.05 * rng.uniform(-1, 1) - 0.10 * ys
    b = np.full((size, size), 0.58 + 0.05 * rng.uniform(-1, 1))
    cy, cx = rng.uniform(0.3, 0.7, size=2)
    ry, rx = rng.uniform(0.12, 0.22, size=2)
    hole = ((ys - cy) / ry) ** 2 + ((xs - cx) / rx) ** 2 < 1.0
    for ch, drop in ((r, 0.65), (g, 0.50), (b, 0.45)):
        ch[hole] -= drop
    noise = rng.normal(0, 0.02, size=(size, size))
    return _clip_to_image([r + noise, g + noise, b + noise])


def _myringosclerosis(rng: np.random.Generator, size: int) -> np.ndarray:
    ys, xs = _grid(size)
    r = np.full((size, size), 0.72 + 0.04 * rng.uniform(-1, 1))
    g = np.full((size, size), 0.70 + 0.04 * rng.uniform(-1, 1))
    b = np.full((size, size), 0.68 + 0.04 * rng.uniform(-1, 1))
    for _ in range(rng.integers(3, 7)):
        cy, cx = rng.uniform(0.1, 0.9, size=2)
        ry, rx = rng.uniform(0.08, 0.20, size=2)
        angle = rng.uniform(0, np.pi)
        dy, dx = ys - cy, xs - cx
        u = dy * np.cos(angle) + dx * np.sin(angle)
        v = -dy * np.sin(angle) + dx * np.cos(angle)
        patch = (u / ry) ** 2 + (v / rx) ** 2 < 1.0
        for ch in (r, g, b):
            ch[patch] = 0.95
    noise = rng.normal(0, 0.02, size=(size, size))
    return _clip_to_image([r + noise, g + noise, b + noise])


def _normal(rng: np.random.Generator, size: int) -> np.ndarray:
    ys, xs = _grid(size)
    cy, cx = rng.uniform(0.4, 0.6, size=2)
    dist = np.sqrt((ys - cy) ** 2 + (xs - cx) ** 2)
    glow = np.clip(1.0 - dist * rng.uniform(0.9, 1.3), 0, 1)
    r = 0.55 + 0.25 * glow
    g = 0.48 + 0.20 * glow
    b = 0.45 + 0.18 * glow
    noise = rng.normal(0, 0.015, size=(size, size))
    return _clip_to_image([r + noise, g + noise, b + noise])


_PAINTERS = {
    ClassLabel.AcuteOtitisMedia: _acute_otitis,
    ClassLabel.CerumenImpaction: _cerumen,
    ClassLabel.ChronicOtitisMedia: _chronic_otitis,
    ClassLabel.Myringosclerosis: _myringosclerosis,
    ClassLabel.Normal: _normal,
}

_OPENER = {
    ClassLabel.AcuteOtitisMedia: (
        "this otoscopic image shows signs of acute otitis media , "
        "an infection of the middle ear ."
    ),
    ClassLabel.CerumenImpaction: (
        "this otoscopic image shows cerumen impaction , which means "
        "a buildup of ear wax is blocking the canal ."
    ),
    ClassLabel.ChronicOtitisMedia: (
        "this otoscopic image shows signs of chronic otitis media , "
        "a long lasting infection of the middle ear ."
    ),
    ClassLabel.Myringosclerosis: (
        "this otoscopic image shows myringosclerosis , which means "
        "chalky white patches have formed on the eardrum ."
    ),
    ClassLabel.Normal: (
        "this otoscopic image shows a healthy ear with no signs of disease ."
    ),
}

_DETAIL = {
    ClassLabel.AcuteOtitisMedia: [
        "the eardrum looks red and swollen with inflamed spots .",
        "bright red areas suggest an active infection behind the eardrum .",
        "redness and bulging of the eardrum are visible .",
    ],
    ClassLabel.CerumenImpaction: [
        "layers of yellow brown wax cover most of the view .",
        "the wax buildup hides the eardrum from view .",
        "thick bands of wax line the ear canal .",
    ],
    ClassLabel.ChronicOtitisMedia: [
        "a dark opening in the eardrum points to a perforation .",
        "the hole in the eardrum suggests a long standing problem .",
        "a perforation is visible near the center of the eardrum .",
    ],
    ClassLabel.Myringosclerosis: [
        "white chalky plaques are spread across the eardrum .",
        "pale scar like patches cover parts of the eardrum .",
        "the white patches are scar tissue on the eardrum .",
    ],
    ClassLabel.Normal: [
        "the eardrum is intact with a soft pearly glow .",
        "the canal is clear and the eardrum looks healthy .",
        "no redness , wax buildup , or perforation is present .",
    ],
}

_ADVICE = {
    ClassLabel.AcuteOtitisMedia: (
        "you may feel ear pain or fever , so please see a doctor soon ."
    ),
    ClassLabel.CerumenImpaction: (
        "you may notice muffled hearing , and a doctor can remove the wax safely ."
    ),
    ClassLabel.ChronicOtitisMedia: (
        "you may notice discharge or hearing loss , so a specialist visit is advised ."
    ),
    ClassLabel.Myringosclerosis: (
        "this usually causes little or no hearing change , but a checkup is sensible ."
    ),
    ClassLabel.Normal: "no treatment is needed , keep up your usual ear care .",
}


def _summary(label: ClassLabel, rng: np.random.Generator) -> str:
    detail = _DETAIL[label][rng.integers(len(_DETAIL[label]))]
    return f"{_OPENER[label]} {detail} {_ADVICE[label]}"


def generate_synthetic_dataset(
    out_dir: str | Path,
    images_per_class: int = 100,
    seed: int = 0,
    size: int = DEFAULT_SIZE,
) -> Path:
    """Write a synthetic five-class image set plus its manifest.

    Returns the manifest path.  Deterministic for a given seed.
    """
    out_dir = Path(out_dir)
    image_dir = out_dir / "images"
    image_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.Generator(np.random.PCG64(seed))
    records = []
    for label in ClassLabel:
        painter = _PAINTERS[label]
        for i in range(images_per_class):
            rgb = painter(rng, size)
            name = f"{label.name.lower()}_{i:03d}.png"
            Image.fromarray(rgb).save(image_dir / name)
            records.append(
                ImageRecord(
                    id=f"{label.name}-{i:03d}",
                    image_path=f"images/{name}",
                    label=label,
                    summary=_summary(label, rng),
                    source="synthetic",
                )
            )
    manifest = DatasetManifest(records=records, root=out_dir)
    return save_manifest(manifest, out_dir / "manifest.json")
