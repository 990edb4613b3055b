"""Image decoding and the two preprocessing pipelines.

Classifier mode: bilinear resize to 226x226, values scaled to [0, 1].
Generator mode: resize short side to 232, center crop 224x224, then
per-channel standardization with the fixed statistics below.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Literal

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import DecodeError, ShapeError

Mode = Literal["classifier", "generator"]

CLASSIFIER_SIZE = 226
GENERATOR_RESIZE = 232
GENERATOR_CROP = 224

# Per-channel statistics used for generator-mode standardization.
CHANNEL_MEAN = np.array([0.481, 0.458, 0.408], dtype=np.float64)
CHANNEL_STD = np.array([0.269, 0.261, 0.276], dtype=np.float64)

_EXPECTED = {"classifier": CLASSIFIER_SIZE, "generator": GENERATOR_CROP}


@dataclass
class ImageTensor:
    """Channel-major float32 image array plus the mode that produced it."""

    data: np.ndarray
    mode: Mode

    def __post_init__(self) -> None:
        side = _EXPECTED[self.mode]
        if self.data.shape != (3, side, side):
            raise ShapeError(
                f"{self.mode} tensors must be 3x{side}x{side}; got {self.data.shape}"
            )


def decode_image(data: bytes) -> Image.Image:
    """Decode PNG/JPEG bytes to an RGB PIL image."""
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"bytes do not decode as a raster image: {exc}") from None
    return img.convert("RGB")


def standardize(scaled: np.ndarray) -> np.ndarray:
    """Subtract the per-channel mean and divide by the per-channel std.

    ``scaled`` is channel-major with values already in [0, 1].
    """
    mean = CHANNEL_MEAN.reshape(3, 1, 1)
    std = CHANNEL_STD.reshape(3, 1, 1)
    return ((scaled - mean) / std).astype(np.float32)


def _to_chw(img: Image.Image) -> np.ndarray:
    arr = np.asarray(img, dtype=np.float64) / 255.0
    return np.transpose(arr, (2, 0, 1))


def preprocess_image(data: bytes, mode: Mode) -> ImageTensor:
    """Decode and preprocess image bytes for one of the two pipelines."""
    img = decode_image(data)
    if mode == "classifier":
        resized = img.resize((CLASSIFIER_SIZE, CLASSIFIER_SIZE), Image.BILINEAR)
        tensor = _to_chw(resized).astype(np.float32)
        return ImageTensor(data=tensor, mode="classifier")
    if mode == "generator":
        w, h = img.size
        scale = GENERATOR_RESIZE / min(w, h)
        resized = img.resize(
            (max(1, round(w * scale)), max(1, round(h * scale))), Image.BILINEAR
        )
        w, h = resized.size
        left = (w - GENERATOR_CROP) // 2
        top = (h - GENERATOR_CROP) // 2
        cropped = resized.crop((left, top, left + GENERATOR_CROP, top + GENERATOR_CROP))
        tensor = standardize(_to_chw(cropped))
        return ImageTensor(data=tensor, mode="generator")
    raise ValueError(f"unknown preprocessing mode {mode!r}")


def load_image_tensor(path, mode: Mode) -> ImageTensor:
    """Read a file and preprocess it."""
    with open(path, "rb") as fh:
        return preprocess_image(fh.read(), mode)
