"""Otoscopic image understanding at desk scale.

Two stages: a residual-CNN classifier trained with a combined triplet +
cross-entropy objective, and a transformer summary generator fed fused
image/prompt embeddings.  Plus the evaluation suite (classification PRF,
BLEU, ROUGE-L, embedding F1, significance tests, human-rating
aggregation), dataset tooling, a CLI, and a small inference service.
"""

from . import classifier, data, generator, metrics, nn
from .errors import OtosumError
from .labels import CLASS_NAMES, NUM_CLASSES, ClassLabel
from .text import detokenize, tokenize

__version__ = "0.1.0"

__all__ = [
    "CLASS_NAMES",
    "ClassLabel",
    "NUM_CLASSES",
    "OtosumError",
    "classifier",
    "data",
    "detokenize",
    "generator",
    "metrics",
    "nn",
    "tokenize",
]
