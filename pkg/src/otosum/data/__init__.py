from .dedup import DedupReport, DuplicatePair, dedup_scan, dhash, dhash_file, hamming
from .manifest import (
    DatasetManifest,
    ImageRecord,
    load_manifest,
    save_manifest,
    validate_manifest,
)
from .preprocess import (
    CHANNEL_MEAN,
    CHANNEL_STD,
    ImageTensor,
    load_image_tensor,
    preprocess_image,
    standardize,
)
from .splits import SplitSpec, make_folds, stratified_split
from .synthetic import generate_synthetic_dataset
from .triplets import Triplet, sample_triplet

__all__ = [
    "CHANNEL_MEAN",
    "CHANNEL_STD",
    "DatasetManifest",
    "DedupReport",
    "DuplicatePair",
    "ImageRecord",
    "ImageTensor",
    "SplitSpec",
    "Triplet",
    "dedup_scan",
    "dhash",
    "dhash_file",
    "generate_synthetic_dataset",
    "hamming",
    "load_image_tensor",
    "load_manifest",
    "make_folds",
    "preprocess_image",
    "sample_triplet",
    "save_manifest",
    "standardize",
    "stratified_split",
    "validate_manifest",
]
