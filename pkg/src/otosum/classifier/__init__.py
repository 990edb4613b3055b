from .evaluate import (
    class_distance_means,
    encode_manifest,
    evaluate_classifier,
    predict_manifest,
)
from .knn import knn_baseline
from .losses import (
    DEFAULT_MARGIN,
    ClassProbabilities,
    ClassifierEmbedding,
    LossBreakdown,
    TripletDistances,
    combined_loss,
    cross_entropy_from_logits,
    cross_entropy_loss,
    squared_distances,
    triplet_distances,
    triplet_hinge,
    triplet_loss,
)
from .model import ClassifierNet, ImageClassifier, classifier_graph
from .train import EpochStats, TrainResult, train_classifier, write_history_csv

__all__ = [
    "DEFAULT_MARGIN",
    "ClassProbabilities",
    "ClassifierEmbedding",
    "ClassifierNet",
    "EpochStats",
    "ImageClassifier",
    "LossBreakdown",
    "TrainResult",
    "TripletDistances",
    "class_distance_means",
    "classifier_graph",
    "combined_loss",
    "cross_entropy_from_logits",
    "cross_entropy_loss",
    "encode_manifest",
    "evaluate_classifier",
    "knn_baseline",
    "predict_manifest",
    "squared_distances",
    "train_classifier",
    "triplet_distances",
    "triplet_hinge",
    "triplet_loss",
    "write_history_csv",
]
