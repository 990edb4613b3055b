from .classification import (
    ClassPRF,
    ConfusionCounts,
    PRF,
    confusion,
    f1_score,
    macro_f1,
    precision_recall_f1,
)
from .human import (
    HumanAggregate,
    HumanRatings,
    aggregate_human_ratings,
    merge_ratings,
    read_ratings_csv,
)
from .report import MetricsReport
from .significance import SignificanceResult, normal_two_tailed_p, two_proportion_z
from .textgen import (
    PRFScore,
    SummaryPair,
    bleu,
    embed_f1,
    embed_f1_corpus,
    lcs_length,
    one_hot_embedder,
    rouge_l,
    rouge_l_corpus,
)

__all__ = [
    "ClassPRF",
    "ConfusionCounts",
    "HumanAggregate",
    "HumanRatings",
    "MetricsReport",
    "PRF",
    "PRFScore",
    "SignificanceResult",
    "SummaryPair",
    "aggregate_human_ratings",
    "bleu",
    "confusion",
    "embed_f1",
    "embed_f1_corpus",
    "f1_score",
    "lcs_length",
    "macro_f1",
    "merge_ratings",
    "normal_two_tailed_p",
    "one_hot_embedder",
    "precision_recall_f1",
    "read_ratings_csv",
    "rouge_l",
    "rouge_l_corpus",
    "two_proportion_z",
]
