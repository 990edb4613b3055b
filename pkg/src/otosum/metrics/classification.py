"""Precision / recall / F1 from one-vs-rest confusion counts."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import LengthMismatch
from ..labels import ClassLabel


@dataclass
class ConfusionCounts:
    """Per-class TP/FP/FN plus the total number of instances."""

    tp: dict[ClassLabel, int] = field(default_factory=dict)
    fp: dict[ClassLabel, int] = field(default_factory=dict)
    fn: dict[ClassLabel, int] = field(default_factory=dict)
    total: int = 0


@dataclass(frozen=True)
class ClassPRF:
    precision: float
    recall: float
    f1: float


@dataclass
class PRF:
    """Per-class scores plus their unweighted (macro) averages."""

    per_class: dict[ClassLabel, ClassPRF]
    macro: ClassPRF


def confusion(preds: list[ClassLabel], labels: list[ClassLabel]) -> ConfusionCounts:
    if len(preds) != len(labels):
        raise LengthMismatch(f"{len(preds)} predictions vs {len(labels)} labels")
    counts = ConfusionCounts(
        tp={c: 0 for c in ClassLabel},
        fp={c: 0 for c in ClassLabel},
        fn={c: 0 for c in ClassLabel},
        total=len(labels),
    )
    for pred, truth in zip(preds, labels):
        if pred == truth:
            counts.tp[truth] += 1
        else:
            counts.fp[pred] += 1
            counts.fn[truth] += 1
    return counts


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean, 0 when both parts are 0."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def precision_recall_f1(counts: ConfusionCounts) -> PRF:
    """Per-class scores with 0 for empty denominators, macro-averaged."""
    per_class = {}
    for c in ClassLabel:
        tp, fp, fn = counts.tp[c], counts.fp[c], counts.fn[c]
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        per_class[c] = ClassPRF(precision, recall, f1_score(precision, recall))
    k = len(per_class)
    macro = ClassPRF(
        precision=sum(s.precision for s in per_class.values()) / k,
        recall=sum(s.recall for s in per_class.values()) / k,
        f1=sum(s.f1 for s in per_class.values()) / k,
    )
    return PRF(per_class=per_class, macro=macro)


def macro_f1(preds: list[ClassLabel], labels: list[ClassLabel]) -> float:
    return precision_recall_f1(confusion(preds, labels)).macro.f1
