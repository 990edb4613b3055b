"""Aggregation of human-evaluation files.

Usefulness is rated per (sample, annotator) on a 1..3 scale; faithfulness
is a per-sample error-free flag judged by the expert annotator.  Files are
CSV: ``sample_id,annotator_id,rating`` and ``sample_id,error_free``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import EmptyRatings, ParseError, ValidationError

VALID_RATINGS = (1, 2, 3)


@dataclass
class HumanRatings:
    """Ratings keyed by (sample, annotator) plus per-sample error flags."""

    ratings: dict[tuple[str, str], int] = field(default_factory=dict)
    error_free: dict[str, bool] = field(default_factory=dict)

    def add_rating(self, sample_id: str, annotator_id: str, rating: int) -> None:
        if rating not in VALID_RATINGS:
            raise ValidationError(
                f"rating for sample {sample_id!r} must be 1, 2, or 3; got {rating}"
            )
        self.ratings[(sample_id, annotator_id)] = rating

    def set_error_free(self, sample_id: str, error_free: bool) -> None:
        self.error_free[sample_id] = error_free


@dataclass(frozen=True)
class HumanAggregate:
    mean_rating: float
    faithfulness_pct: float
    n_ratings: int
    n_samples: int


def aggregate_human_ratings(ratings: HumanRatings) -> HumanAggregate:
    """Mean usefulness over all ratings; percent of error-free samples."""
    if not ratings.ratings and not ratings.error_free:
        raise EmptyRatings("no ratings to aggregate")
    values = list(ratings.ratings.values())
    mean_rating = sum(values) / len(values) if values else 0.0
    if ratings.error_free:
        good = sum(1 for flag in ratings.error_free.values() if flag)
        faithfulness = 100.0 * good / len(ratings.error_free)
    else:
        faithfulness = 0.0
    return HumanAggregate(
        mean_rating=mean_rating,
        faithfulness_pct=faithfulness,
        n_ratings=len(values),
        n_samples=len(ratings.error_free),
    )


def read_ratings_csv(path: str | Path) -> HumanRatings:
    """Load rating and/or faithfulness CSVs into one container."""
    ratings = HumanRatings()
    _merge_ratings_csv(ratings, path)
    return ratings


def _merge_ratings_csv(ratings: HumanRatings, path: str | Path) -> None:
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError(f"{path} is empty")
        header = [h.strip().lower() for h in header]
        if header == ["sample_id", "annotator_id", "rating"]:
            for row in reader:
                if len(row) != 3:
                    raise ParseError(f"{path}: bad row {row!r}")
                ratings.add_rating(row[0], row[1], _int_field(path, row[2]))
        elif header == ["sample_id", "error_free"]:
            for row in reader:
                if len(row) != 2:
                    raise ParseError(f"{path}: bad row {row!r}")
                flag = _int_field(path, row[1])
                if flag not in (0, 1):
                    raise ValidationError(f"{path}: error_free must be 0 or 1; got {flag}")
                ratings.set_error_free(row[0], bool(flag))
        else:
            raise ParseError(
                f"{path}: expected header sample_id,annotator_id,rating or "
                f"sample_id,error_free; got {header}"
            )


def _int_field(path: Path, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{path}: {value!r} is not an integer") from None


def merge_ratings(base: HumanRatings, path: str | Path) -> HumanRatings:
    _merge_ratings_csv(base, path)
    return base
