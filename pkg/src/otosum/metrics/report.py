"""The JSON metrics report emitted by evaluation commands.

Schema::

    {"classification": {"per_class": {...}, "macro": {...}},
     "summarization": {"bleu": ..., "rouge_l": ..., "embed_f1": ...},
     "significance": [...],
     "human": {...}}

Sections are null when a run did not produce them.  Serialization sorts
keys and uses repr-exact floats, so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .classification import PRF
from .human import HumanAggregate
from .significance import SignificanceResult


@dataclass
class MetricsReport:
    classification: PRF | None = None
    summarization: dict[str, float] | None = None
    significance: list[SignificanceResult] = field(default_factory=list)
    human: HumanAggregate | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        doc: dict = {
            "classification": None,
            "summarization": self.summarization,
            "significance": [asdict(s) for s in self.significance],
            "human": asdict(self.human) if self.human else None,
        }
        if self.classification is not None:
            doc["classification"] = {
                "per_class": {
                    label.name: asdict(score)
                    for label, score in self.classification.per_class.items()
                },
                "macro": asdict(self.classification.macro),
            }
        doc.update(self.extra)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")
        return path
