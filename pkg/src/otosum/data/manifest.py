"""Dataset manifests: one labeled, summarized otoscopic image per record.

The on-disk format is a single JSON document::

    {"records": [{"id": ..., "image_path": ..., "label": ...,
                  "summary": ..., "source": ...}]}

Image paths resolve relative to the manifest's directory.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from PIL import Image, UnidentifiedImageError

from ..errors import ParseError, ValidationError
from ..labels import ClassLabel

_RECORD_FIELDS = ("id", "image_path", "label", "summary", "source")


@dataclass(frozen=True)
class ImageRecord:
    """A single annotated image."""

    id: str
    image_path: str
    label: ClassLabel
    summary: str
    source: str = ""


@dataclass
class DatasetManifest:
    """An ordered collection of records plus the directory they resolve in."""

    records: list[ImageRecord]
    root: Path = field(default_factory=Path)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def class_counts(self) -> dict[ClassLabel, int]:
        counts = Counter(r.label for r in self.records)
        return {label: counts.get(label, 0) for label in ClassLabel}

    def by_label(self) -> dict[ClassLabel, list[ImageRecord]]:
        """Records grouped by class, manifest order preserved."""
        groups: dict[ClassLabel, list[ImageRecord]] = {c: [] for c in ClassLabel}
        for record in self.records:
            groups[record.label].append(record)
        return groups

    def record(self, record_id: str) -> ImageRecord:
        for r in self.records:
            if r.id == record_id:
                return r
        raise KeyError(record_id)

    def resolve(self, record: ImageRecord) -> Path:
        """Absolute path of a record's image file."""
        return (self.root / record.image_path).resolve()

    def subset(self, records: list[ImageRecord]) -> "DatasetManifest":
        return DatasetManifest(records=list(records), root=self.root)

    def ids(self) -> set[str]:
        return {r.id for r in self.records}


def _parse_record(entry: object, index: int) -> ImageRecord:
    if not isinstance(entry, dict):
        raise ParseError(f"record #{index} is not an object")
    missing = [k for k in _RECORD_FIELDS if k not in entry]
    if missing:
        raise ParseError(f"record #{index} is missing fields {missing}")
    for key in _RECORD_FIELDS:
        if not isinstance(entry[key], str):
            raise ParseError(f"record #{index} field {key!r} is not a string")
    try:
        label = ClassLabel.from_string(entry["label"])
    except ValueError as exc:
        raise ValidationError(f"record {entry['id']!r}: {exc}") from None
    return ImageRecord(
        id=entry["id"],
        image_path=entry["image_path"],
        label=label,
        summary=entry["summary"],
        source=entry["source"],
    )


def validate_manifest(manifest: DatasetManifest, check_images: bool = True) -> None:
    """Check every record invariant; raise ValidationError naming offenders."""
    seen: set[str] = set()
    for record in manifest.records:
        if record.id in seen:
            raise ValidationError(f"duplicate record id {record.id!r}")
        seen.add(record.id)
        if not record.summary.strip():
            raise ValidationError(f"record {record.id!r} has an empty summary")
        if check_images:
            path = manifest.resolve(record)
            if not path.is_file():
                raise ValidationError(
                    f"record {record.id!r}: image file {path} does not exist"
                )
            try:
                with Image.open(path) as img:
                    img.verify()
            except (UnidentifiedImageError, OSError) as exc:
                raise ValidationError(
                    f"record {record.id!r}: image file {path} does not decode ({exc})"
                ) from None


def load_manifest(path: str | Path, check_images: bool = True) -> DatasetManifest:
    """Load and validate a manifest file.

    Raises ParseError for malformed JSON/schema and ValidationError for
    duplicate ids, unknown classes, empty summaries, or missing/corrupt
    image files.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ParseError(f"manifest file {path} does not exist") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"manifest file {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict) or not isinstance(raw.get("records"), list):
        raise ParseError(f"manifest file {path} must be an object with a 'records' list")
    records = [_parse_record(entry, i) for i, entry in enumerate(raw["records"])]
    manifest = DatasetManifest(records=records, root=path.parent)
    validate_manifest(manifest, check_images=check_images)
    return manifest


def save_manifest(manifest: DatasetManifest, path: str | Path) -> Path:
    """Write a manifest in the canonical JSON layout."""
    path = Path(path)
    payload = {
        "records": [
            {
                "id": r.id,
                "image_path": r.image_path,
                "label": r.label.name,
                "summary": r.summary,
                "source": r.source,
            }
            for r in manifest.records
        ]
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path
