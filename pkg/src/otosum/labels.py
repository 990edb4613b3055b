"""The five otoscopic diagnosis categories.

Codes are stable (0..4, alphabetical) and shared by manifests, model heads,
checkpoints, and reports.
"""

from __future__ import annotations

import enum


class ClassLabel(enum.IntEnum):
    """Diagnosis category with a stable integer code."""

    AcuteOtitisMedia = 0
    CerumenImpaction = 1
    ChronicOtitisMedia = 2
    Myringosclerosis = 3
    Normal = 4

    @property
    def display_name(self) -> str:
        """Human-readable name, e.g. ``Chronic Otitis Media``."""
        return _DISPLAY_NAMES[self]

    @classmethod
    def from_string(cls, value: str) -> "ClassLabel":
        """Parse the exact manifest string (``CerumenImpaction`` etc.)."""
        try:
            return cls[value]
        except KeyError:
            raise ValueError(
                f"unknown class label {value!r}; expected one of "
                f"{[label.name for label in cls]}"
            ) from None


_DISPLAY_NAMES = {
    ClassLabel.AcuteOtitisMedia: "Acute Otitis Media",
    ClassLabel.CerumenImpaction: "Cerumen Impaction",
    ClassLabel.ChronicOtitisMedia: "Chronic Otitis Media",
    ClassLabel.Myringosclerosis: "Myringosclerosis",
    ClassLabel.Normal: "Normal",
}

NUM_CLASSES = len(ClassLabel)

CLASS_NAMES = [label.name for label in ClassLabel]
