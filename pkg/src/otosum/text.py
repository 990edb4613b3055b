"""Word-level tokenization shared by the generator and the text metrics.

One tokenizer for both keeps generated-summary scoring consistent with how
the model itself sees text: lowercase, words and punctuation marks as
separate tokens, whitespace discarded.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"\w+|[^\w\s]")


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split into word/punctuation tokens."""
    return _TOKEN_RE.findall(text.lower())


def detokenize(tokens: list[str]) -> str:
    """Join tokens with spaces; round-trip fidelity is not a goal."""
    return " ".join(tokens)
