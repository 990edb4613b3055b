"""Word-level vocabulary with fixed special-token ids."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import EmptyVocabulary, ValidationError
from ..text import tokenize

PAD, BOS, EOS, UNK = 0, 1, 2, 3
SPECIAL_TOKENS = ("<pad>", "<bos>", "<eos>", "<unk>")


@dataclass
class Vocabulary:
    """Token list in id order; ids 0..3 are pad/bos/eos/unk."""

    tokens: list[str]

    def __post_init__(self) -> None:
        if tuple(self.tokens[:4]) != SPECIAL_TOKENS:
            raise ValidationError(
                f"vocabulary must start with {SPECIAL_TOKENS}; got {self.tokens[:4]}"
            )
        if len(set(self.tokens)) != len(self.tokens):
            raise ValidationError("vocabulary tokens must be unique")
        self.index = {tok: i for i, tok in enumerate(self.tokens)}

    def __len__(self) -> int:
        return len(self.tokens)

    @classmethod
    def build(cls, texts: Iterable[str]) -> "Vocabulary":
        """Collect sorted unique word/punctuation tokens from the corpus."""
        seen: set[str] = set()
        for text in texts:
            seen.update(tokenize(text))
        if not seen:
            raise EmptyVocabulary("no tokens found in the vocabulary corpus")
        return cls(tokens=list(SPECIAL_TOKENS) + sorted(seen))

    def encode(self, text: str) -> list[int]:
        """Token ids for a text; out-of-vocabulary words map to UNK."""
        return [self.index.get(tok, UNK) for tok in tokenize(text)]

    def decode(self, ids: Iterable[int]) -> list[str]:
        """Tokens for a sequence of ids, special tokens dropped."""
        return [self.tokens[i] for i in ids if i >= len(SPECIAL_TOKENS)]
