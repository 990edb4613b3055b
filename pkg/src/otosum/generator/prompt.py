"""Class-enriched prompt construction.

The predicted (or caller-supplied) category is substituted into a fixed
template; the rendered text is tokenized and embedded with the model's
token-embedding table.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch

from ..errors import UnknownPlaceholder, ValidationError
from ..labels import ClassLabel
from .vocab import Vocabulary

DEFAULT_PROMPT_TEMPLATE = (
    "Category: {class}. Given an otoscopic image, "
    "generate a patient-friendly summary."
)

PLACEHOLDER = "{class}"


@dataclass
class PromptSequence:
    """Prompt token ids plus their (length x d) embedding matrix."""

    token_ids: list[int]
    embedded: torch.Tensor

    def __post_init__(self) -> None:
        if self.embedded.shape[0] != len(self.token_ids):
            raise ValidationError(
                f"{len(self.token_ids)} prompt tokens but "
                f"{self.embedded.shape[0]} embedding rows"
            )


def render_prompt(label: ClassLabel, template: str = DEFAULT_PROMPT_TEMPLATE) -> str:
    """Substitute the class display name into the template."""
    if PLACEHOLDER not in template:
        raise UnknownPlaceholder(
            f"prompt template must contain {PLACEHOLDER!r}; got {template!r}"
        )
    return template.replace(PLACEHOLDER, label.display_name)


def build_prompt(
    label: ClassLabel,
    vocab: Vocabulary,
    embedding: torch.nn.Embedding,
    template: str = DEFAULT_PROMPT_TEMPLATE,
) -> PromptSequence:
    token_ids = vocab.encode(render_prompt(label, template))
    with torch.no_grad():
        embedded = embedding(torch.tensor(token_ids, dtype=torch.int64))
    return PromptSequence(token_ids=token_ids, embedded=embedded)
