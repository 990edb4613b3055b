"""Greedy and beam decoding over a frozen generator.

``max_length`` bounds the emitted sequence including its end marker, so
``max_length=1`` leaves room for nothing but EOS and yields an empty
summary.  Greedy takes the argmax each step (ties resolve to the lowest
token id); beam keeps ``beam_width`` hypotheses ranked by summed
log-probability normalized by length**length_penalty.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch

from ..data.preprocess import ImageTensor
from ..errors import ValidationError
from ..labels import ClassLabel
from ..text import detokenize
from .model import SummaryGenerator
from .prompt import DEFAULT_PROMPT_TEMPLATE
from .vocab import BOS, EOS


@dataclass(frozen=True)
class DecodeConfig:
    strategy: str = "greedy"
    beam_width: int = 1
    max_length: int = 128
    length_penalty: float = 1.0

    def __post_init__(self) -> None:
        if self.strategy not in ("greedy", "beam"):
            raise ValidationError(f"unknown decode strategy {self.strategy!r}")
        if self.beam_width < 1:
            raise ValidationError(f"beam_width must be >= 1; got {self.beam_width}")
        if self.strategy == "greedy" and self.beam_width != 1:
            raise ValidationError("greedy decoding means beam_width == 1")
        if self.max_length < 1:
            raise ValidationError(f"max_length must be >= 1; got {self.max_length}")


@torch.no_grad()
def _step_distribution(
    generator: SummaryGenerator,
    tokens: list[int],
    memory: torch.Tensor,
    memory_mask: torch.Tensor,
) -> torch.Tensor:
    """Next-token probability vector given the emitted prefix."""
    ids = torch.tensor([tokens], dtype=torch.int64)
    logits = generator.net.decode(ids, memory, memory_mask)
    return torch.softmax(logits[0, -1].double(), dim=-1)


@torch.no_grad()
def greedy_decode(
    generator: SummaryGenerator, memory: torch.Tensor, memory_mask: torch.Tensor,
    max_length: int,
) -> list[int]:
    """Token ids (without BOS/EOS) chosen by stepwise argmax."""
    tokens = [BOS]
    emitted: list[int] = []
    for _ in range(max_length - 1):
        probs = _step_distribution(generator, tokens, memory, memory_mask)
        nxt = int(torch.argmax(probs))
        if nxt == EOS:
            break
        emitted.append(nxt)
        tokens.append(nxt)
    return emitted


@torch.no_grad()
def beam_decode(
    generator: SummaryGenerator, memory: torch.Tensor, memory_mask: torch.Tensor,
    max_length: int, beam_width: int, length_penalty: float,
) -> list[int]:
    """Best hypothesis under length-normalized summed log-probability."""

    def score(logp_sum: float, length: int) -> float:
        return logp_sum / max(1, length) ** length_penalty

    # (emitted tokens, summed logp, finished)
    beams: list[tuple[list[int], float, bool]] = [([], 0.0, False)]
    for _ in range(max_length - 1):
        if all(done for _, _, done in beams):
            break
        candidates: list[tuple[list[int], float, bool]] = []
        for tokens, logp_sum, done in beams:
            if done:
                candidates.append((tokens, logp_sum, True))
                continue
            probs = _step_distribution(generator, [BOS] + tokens, memory, memory_mask)
            logp = torch.log(torch.clamp(probs, min=1e-30))
            top = torch.topk(logp, min(beam_width, logp.shape[0]))
            for value, idx in zip(top.values.tolist(), top.indices.tolist()):
                if idx == EOS:
                    candidates.append((tokens, logp_sum + value, True))
                else:
                    candidates.append((tokens + [idx], logp_sum + value, False))
        candidates.sort(key=lambda c: (-score(c[1], len(c[0]) + 1), c[0]))
        beams = candidates[:beam_width]
    best = max(beams, key=lambda c: score(c[1], len(c[0]) + 1))
    return best[0]


@torch.no_grad()
def generate_summary(
    generator: SummaryGenerator,
    image: ImageTensor,
    label: ClassLabel,
    decode: DecodeConfig = DecodeConfig(),
    template: str = DEFAULT_PROMPT_TEMPLATE,
) -> str:
    """Run the encoder over the fused prompt and decode a summary string."""
    memory, mask = generator.encode_for_decoding(image, label, template)
    if decode.strategy == "greedy":
        ids = greedy_decode(generator, memory, mask, decode.max_length)
    else:
        ids = beam_decode(
            generator, memory, mask, decode.max_length,
            decode.beam_width, decode.length_penalty,
        )
    return detokenize(generator.vocab.decode(ids))
