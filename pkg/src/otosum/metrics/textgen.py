"""Text-generation metrics: corpus BLEU, ROUGE-L, and embedding F1.

All three share the package tokenizer.  BLEU is corpus-level with clipped
n-gram precisions (n = 1..4), add-one smoothing for n >= 2, and the usual
brevity penalty.  ROUGE-L is LCS-based with a configurable recall weight.
Embedding F1 greedily matches tokens by cosine similarity under any
caller-supplied token embedder.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import EmptyCorpus, ValidationError
from ..text import tokenize

TokenEmbedder = Callable[[str], np.ndarray]


@dataclass(frozen=True)
class SummaryPair:
    """One hypothesis/reference summary pair."""

    id: str
    hypothesis: str
    reference: str

    def __post_init__(self) -> None:
        if not self.reference.strip():
            raise ValidationError(f"pair {self.id!r} has an empty reference")


@dataclass(frozen=True)
class PRFScore:
    precision: float
    recall: float
    f: float


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(pairs: Sequence[SummaryPair], max_n: int = 4) -> float:
    """Corpus BLEU in [0, 1].

    Zero unigram overlap (or an empty corpus of hypothesis tokens) scores
    exactly 0; an identical corpus scores exactly 1.
    """
    if not pairs:
        raise EmptyCorpus("bleu needs at least one pair")
    hyp_tokens = [tokenize(p.hypothesis) for p in pairs]
    ref_tokens = [tokenize(p.reference) for p in pairs]
    c = sum(len(t) for t in hyp_tokens)
    r = sum(len(t) for t in ref_tokens)
    if c == 0:
        return 0.0

    log_precision_sum = 0.0
    for n in range(1, max_n + 1):
        clipped = 0
        total = 0
        for hyp, ref in zip(hyp_tokens, ref_tokens):
            hyp_grams = _ngrams(hyp, n)
            ref_grams = _ngrams(ref, n)
            clipped += sum(min(count, ref_grams[g]) for g, count in hyp_grams.items())
            total += max(0, len(hyp) - n + 1)
        if n == 1:
            if clipped == 0:
                return 0.0
            p_n = clipped / total
        else:
            p_n = (clipped + 1) / (total + 1)
        log_precision_sum += math.log(p_n) / max_n

    brevity = 1.0 if c >= r else math.exp(1.0 - r / c)
    return brevity * math.exp(log_precision_sum)


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length by dynamic programming."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0] * (len(b) + 1)
        for j, y in enumerate(b, start=1):
            cur[j] = prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def rouge_l(pair: SummaryPair, beta: float = 1.0) -> PRFScore:
    """LCS recall/precision with F = (1 + beta^2)PR / (R + beta^2 P)."""
    hyp = tokenize(pair.hypothesis)
    ref = tokenize(pair.reference)
    if not hyp:
        return PRFScore(0.0, 0.0, 0.0)
    lcs = lcs_length(hyp, ref)
    recall = lcs / len(ref)
    precision = lcs / len(hyp)
    if precision + recall == 0:
        return PRFScore(0.0, 0.0, 0.0)
    f = (1 + beta**2) * precision * recall / (recall + beta**2 * precision)
    return PRFScore(precision, recall, f)


def rouge_l_corpus(pairs: Sequence[SummaryPair], beta: float = 1.0) -> float:
    """Mean per-pair ROUGE-L F."""
    if not pairs:
        raise EmptyCorpus("rouge_l_corpus needs at least one pair")
    return float(np.mean([rouge_l(p, beta).f for p in pairs]))


def _cosine_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    norms_a = np.linalg.norm(a, axis=1, keepdims=True)
    norms_b = np.linalg.norm(b, axis=1, keepdims=True)
    safe_a = np.where(norms_a == 0, 1.0, norms_a)
    safe_b = np.where(norms_b == 0, 1.0, norms_b)
    return (a / safe_a) @ (b / safe_b).T


def embed_f1(pair: SummaryPair, token_embedder: TokenEmbedder) -> PRFScore:
    """Greedy cosine matching of token embeddings.

    Precision is the mean over hypothesis tokens of the best similarity to
    any reference token; recall is the symmetric quantity; F is their
    harmonic mean.  No idf weighting, no baseline rescaling.
    """
    hyp = tokenize(pair.hypothesis)
    ref = tokenize(pair.reference)
    if not hyp:
        return PRFScore(0.0, 0.0, 0.0)
    hyp_vecs = np.stack([np.asarray(token_embedder(t), dtype=np.float64) for t in hyp])
    ref_vecs = np.stack([np.asarray(token_embedder(t), dtype=np.float64) for t in ref])
    sims = _cosine_matrix(hyp_vecs, ref_vecs)
    precision = float(sims.max(axis=1).mean())
    recall = float(sims.max(axis=0).mean())
    if precision + recall == 0:
        return PRFScore(0.0, 0.0, 0.0)
    return PRFScore(
        precision, recall, 2 * precision * recall / (precision + recall)
    )


def embed_f1_corpus(
    pairs: Sequence[SummaryPair], token_embedder: TokenEmbedder
) -> float:
    if not pairs:
        raise EmptyCorpus("embed_f1_corpus needs at least one pair")
    return float(np.mean([embed_f1(p, token_embedder).f for p in pairs]))


def one_hot_embedder(vocabulary: Sequence[str]) -> TokenEmbedder:
    """Orthogonal embedder for tests and vocabulary-only scoring."""
    index = {tok: i for i, tok in enumerate(vocabulary)}
    dim = len(index) + 1

    def embed(token: str) -> np.ndarray:
        vec = np.zeros(dim)
        vec[index.get(token, dim - 1)] = 1.0
        return vec

    return embed
