from .decode import DecodeConfig, beam_decode, generate_summary, greedy_decode
from .fusion import (
    IMAGE_EMBEDDING_DIM,
    DenseImageEmbedding,
    FusedSequence,
    add_positional,
    fuse,
    positional_encoding,
)
from .model import (
    Attention,
    GeneratorDims,
    GeneratorNet,
    SummaryGenerator,
    generator_graph,
)
from .prompt import (
    DEFAULT_PROMPT_TEMPLATE,
    PromptSequence,
    build_prompt,
    render_prompt,
)
from .train import (
    GenEpochStats,
    GenTrainResult,
    masked_token_ce,
    train_generator,
    write_gen_history_csv,
)
from .vocab import BOS, EOS, PAD, SPECIAL_TOKENS, UNK, Vocabulary

__all__ = [
    "BOS",
    "DEFAULT_PROMPT_TEMPLATE",
    "DecodeConfig",
    "DenseImageEmbedding",
    "EOS",
    "FusedSequence",
    "GenEpochStats",
    "GenTrainResult",
    "GeneratorDims",
    "GeneratorNet",
    "IMAGE_EMBEDDING_DIM",
    "PAD",
    "PromptSequence",
    "SPECIAL_TOKENS",
    "SummaryGenerator",
    "UNK",
    "Vocabulary",
    "add_positional",
    "beam_decode",
    "build_prompt",
    "fuse",
    "generate_summary",
    "generator_graph",
    "greedy_decode",
    "masked_token_ce",
    "positional_encoding",
    "render_prompt",
    "train_generator",
    "write_gen_history_csv",
]
