from .adam import Adam, AdamState, adam_step
from .checkpoint import checkpoint_hash, load_checkpoint, save_checkpoint
from .gradcheck import grad_check
from .graph import (
    BatchNorm2d,
    Conv2d,
    Dense,
    Embedding,
    LayerGraph,
    LayerNorm,
    LayerSpec,
    MultiHeadAttention,
    ParamInit,
    ResidualBlock,
)
from .init import init_parameters, load_into_module
from .params import ParameterTensor, named_float_state, parameter_store

__all__ = [
    "Adam",
    "AdamState",
    "BatchNorm2d",
    "Conv2d",
    "Dense",
    "Embedding",
    "LayerGraph",
    "LayerNorm",
    "LayerSpec",
    "MultiHeadAttention",
    "ParamInit",
    "ParameterTensor",
    "ResidualBlock",
    "adam_step",
    "named_float_state",
    "parameter_store",
    "checkpoint_hash",
    "grad_check",
    "init_parameters",
    "load_checkpoint",
    "load_into_module",
    "save_checkpoint",
]
