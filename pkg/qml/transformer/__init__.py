"""Single-block Transformer: classical reference, block-encoding pipeline and norm study."""

from qml.blockenc.polynomials import gelu, poly_approx_exp, poly_approx_gelu
from qml.transformer.classical import (
    ClassicalTrace,
    TokenSequence,
    WeightSet,
    attention_weights,
    causal_mask,
    classical_attention,
    classical_transformer_row,
    classical_transformer_trace,
    ffn,
    layer_norm_residual,
    softmax,
)
from qml.transformer.norms import NormRow, NormStudy, RowSampler, norm_scaling_study
from qml.transformer.quantum import (
    InputEncodings,
    Mode,
    ResourceReport,
    RowState,
    StageReport,
    TransformerRun,
    build_input_encodings,
    cosine_similarity,
    q_attention_row,
    q_ffn_state,
    q_layernorm_state,
    q_softmax_state,
    q_transformer_row,
    score_encoding,
)

__all__ = [
    "ClassicalTrace",
    "InputEncodings",
    "Mode",
    "NormRow",
    "NormStudy",
    "ResourceReport",
    "RowSampler",
    "RowState",
    "StageReport",
    "TokenSequence",
    "TransformerRun",
    "WeightSet",
    "attention_weights",
    "build_input_encodings",
    "causal_mask",
    "classical_attention",
    "classical_transformer_row",
    "classical_transformer_trace",
    "cosine_similarity",
    "ffn",
    "gelu",
    "layer_norm_residual",
    "norm_scaling_study",
    "poly_approx_exp",
    "poly_approx_gelu",
    "q_attention_row",
    "q_ffn_state",
    "q_layernorm_state",
    "q_softmax_state",
    "q_transformer_row",
    "score_encoding",
    "softmax",
]
