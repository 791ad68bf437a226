"""Block-encoding algebra with explicit scale-factor and ancilla bookkeeping."""

from qml.blockenc.algebra import (
    be_from_pauli_terms,
    be_hadamard_product,
    be_lcu,
    be_linear_combination,
    be_product,
    be_product_chain,
    be_transpose,
)
from qml.blockenc.encoding import (
    BlockEncoding,
    Provenance,
    StateEncoding,
    be_from_matrix,
    be_from_unitary,
    count_queries,
    dilate,
    extract,
    state_encode,
)
from qml.blockenc.polynomials import (
    PolySpec,
    gelu,
    grid_error,
    monomial,
    poly_approx_exp,
    poly_approx_gelu,
)
from qml.blockenc.transforms import (
    be_all_ones,
    be_diag_from_state,
    be_elementwise_map,
    be_elementwise_poly,
    be_projector,
    be_pseudo_inverse,
    be_row_mask,
    elementwise_ancillas,
    qsvt_apply,
)

__all__ = [
    "BlockEncoding",
    "PolySpec",
    "Provenance",
    "StateEncoding",
    "be_all_ones",
    "be_diag_from_state",
    "be_elementwise_map",
    "be_elementwise_poly",
    "be_from_matrix",
    "be_from_pauli_terms",
    "be_from_unitary",
    "be_hadamard_product",
    "be_lcu",
    "be_linear_combination",
    "be_product",
    "be_product_chain",
    "be_projector",
    "be_pseudo_inverse",
    "be_row_mask",
    "be_transpose",
    "count_queries",
    "dilate",
    "elementwise_ancillas",
    "extract",
    "gelu",
    "grid_error",
    "monomial",
    "poly_approx_exp",
    "poly_approx_gelu",
    "qsvt_apply",
    "state_encode",
]
