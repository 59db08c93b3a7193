"""Exact convolutional codes over Z_{p^r}: decomposition, p-bases and duals."""

from .code import (
    ConvolutionalCode,
    Decomposition,
    PEncoder,
    StandardFormResult,
    code_equal,
    code_sum,
    contains,
    decompose,
    is_free,
    is_standard_form,
    p_dim,
    p_encoder,
    standard_form,
    sum_and_intersection,
)
from .dual import DualResult, dual, dual_free, orthogonal, verify_duality_identities
from .errors import *  # noqa: F401,F403
from .matrix import (
    ChainDiagonalization,
    PolyMatrix,
    RationalMatrix,
    chain_diagonalize,
    clear_denominators,
    complete_to_invertible,
    full_row_rank,
    invert_matrix,
)
from .poly import (
    LaurentWindow,
    Polynomial,
    RationalFunction,
    laurent_expand,
    make_rational,
    mod_p_project,
    poly_arith,
    rational_inverse,
)
from .pstructure import (
    expand_to_p_generator_sequence,
    is_p_generator_sequence,
    is_p_linearly_independent,
    p_dimension_formula,
    p_span_membership,
    pvector,
)
from .report import Check, VerificationReport
from .ring import RingContext, RingElem, p_adic_expand, p_valuation, ring_arithmetic

__version__ = "0.1.0"
