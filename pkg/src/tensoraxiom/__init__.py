"""Finite-dimensional tensor products built from their axioms.

Exact linear algebra over Q and GF(p), two concrete realizations of X (x) Y
checked against the span and factorization axioms, Kronecker products of
maps, and injective/projective crossnorms on real coefficient tables.
"""
from .bilinear import (
    BilinearMap,
    eval_bilinear,
    extend_bilinear,
    matrix_unit_bilinear,
    restrict_bilinear,
    section_left,
    section_right,
)
from .crossnorm import (
    NormResult,
    RealTensor,
    crossnorm_certify,
    hilbert_inner,
    hilbert_norm,
    injective_norm,
    projective_norm,
)
from .errors import *  # noqa: F401,F403
from .exact import *  # noqa: F401,F403
from .kron import adjoint, kron, shuffle_permutation
from .realizations import (
    DualRealization,
    QuotientRealization,
    dual_realization,
    member_relation_span,
    normal_form,
    quotient_realization,
)
from .tensor import (
    TensorElement,
    TensorRealization,
    basis_tensors,
    canonical_iso,
    check_axioms,
    factorize,
    iterated_product,
    minimal_regular_cover,
    regular_subspace,
    single_tensor,
    sub_tensor,
)

__version__ = "0.1.0"
