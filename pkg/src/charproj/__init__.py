"""Exact characteristic projections (projectors onto generalized eigenspaces) as polynomials in the operator."""

from .field import QQ, FieldContext, FieldElement, embed_rational, field_add, field_inv, field_mul, field_sub
from .poly import (
    Polynomial,
    poly_divrem,
    poly_eval,
    poly_xgcd,
    root_valuation,
    squarefree_part,
    synthetic_divide,
    taylor_shift,
)
from .linalg import (
    Matrix,
    base_change_context,
    krylov_minpoly,
    mat_charpoly,
    mat_identity,
    mat_kernel,
    mat_minpoly,
    mat_poly_eval,
    mat_rref,
    mat_solve,
    mat_trace,
)
from .projection import (
    Eigenvalue,
    ProjectionResult,
    Variant,
    char_dimension,
    generalized_eigenspace_oracle,
    polyproj,
    polyproj_division_free,
    projector,
    projector_rank_by_trace,
)
from .decomp import (
    BlockDecomposition,
    Intertwiner,
    check_intertwiner,
    conjugate_operator,
    equivariant_transport,
    find_in_span,
    recombine_block_projection,
    tower_projection,
)

__version__ = "0.1.0"
