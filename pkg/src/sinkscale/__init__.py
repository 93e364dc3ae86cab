"""Alternate row/column matrix scaling to doubly stochastic limits.

Exact rational iteration, closed-form limits for the two-valued symmetric
3x3 families and the block MBN family, real-root isolation for the scaling
polynomials, and continued-fraction approximation of the cube-root targets
the scaling iterates converge to.
"""

from .diophantine import (
    ApproximantTable,
    ContinuedFraction,
    cbrt_approximants,
    cbrt_minus_one_polynomial,
    cbrt_polynomial,
    cfrac_algebraic,
    cfrac_cbrt,
    compare_report,
)
from .equivalence import (
    EquivalenceWitness,
    canonical_matrix,
    classify_two_valued,
    transport_limit,
)
from .errors import SinkscaleError
from .families import (
    FamilyLimit,
    FamilySpec,
    TriangularForm,
    a2_rationality,
    a7_octic,
    a7_root_candidates,
    asymptotic_limit,
    family_limit,
)
from .matrices import (
    DiagonalScaling,
    Matrix,
    Permutation,
    all_permutations,
    col_scale,
    is_doubly_stochastic,
    parse_matrix,
    perm_compose,
    perm_matrix_apply,
    row_scale,
)
from .numerics import (
    CubicFieldElement,
    QuadraticSurd,
    RationalInterval,
    algebraic_floor,
    cubic_eval,
    decimal_truncate,
    format_rational,
    parse_rational,
    surd_eval,
)
from .roots import Polynomial, descartes_positive_bound, isolate_roots_in, refine_root
from .scaling import (
    IterationTrace,
    SinkhornResult,
    sinkhorn_iterate,
    sinkhorn_limit,
    symmetric_scaling,
)

__version__ = "0.1.0"

__all__ = [
    "ApproximantTable",
    "ContinuedFraction",
    "CubicFieldElement",
    "DiagonalScaling",
    "EquivalenceWitness",
    "FamilyLimit",
    "FamilySpec",
    "IterationTrace",
    "Matrix",
    "Permutation",
    "Polynomial",
    "QuadraticSurd",
    "RationalInterval",
    "SinkhornResult",
    "SinkscaleError",
    "TriangularForm",
    "a2_rationality",
    "a7_octic",
    "a7_root_candidates",
    "algebraic_floor",
    "all_permutations",
    "asymptotic_limit",
    "canonical_matrix",
    "cbrt_approximants",
    "cbrt_minus_one_polynomial",
    "cbrt_polynomial",
    "cfrac_algebraic",
    "cfrac_cbrt",
    "classify_two_valued",
    "col_scale",
    "compare_report",
    "cubic_eval",
    "decimal_truncate",
    "descartes_positive_bound",
    "family_limit",
    "format_rational",
    "is_doubly_stochastic",
    "isolate_roots_in",
    "parse_matrix",
    "parse_rational",
    "perm_compose",
    "perm_matrix_apply",
    "refine_root",
    "row_scale",
    "sinkhorn_iterate",
    "sinkhorn_limit",
    "surd_eval",
    "symmetric_scaling",
    "transport_limit",
    "__version__",
]
