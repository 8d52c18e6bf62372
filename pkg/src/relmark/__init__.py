"""Marked bases relative to quasi-stable ideals, their parameter schemes, and lex-ideals in quotients."""

from .coordinates import (
    LowerTriangularChange,
    PositionNotFound,
    apply_change,
    autoreduce,
    is_U_marked_set,
    quasi_stable_position,
)
from .groebner import (
    BudgetExceeded,
    analyze,
    buchberger,
    detect_coordinate_subspace,
    krull_dimension,
    multiplicity_zero_dim,
    tangent_dimension_at_origin,
)
from .lex import (
    QuotientContext,
    growth_count,
    is_lex_ideal,
    is_piecewise_lexsegment,
    lex_point,
    lex_segment,
    macaulay_lex_recognizer,
)
from .marked import (
    MarkedSet,
    MarkedSetError,
    interleaved_reduce,
    is_marked_basis,
    is_relative_marked_basis,
    normal_form,
    reduce,
)
from .monomial import (
    HilbertPolynomial,
    MonomialIdeal,
    NotQuasiStable,
    gotzmann_number,
    hilbert_data,
    hilbert_polynomial,
    is_quasi_stable,
    pommaret_basis,
    regularity,
    rho,
    saturation,
    truncation,
)
from .poly import DEGREVLEX, LEX, ParseError, Poly, RingContext
from .schemes import (
    PreconditionError,
    comparison_route,
    full_scheme_ideal,
    generic_marked_set,
    relative_scheme_ideal,
    relative_scheme_ideal_truncated,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DEGREVLEX",
    "HilbertPolynomial",
    "LEX",
    "LowerTriangularChange",
    "MarkedSet",
    "MarkedSetError",
    "MonomialIdeal",
    "NotQuasiStable",
    "ParseError",
    "Poly",
    "PositionNotFound",
    "PreconditionError",
    "QuotientContext",
    "RingContext",
    "analyze",
    "apply_change",
    "autoreduce",
    "buchberger",
    "comparison_route",
    "detect_coordinate_subspace",
    "full_scheme_ideal",
    "generic_marked_set",
    "gotzmann_number",
    "growth_count",
    "hilbert_data",
    "hilbert_polynomial",
    "interleaved_reduce",
    "is_U_marked_set",
    "is_lex_ideal",
    "is_marked_basis",
    "is_piecewise_lexsegment",
    "is_quasi_stable",
    "is_relative_marked_basis",
    "krull_dimension",
    "lex_point",
    "lex_segment",
    "macaulay_lex_recognizer",
    "multiplicity_zero_dim",
    "normal_form",
    "pommaret_basis",
    "quasi_stable_position",
    "reduce",
    "regularity",
    "relative_scheme_ideal",
    "relative_scheme_ideal_truncated",
    "rho",
    "saturation",
    "tangent_dimension_at_origin",
    "truncation",
]
