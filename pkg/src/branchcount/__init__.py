"""Exact counting of real half-branches of curve germs at the origin, and of
double-point curves of analytic germs from the plane to 3-space."""

from .poly import Polynomial, compare, det, jacobian_minors, order_key
from .staircase import (
    INFINITE,
    Diagram,
    StandardBasis,
    basis_under_staircase,
    colength,
    quotient_dim,
    reduce,
    staircase_difference,
    standard_basis,
)

__all__ = [
    "Polynomial",
    "compare",
    "det",
    "jacobian_minors",
    "order_key",
    "INFINITE",
    "Diagram",
    "StandardBasis",
    "basis_under_staircase",
    "colength",
    "quotient_dim",
    "reduce",
    "staircase_difference",
    "standard_basis",
]
