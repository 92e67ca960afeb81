"""Double points of analytic germs from the plane to 3-space.

A germ u = (u1, u2, u3) in two variables is doubled into the four-variable
system  w_i(x, y) = u_i(x) - u_i(y)  together with the three 2 x 2 divided-
difference determinants W_ij.  Away from the diagonal, the common zero set V
of those six equations is exactly the pairs (p, q) with u(p) = u(q), and if
the critical point of u is isolated, V meets the diagonal only at the
origin.  Each half-branch of the double-point curve of u is covered by two
half-branches of V (swap of p and q), so the double-point count is half the
branch count of V, once transversality and absence of triple points are
certified.

The divided-difference coefficients c_ik are not unique; the canonical
choice here splits one variable at a time,

    c_i1 = (u_i(x1, x2) - u_i(y1, x2)) / (x1 - y1),
    c_i2 = (u_i(y1, x2) - u_i(y1, y2)) / (x2 - y2),

both exact polynomial quotients of single-variable differences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .branches import BranchReport, GenericityConfig, count_branches
from .errors import DimensionMismatchError, IsolatedSingularityError, PreconditionError
from .poly import Polynomial, jacobian_minors
from .staircase import INFINITE, colength, standard_basis


@dataclass(frozen=True)
class MapGerm23:
    """Three polynomial components in two variables, vanishing at the origin."""

    components: tuple

    def __post_init__(self):
        if len(self.components) != 3:
            raise DimensionMismatchError("a plane-to-space germ needs three components")
        for u in self.components:
            if u.nvars != 2:
                raise DimensionMismatchError("components must live in two variables")
            if u.constant_term():
                raise PreconditionError("the germ must send the origin to the origin")


def _difference_quotients(u):
    """The canonical (c1, c2) with u(x) - u(y) = c1*(x1-y1) + c2*(x2-y2),
    as polynomials in (x1, x2, y1, y2)."""
    c1 = {}
    c2 = {}
    for (a, b), coeff in u.terms.items():
        # (x1^a - y1^a) x2^b = (x1 - y1) * sum_j x1^j y1^(a-1-j) x2^b
        for j in range(a):
            key = (j, b, a - 1 - j, 0)
            c1[key] = c1.get(key, 0) + coeff
        # y1^a (x2^b - y2^b) = (x2 - y2) * sum_j y1^a x2^j y2^(b-1-j)
        for j in range(b):
            key = (0, j, a, b - 1 - j)
            c2[key] = c2.get(key, 0) + coeff
    return Polynomial(4, c1), Polynomial(4, c2)


@dataclass(frozen=True)
class DoubledSystem:
    """The pair space picture of a germ: differences, divided-difference
    coefficients, their pair determinants, and the combined system."""

    germ: MapGerm23
    differences: tuple        # w1, w2, w3 in (x1, x2, y1, y2)
    coefficients: tuple       # ((c11, c12), (c21, c22), (c31, c32))
    pair_minors: tuple        # W12, W13, W23
    system: tuple             # (w1, w2, w3, W12, W13, W23)


def divided_differences(germ):
    """Build the doubled system of a germ with the canonical coefficients."""
    if not isinstance(germ, MapGerm23):
        germ = MapGerm23(tuple(germ))
    into_x = [0, 1]
    into_y = [2, 3]
    differences = []
    coefficients = []
    for u in germ.components:
        differences.append(u.remap_variables(4, into_x) - u.remap_variables(4, into_y))
        coefficients.append(_difference_quotients(u))
    minors = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        ci1, ci2 = coefficients[i]
        cj1, cj2 = coefficients[j]
        minors.append(ci1 * cj2 - ci2 * cj1)
    return DoubledSystem(
        germ,
        tuple(differences),
        tuple(coefficients),
        tuple(minors),
        tuple(differences) + tuple(minors),
    )


@dataclass(frozen=True)
class Certificate:
    passed: bool
    diagram: object
    colength: object  # int or INFINITE


def check_isolated_critical_point(germ, fatal=True):
    """The critical point of the germ is isolated iff the plane ideal of the
    2 x 2 minors of its derivative has finite colength."""
    if not isinstance(germ, MapGerm23):
        germ = MapGerm23(tuple(germ))
    minors = jacobian_minors(list(germ.components), 2)
    sb = standard_basis(minors, nvars=2, finite_hint=True)
    size = colength(sb.diagram)
    if size is INFINITE and fatal:
        raise IsolatedSingularityError(
            "the critical point of the germ is not isolated"
        )
    return Certificate(size is not INFINITE, sb.diagram, size)


def check_transverse(doubled):
    """All self-intersections near the origin are transverse if the six
    equations plus the 3 x 3 minors of the difference map have finite
    colength; failure is reported, not fatal."""
    w = list(doubled.differences)
    minors = jacobian_minors(w, 3)
    sb = standard_basis(list(doubled.system) + minors, finite_hint=True)
    size = colength(sb.diagram)
    return Certificate(size is not INFINITE, sb.diagram, size)


def triple_point_system(doubled):
    """The fifteen equations in (x, y, z) cutting the candidate triple
    points: differences and pair minors on (x,y) and (y,z), pair minors also
    on (x,z)."""
    into_xy = [0, 1, 2, 3]
    into_yz = [2, 3, 4, 5]
    into_xz = [0, 1, 4, 5]
    eqs = []
    for w in doubled.differences:
        eqs.append(w.remap_variables(6, into_xy))
    for w in doubled.differences:
        eqs.append(w.remap_variables(6, into_yz))
    for block in (into_xy, into_yz, into_xz):
        for m in doubled.pair_minors:
            eqs.append(m.remap_variables(6, block))
    return tuple(eqs)


def check_no_triple(doubled):
    """Finite colength of the fifteen-equation system excludes triple points;
    infinite colength only means triple points may exist."""
    eqs = triple_point_system(doubled)
    sb = standard_basis(list(eqs), finite_hint=True)
    size = colength(sb.diagram)
    return Certificate(size is not INFINITE, sb.diagram, size)


@dataclass(frozen=True)
class DoublePointReport:
    """Certificates and counts for the double-point curve of a germ."""

    germ: MapGerm23
    doubled: DoubledSystem
    critical: Certificate
    transverse: Certificate
    no_triple: Certificate
    branches: BranchReport | None
    pair_half_branches: int | None      # half-branches of V in the pair space
    double_point_half_branches: int | None  # exact count, when certified
    double_point_upper_bound: int | None    # when triple points may exist

    def summary(self):
        if self.double_point_half_branches is not None:
            return f"{self.double_point_half_branches} half-branches in the double-point curve"
        if self.double_point_upper_bound is not None:
            return f"at most {self.double_point_upper_bound} half-branches in the double-point curve"
        return "double-point count withheld (transversality not certified)"


def count_double_point_branches(germ, config=GenericityConfig()):
    """Count half-branches of the double-point curve of a plane-to-space germ.

    The isolated-critical-point certificate is mandatory.  A failed
    transversality certificate withholds the double-point interpretation but
    still counts branches of the pair-space curve; a failed triple-point
    certificate degrades the count to an upper bound.
    """
    if not isinstance(germ, MapGerm23):
        germ = MapGerm23(tuple(germ))
    doubled = divided_differences(germ)
    critical = check_isolated_critical_point(germ)
    transverse = check_transverse(doubled)
    no_triple = check_no_triple(doubled)

    branches = count_branches(list(doubled.system), config)
    b0 = branches.half_branch_count
    if b0 % 2:
        raise PreconditionError(
            "the pair-space curve has an odd branch count; the swap symmetry is broken"
        )

    exact = None
    upper = None
    pair = b0
    if transverse.passed:
        if no_triple.passed:
            exact = b0 // 2
        else:
            upper = b0 // 2
    return DoublePointReport(
        germ,
        doubled,
        critical,
        transverse,
        no_triple,
        branches,
        pair,
        exact,
        upper,
    )
