"""Counting real half-branches of a curve germ at the origin.

Pipeline: certify the complex zero set has dimension at most one and an
isolated singularity; replace the defining system by n-1 generic integer
combinations g plus one more h cutting the same germ; measure how flat the
perturbation must be from the staircases of <g, h> and <g, h^2>; perturb h
by an even-power form both ways; the half-branch count is the difference of
the two local degrees.  Every acceptance step is an exact staircase
certificate, and every random draw is recorded and reproducible from the
seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CurveDimensionError,
    DimensionMismatchError,
    GenericityError,
    InternalCertificateError,
    IsolatedSingularityError,
    NonIsolatedZeroError,
    PreconditionError,
)
from .localalg import el_degree, local_algebra
from .poly import Polynomial, det, jacobian_minors
from .staircase import (
    INFINITE,
    StandardBasis,
    colength,
    contains_ideal,
    quotient_dim,
    staircase_difference,
    standard_basis,
)
from .errors import NotSubidealError


@dataclass(frozen=True)
class GenericityConfig:
    """Randomness policy for the generic-reduction stage.

    The coefficient bound doubles on every retry.  A user-supplied matrix and
    vector switch the stage to a single deterministic attempt, which is how
    hand-picked combinations are reproduced bit-exactly; `even_order`
    likewise pins the perturbation exponent instead of the minimal valid one.
    """

    seed: int = 0
    bound: int = 10
    retries: int = 8
    matrix: tuple | None = None
    vector: tuple | None = None
    even_order: int | None = None

    def __post_init__(self):
        if self.bound < 1 or self.retries < 1:
            raise ValueError("bound and retries must be positive")
        if self.even_order is not None and (
            self.even_order < 2 or self.even_order % 2
        ):
            raise ValueError("an explicit perturbation order must be a positive even integer")

    @staticmethod
    def with_combinations(matrix, vector, **kw):
        matrix = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        vector = tuple(Fraction(x) for x in vector)
        return GenericityConfig(matrix=matrix, vector=vector, **kw)


@dataclass(frozen=True)
class CurveDimCertificate:
    """A witness linear form whose adjunction makes the colength finite."""

    form_coefficients: tuple
    diagram: object
    colength: int


@dataclass(frozen=True)
class SingularityCertificate:
    """Finite colength of the system plus its critical-rank minors."""

    minor_size: int
    diagram: object
    colength: int


@dataclass(frozen=True)
class ReductionResult:
    """Accepted generic reduction with its certificate trail."""

    combinations: tuple          # g_1 .. g_{n-1}
    pivot: object                # h
    matrix: tuple
    vector: tuple
    isolated_diagram: object     # staircase of <g> + minors of D(g)
    isolated_colength: int
    basis_source: StandardBasis  # standard basis of <f_1 .. f_m>
    basis_reduced: StandardBasis # standard basis of <g, h>
    relative_dim: int            # dim <f>/<g, h>
    draws_tried: int


@dataclass(frozen=True)
class BranchReport:
    """Everything a run certifies, down to the draws it used."""

    nvars: int
    path: str                    # "general" | "fast" | "shortcut"
    half_branch_count: int
    degree_plus: int | None = None
    degree_minus: int | None = None
    flatness_gap: int | None = None
    even_order: int | None = None
    omega_coefficients: tuple | None = None
    curve_dim: CurveDimCertificate | None = None
    singular: SingularityCertificate | None = None
    reduction: ReductionResult | None = None
    basis_squared: StandardBasis | None = None
    relative_exponents: tuple | None = None   # staircase of <g,h> minus that of <g,h^2>
    algebra_dim_plus: int | None = None
    algebra_dim_minus: int | None = None
    seed: int = 0
    rank_at_origin: int | None = None


def _validate_system(fs):
    if not fs:
        raise PreconditionError("need at least one defining equation")
    n = fs[0].nvars
    for f in fs:
        if f.nvars != n:
            raise DimensionMismatchError("equations from different rings")
        if not f:
            raise PreconditionError("zero polynomials cannot define the germ")
        if f.constant_term():
            raise PreconditionError("every equation must vanish at the origin")
    return n


def rank_at_origin(fs):
    """Rank of the derivative matrix at 0 (exact)."""
    n = fs[0].nvars
    rows = []
    for f in fs:
        row = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            row.append(f.terms.get(tuple(e), Fraction(0)))
        rows.append(row)
    rank = 0
    col = 0
    m = [row[:] for row in rows]
    for col in range(n):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col] / m[rank][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def check_curve_dim(fs, config=GenericityConfig()):
    """Certify that the complex zero set has dimension at most one.

    Tries the coordinate forms (last variable first), then seeded random
    linear forms with doubling coefficient bound; succeeds on the first form
    whose adjunction gives a finite colength.
    """
    n = _validate_system(fs)
    candidates = []
    for i in range(n - 1, -1, -1):
        coeffs = [0] * n
        coeffs[i] = 1
        candidates.append(tuple(coeffs))
    rng = random.Random(f"{config.seed}:curve-dim")
    for attempt in range(config.retries):
        bound = config.bound << attempt
        while True:
            coeffs = tuple(rng.randint(-bound, bound) for _ in range(n))
            if any(coeffs):
                break
        candidates.append(coeffs)
    for coeffs in candidates:
        form = Polynomial(
            n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs) if c}
        )
        sb = standard_basis(list(fs) + [form], finite_hint=True)
        size = colength(sb.diagram)
        if size is not INFINITE:
            return CurveDimCertificate(coeffs, sb.diagram, size)
    raise CurveDimensionError(
        "no linear form certified dimension <= 1; the zero set likely has dimension >= 2"
    )


def check_isolated_singularity(fs, minor_size=None):
    """Certify the singular locus is at most the origin: the system together
    with its critical-rank minors must have finite colength."""
    n = _validate_system(fs)
    if minor_size is None:
        minor_size = n - 1
    minors = jacobian_minors(fs, minor_size) if minor_size <= len(fs) else []
    sb = standard_basis(list(fs) + minors, finite_hint=True)
    size = colength(sb.diagram)
    if size is INFINITE:
        raise IsolatedSingularityError(
            "the singularity is not isolated: the minors ideal has infinite colength"
        )
    return SingularityCertificate(minor_size, sb.diagram, size)


def _combine(fs, coefficients):
    n = fs[0].nvars
    out = Polynomial.zero(n)
    for c, f in zip(coefficients, fs):
        if c:
            out = out + f.scale(c)
    return out


def reduce_generic(fs, config=GenericityConfig(), basis_source=None):
    """Replace fs by n-1 combinations g plus a pivot h cutting the same germ.

    A draw is accepted when (i) the ideal of the g's and their critical
    minors has finite colength and (ii) <f>/<g, h> is finite-dimensional.
    User-supplied combinations are tried exactly once.
    """
    n = _validate_system(fs)
    m = len(fs)
    if basis_source is None:
        basis_source = standard_basis(list(fs))

    if config.matrix is not None or config.vector is not None:
        if config.matrix is None or config.vector is None:
            raise PreconditionError("supply both the matrix and the vector, or neither")
        matrix = tuple(tuple(Fraction(x) for x in row) for row in config.matrix)
        vector = tuple(Fraction(x) for x in config.vector)
        if len(matrix) != n - 1 or any(len(row) != m for row in matrix):
            raise PreconditionError(f"the matrix must be {n - 1} x {m}")
        if len(vector) != m:
            raise PreconditionError(f"the vector must have {m} entries")
        attempts = [(matrix, vector)]
    else:
        rng = random.Random(f"{config.seed}:reduction")
        attempts = []
        for attempt in range(config.retries):
            bound = config.bound << attempt
            matrix = []
            for _ in range(n - 1):
                while True:
                    row = tuple(rng.randint(-bound, bound) for _ in range(m))
                    if any(row):
                        break
                matrix.append(row)
            while True:
                vector = tuple(rng.randint(-bound, bound) for _ in range(m))
                if any(vector):
                    break
            attempts.append((tuple(matrix), vector))

    failures = []
    for tried, (matrix, vector) in enumerate(attempts, start=1):
        gs = [_combine(fs, row) for row in matrix]
        h = _combine(fs, vector)
        if any(not g for g in gs) or not h:
            failures.append("a drawn combination collapsed to zero")
            continue
        minors = jacobian_minors(gs, n - 1) if n - 1 <= len(gs) else []
        sb_ia = standard_basis(gs + minors, finite_hint=True)
        size = colength(sb_ia.diagram)
        if size is INFINITE:
            failures.append("combination curve is not an isolated singularity")
            continue
        sb_j1 = standard_basis(gs + [h])
        rel = quotient_dim(basis_source, sb_j1)
        if rel is INFINITE:
            failures.append("the combinations do not cut the same germ")
            continue
        return ReductionResult(
            tuple(gs), h, matrix, vector, sb_ia.diagram, size,
            basis_source, sb_j1, rel, tried,
        )

    if config.matrix is not None:
        raise PreconditionError(
            "the supplied combinations were rejected: " + "; ".join(failures)
        )
    raise GenericityError(
        f"no accepted reduction in {len(attempts)} draws", failures
    )


def flatness_gap(basis_reduced, basis_squared):
    """How deep the staircase of <g, h> reaches past that of <g, h^2>.

    1 + (largest degree in the staircase difference) - (smallest degree of a
    minimal generator surviving the difference); 1 when the two staircases
    coincide.
    """
    if not contains_ideal(basis_reduced, basis_squared.generators):
        raise NotSubidealError("<g, h^2> is not inside <g, h>")
    d1, d2 = basis_reduced.diagram, basis_squared.diagram
    if d1 == d2:
        return 1
    diff = staircase_difference(d1, d2)
    if diff is None:
        raise IsolatedSingularityError(
            "the staircase difference of <g,h> and <g,h^2> is infinite"
        )
    surviving = [a for a in d1.generators if not d2.contains(a)]
    if not surviving:
        raise InternalCertificateError(
            "staircases differ yet every minimal generator is covered"
        )
    return 1 + max(sum(b) for b in diff) - min(sum(a) for a in surviving)


def perturbation(nvars, order, coefficients=None):
    """The nonnegative, order-flat form  sum c_i x_i^order  (even order)."""
    if coefficients is None:
        coefficients = (1,) * nvars
    terms = {}
    for i, c in enumerate(coefficients):
        e = [0] * nvars
        e[i] = order
        terms[tuple(e)] = Fraction(c)
    return Polynomial(nvars, terms)


def build_maps(gs, h, order, coefficients=None):
    """The two candidate maps: Jacobian determinant of (h +/- omega, g) first,
    then the g's; rows of the determinant are ordered exactly that way."""
    n = gs[0].nvars if gs else h.nvars
    omega = perturbation(n, order, coefficients)
    plus_rows = [[(h + omega).derivative(i) for i in range(n)]] + [
        [g.derivative(i) for i in range(n)] for g in gs
    ]
    minus_rows = [[(h - omega).derivative(i) for i in range(n)]] + [
        [g.derivative(i) for i in range(n)] for g in gs
    ]
    h_plus = det(plus_rows)
    h_minus = det(minus_rows)
    return ([h_plus] + list(gs), [h_minus] + list(gs), omega)


def count_branches(fs, config=GenericityConfig()):
    """Number of real half-branches of the zero set of fs at the origin."""
    n = _validate_system(fs)
    rank = rank_at_origin(fs)
    if rank >= n - 1:
        if rank >= n:
            # n independent linear parts: the origin is an isolated real point
            return BranchReport(
                nvars=n, path="shortcut", half_branch_count=0,
                seed=config.seed, rank_at_origin=rank,
            )
        raise PreconditionError(
            "the derivative at the origin has rank n-1; this smooth-ambient case "
            "is outside the certified pipeline"
        )

    cert_dim = check_curve_dim(fs, config)
    cert_sing = check_isolated_singularity(fs)
    red = reduce_generic(fs, config)
    sb_j2 = standard_basis(list(red.combinations) + [red.pivot**2])
    gap = flatness_gap(red.basis_reduced, sb_j2)
    diff = staircase_difference(red.basis_reduced.diagram, sb_j2.diagram)

    rng = random.Random(f"{config.seed}:perturbation")
    if config.even_order is not None:
        ladder = [config.even_order]
    else:
        base = gap + 1 if gap % 2 else gap + 2  # smallest even integer > gap
        ladder = [base + 2 * j for j in range(config.retries)]
    failures = []
    for step, order in enumerate(ladder):
        coefficients = (
            (1,) * n if step == 0 else tuple(rng.randint(1, config.bound) for _ in range(n))
        )
        plus_map, minus_map, omega = build_maps(
            list(red.combinations), red.pivot, order, coefficients
        )
        try:
            algebra_plus = local_algebra(plus_map)
            algebra_minus = local_algebra(minus_map)
        except NonIsolatedZeroError as err:
            failures.append(f"order {order}: {err}")
            continue
        degree_plus = el_degree(plus_map, algebra_plus)
        degree_minus = el_degree(minus_map, algebra_minus)
        break
    else:
        if config.even_order is not None:
            raise PreconditionError(
                "the requested perturbation order leaves a perturbed map with a "
                "non-isolated complex zero: " + "; ".join(failures)
            )
        raise GenericityError(
            "no perturbation produced finite local algebras", failures
        )

    b0 = degree_plus - degree_minus
    if b0 < 0 or b0 % 2:
        raise InternalCertificateError(
            f"half-branch count {b0} is not an even nonnegative integer"
        )
    return BranchReport(
        nvars=n,
        path="general",
        half_branch_count=b0,
        degree_plus=degree_plus,
        degree_minus=degree_minus,
        flatness_gap=gap,
        even_order=order,
        omega_coefficients=coefficients,
        curve_dim=cert_dim,
        singular=cert_sing,
        reduction=red,
        basis_squared=sb_j2,
        relative_exponents=tuple(diff),
        algebra_dim_plus=algebra_plus.dim,
        algebra_dim_minus=algebra_minus.dim,
        seed=config.seed,
        rank_at_origin=rank,
    )


def count_branches_fast(fs, gs, config=GenericityConfig()):
    """Half-branch count as twice one local degree, for systems whose germ is
    already cut by the n-1 given combinations."""
    n = _validate_system(fs)
    if len(gs) != n - 1:
        raise PreconditionError(f"need exactly {n - 1} combinations")
    cert_sing = check_isolated_singularity(fs)
    check_isolated_singularity(gs)
    basis_f = standard_basis(list(fs))
    basis_g = standard_basis(list(gs))
    rel = quotient_dim(basis_f, basis_g)
    if rel is INFINITE:
        raise PreconditionError(
            "dim <f>/<g> is infinite; use the general path with a pivot h"
        )
    omega = perturbation(n, 2)
    rows = [[omega.derivative(i) for i in range(n)]] + [
        [g.derivative(i) for i in range(n)] for g in gs
    ]
    candidate = [det(rows)] + list(gs)
    try:
        algebra = local_algebra(candidate)
    except NonIsolatedZeroError as err:
        raise PreconditionError(
            f"the distance-squared perturbation is degenerate here ({err}); "
            "use the general path"
        ) from err
    degree = el_degree(candidate, algebra)
    return BranchReport(
        nvars=n,
        path="fast",
        half_branch_count=2 * degree,
        degree_plus=degree,
        singular=cert_sing,
        seed=config.seed,
    )
