"""Finite local algebras and the local topological degree as a signature.

For a polynomial map F = (F_1 .. F_n) with an isolated complex zero at the
origin, the quotient by <F> is a finite-dimensional algebra with the monomial
complement of the staircase as basis.  The local degree of F is the signature
of the symmetric form (a, b) -> phi(a * b) for any linear functional phi that
is positive on the residue class of det DF; the signature is extracted by
exact congruence diagonalization over the rationals.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from .errors import (
    DegenerateJacobianError,
    DimensionMismatchError,
    InternalCertificateError,
    NonIsolatedZeroError,
)
from .poly import det, jacobian_matrix, order_key
from .staircase import basis_under_staircase, standard_basis


class LocalAlgebra:
    """The quotient of the local ring by <F>, with a monomial basis.

    `dim` is the colength; powers of the maximal ideal from `dim` on land in
    the ideal, and already from `trunc_degree` on (one more than the largest
    basis-monomial degree), which is the bound division actually truncates at.
    """

    __slots__ = (
        "maps",
        "nvars",
        "sb",
        "diagram",
        "basis",
        "dim",
        "nilpotency_bound",
        "trunc_degree",
        "_index",
        "_products",
    )

    def __init__(self, maps, sb):
        self.maps = tuple(maps)
        self.nvars = sb.nvars
        self.sb = sb
        self.diagram = sb.diagram
        self.basis = basis_under_staircase(sb.diagram)
        self.dim = len(self.basis)
        self.nilpotency_bound = self.dim
        self.trunc_degree = 1 + max((sum(e) for e in self.basis), default=-1)
        self._index = {e: i for i, e in enumerate(self.basis)}
        self._products = {}

    # -- normal forms --------------------------------------------------------

    def normal_form_terms(self, terms):
        """Coordinates over the monomial basis of a term dict's residue class.

        Division truncated at trunc_degree: every term of that degree or more
        is itself in the ideal, so dropping it is exact.  The remaining
        reductions run over finitely many exponents, hence no unit appears.
        """
        bound = self.trunc_degree
        gens = self.sb.engine_gens()
        work = {}
        heap = []
        for e, c in terms.items():
            if sum(e) >= bound:
                continue
            cur = work.get(e)
            c = Fraction(c) if cur is None else cur + c
            if c:
                work[e] = c
                heapq.heappush(heap, (order_key(e), e))
            elif e in work:
                del work[e]
        coords = [Fraction(0)] * self.dim
        while heap:
            _, e = heapq.heappop(heap)
            c = work.pop(e, None)
            if not c:
                continue
            slot = self._index.get(e)
            if slot is not None:
                coords[slot] = c
                continue
            red = None
            for g in gens:
                ok = True
                for a, b in zip(g.nu, e):
                    if a > b:
                        ok = False
                        break
                if ok:
                    red = g
                    break
            if red is None:
                raise InternalCertificateError(
                    f"exponent {e} is neither a basis monomial nor reducible"
                )
            shift = tuple(a - b for a, b in zip(e, red.nu))
            m = c / red.lc
            for ge, gc in red.terms.items():
                ne = tuple(a + b for a, b in zip(ge, shift))
                if ne == e or sum(ne) >= bound:
                    continue
                cur = work.get(ne)
                if cur is None:
                    work[ne] = -m * gc
                    heapq.heappush(heap, (order_key(ne), ne))
                else:
                    v = cur - m * gc
                    if v:
                        work[ne] = v
                    else:
                        del work[ne]
        return coords

    def normal_form(self, f):
        """Coordinates of the residue class of a polynomial."""
        if f.nvars != self.nvars:
            raise DimensionMismatchError("polynomial from a different ring")
        return self.normal_form_terms(f.terms)

    def product_coords(self, i, j):
        """Coordinates of basis[i] * basis[j] (cached)."""
        if i > j:
            i, j = j, i
        got = self._products.get((i, j))
        if got is None:
            exp = tuple(a + b for a, b in zip(self.basis[i], self.basis[j]))
            got = self.normal_form_terms({exp: Fraction(1)})
            self._products[(i, j)] = got
        return got

    def functional_values(self, index, sign=1):
        """phi(residue of x^gamma) for every gamma below the truncation
        degree, where phi is the sign-corrected coordinate at basis[index].

        Computed by the backward recurrence the basis relations impose: for
        g in the basis and x^gamma = x^nu(g) * x^delta, the residue of
        x^delta * g vanishes, so phi at gamma is a combination of phi at the
        strictly later exponents nu(tail) + delta.  Exponents outside the
        staircase are basis monomials with known phi; everything at or above
        the truncation degree is zero.  One pass in descending order settles
        the whole table without any multiplication matrices.
        """
        bound = self.trunc_degree
        gens = self.sb.engine_gens()
        target = self.basis[index]
        sign = Fraction(sign)

        levels = [[] for _ in range(bound)]

        def fill(prefix, left):
            if len(prefix) == self.nvars - 1:
                for last in range(left + 1):
                    e = prefix + (last,)
                    levels[sum(e)].append(e)
                return
            for v in range(left + 1):
                fill(prefix + (v,), left - v)

        if bound > 0:
            fill((), bound - 1)
        values = {}
        for level in reversed(levels):
            for e in sorted(level, key=order_key, reverse=True):
                slot = self._index.get(e)
                if slot is not None:
                    values[e] = sign if e == target else Fraction(0)
                    continue
                red = None
                red_size = None
                for g in gens:
                    ok = True
                    for a, b in zip(g.nu, e):
                        if a > b:
                            ok = False
                            break
                    if ok and (red is None or len(g.terms) < red_size):
                        red, red_size = g, len(g.terms)
                if red is None:
                    raise InternalCertificateError(
                        f"exponent {e} is neither a basis monomial nor reducible"
                    )
                total = Fraction(0)
                nu = red.nu
                for ge, gc in red.terms.items():
                    if ge == nu:
                        continue
                    ne = tuple(a + b - d for a, b, d in zip(ge, e, nu))
                    if sum(ne) >= bound:
                        continue
                    v = values[ne]
                    if v:
                        total += gc * v
                values[e] = -total / red.lc
        return values


def local_algebra(maps):
    """Build the local algebra of a map with an isolated complex zero.

    Raises NonIsolatedZeroError when the colength is infinite, which is the
    machine check that the complex zero set of the map is the origin alone.
    """
    maps = list(maps)
    if not maps:
        raise DimensionMismatchError("a local algebra needs at least one map component")
    n = maps[0].nvars
    if len(maps) != n:
        raise DimensionMismatchError(
            f"need exactly {n} map components in {n} variables, got {len(maps)}"
        )
    sb = standard_basis(maps, nvars=n, finite_hint=True)
    if any(b is None for b in sb.diagram.axis_bounds()):
        raise NonIsolatedZeroError(
            "the ideal of the map components has infinite colength: "
            "the complex zero at the origin is not isolated"
        )
    return LocalAlgebra(maps, sb)


def normal_form(f, algebra):
    return algebra.normal_form(f)


class BilinearForm:
    """The intersection form phi(a*b) on a local algebra, with the functional
    recorded as a sign-corrected coordinate projection."""

    __slots__ = ("matrix", "phi_index", "phi_sign")

    def __init__(self, matrix, phi_index, phi_sign):
        self.matrix = matrix
        self.phi_index = phi_index
        self.phi_sign = phi_sign


def signature(matrix):
    """Inertia (p, q) of a symmetric rational matrix by exact congruence
    diagonalization; p + q is the rank.

    A zero diagonal pivot meeting a nonzero off-diagonal entry is resolved by
    the standard row-and-column addition, which splits the hyperbolic plane
    into one positive and one negative square.
    """
    d = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    for i in range(d):
        if len(m[i]) != d:
            raise ValueError("matrix is not square")
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    p = q = 0
    for k in range(d):
        if not m[k][k]:
            swap = next((j for j in range(k + 1, d) if m[j][j]), None)
            if swap is not None:
                m[k], m[swap] = m[swap], m[k]
                for row in m:
                    row[k], row[swap] = row[swap], row[k]
            else:
                other = next((j for j in range(k + 1, d) if m[k][j]), None)
                if other is None:
                    continue
                for j in range(d):
                    m[k][j] += m[other][j]
                for row in m:
                    row[k] += row[other]
        pivot = m[k][k]
        if not pivot:
            continue
        if pivot > 0:
            p += 1
        else:
            q += 1
        factors = [m[i][k] / pivot for i in range(k + 1, d)]
        for i in range(k + 1, d):
            fi = factors[i - k - 1]
            if not fi:
                continue
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, d):
                row_i[j] -= fi * row_k[j]
        for i in range(k + 1, d):
            m[i][k] = Fraction(0)
            m[k][i] = Fraction(0)
    return p, q


def eisenbud_levine_form(algebra, phi_index=None):
    """The symmetric form phi(e_i e_j) for a functional positive on det DF.

    By default phi projects onto the order-largest basis monomial carrying a
    nonzero coordinate of the residue of det DF, sign-corrected; any other
    admissible index gives a congruent form (same signature), which callers
    may request explicitly to exercise that invariance.  The matrix entries
    are read off the functional-value table: phi(e_i e_j) only depends on
    the product exponent.
    """
    jac = det(jacobian_matrix(list(algebra.maps)))
    coords = algebra.normal_form(jac)
    admissible = [i for i, c in enumerate(coords) if c]
    if not admissible:
        raise DegenerateJacobianError(
            "the Jacobian determinant vanishes in the local algebra"
        )
    if phi_index is None:
        phi_index = admissible[-1]
    elif not coords[phi_index]:
        raise ValueError(f"coordinate {phi_index} does not see the Jacobian residue")
    sign = 1 if coords[phi_index] > 0 else -1
    d = algebra.dim
    bound = algebra.trunc_degree
    values = algebra.functional_values(phi_index, sign)
    zero = Fraction(0)
    matrix = [[zero] * d for _ in range(d)]
    basis = algebra.basis
    for i in range(d):
        bi = basis[i]
        row = matrix[i]
        for j in range(i, d):
            exp = tuple(a + b for a, b in zip(bi, basis[j]))
            if sum(exp) < bound:
                v = values[exp]
            else:
                v = zero
            row[j] = v
            matrix[j][i] = v
    return BilinearForm(matrix, phi_index, sign)


def el_degree(maps, algebra=None, phi_index=None):
    """Local topological degree at the origin of a polynomial map germ.

    The precondition (isolated complex zero) is checked by the local-algebra
    construction; a singular intersection form afterwards is a bug trap, not
    an input verdict.
    """
    if algebra is None:
        algebra = local_algebra(maps)
    if algebra.dim == 0:
        # the ideal is the whole ring: no complex zero at the origin at all
        return 0
    form = eisenbud_levine_form(algebra, phi_index)
    p, q = signature(form.matrix)
    if p + q != algebra.dim:
        raise InternalCertificateError(
            "the intersection form is degenerate on a finite local algebra"
        )
    return p - q
