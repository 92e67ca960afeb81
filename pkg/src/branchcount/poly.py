"""Sparse multivariate polynomials over Q under a degree-first local order.

Exponents are plain tuples of nonnegative ints.  Two exponents are compared
by total degree first, ties broken on the reversed tuple (last variable
first), ascending.  The order is a well-order compatible with addition, so
every nonzero polynomial has a well-defined *initial* term: the minimal one.
All local-ring computations in this package pivot on that term.

Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import DimensionMismatchError, ZeroInitialError


def order_key(alpha):
    """Sort key realizing the local order (ascending)."""
    return (sum(alpha), alpha[::-1])


def compare(alpha, beta):
    """Compare two exponent vectors under the local order: -1, 0 or 1."""
    if len(alpha) != len(beta):
        raise DimensionMismatchError(
            f"cannot compare exponents of lengths {len(alpha)} and {len(beta)}"
        )
    ka, kb = order_key(alpha), order_key(beta)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def _add(alpha, beta):
    return tuple(a + b for a, b in zip(alpha, beta))


class Polynomial:
    """A finitely supported map exponent -> nonzero Fraction, tagged with the
    ambient variable count.  Cross-ring arithmetic is an error, never an
    implicit embedding.
    """

    __slots__ = ("nvars", "terms", "_initial")

    def __init__(self, nvars, terms=()):
        if nvars < 1:
            raise DimensionMismatchError("a polynomial ring needs at least one variable")
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for exp, coeff in items:
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 or not isinstance(e, int) for e in exp):
                raise DimensionMismatchError(
                    f"exponent {exp} does not fit a ring in {nvars} variables"
                )
            coeff = Fraction(coeff)
            acc = clean.get(exp)
            coeff = coeff if acc is None else acc + coeff
            if coeff:
                clean[exp] = coeff
            elif exp in clean:
                del clean[exp]
        self.nvars = nvars
        self.terms = clean
        self._initial = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def monomial(cls, nvars, exponent, coeff=1):
        return cls(nvars, {tuple(exponent): Fraction(coeff)})

    @classmethod
    def variable(cls, nvars, index):
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    # -- structure ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        """The set of exponents with nonzero coefficient."""
        return set(self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def initial(self):
        """The order-minimal (exponent, coefficient) pair of a nonzero
        polynomial."""
        if not self.terms:
            raise ZeroInitialError("the zero polynomial has no initial term")
        if self._initial is None:
            exp = min(self.terms, key=order_key)
            self._initial = (exp, self.terms[exp])
        return self._initial

    def initial_exponent(self):
        return self.initial()[0]

    def degree(self):
        """Maximal total degree of the support; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self):
        """Total degree of the initial term (the vanishing order at 0)."""
        return sum(self.initial()[0])

    # -- arithmetic ---------------------------------------------------------

    def _same_ring(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatchError(
                f"mixing rings with {self.nvars} and {other.nvars} variables"
            )

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        self._same_ring(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            elif exp in terms:
                del terms[exp]
        return Polynomial(self.nvars, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def scale(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return Polynomial.zero(self.nvars)
        return Polynomial(self.nvars, {e: c * scalar for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._same_ring(other)
        if len(self.terms) > len(other.terms):
            long, short = self.terms, other.terms
        else:
            long, short = other.terms, self.terms
        terms = {}
        for e1, c1 in short.items():
            for e2, c2 in long.items():
                exp = _add(e1, e2)
                s = terms.get(exp, 0) + c1 * c2
                if s:
                    terms[exp] = s
                elif exp in terms:
                    del terms[exp]
        return Polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def derivative(self, index):
        """Partial derivative with respect to the index-th variable."""
        if not 0 <= index < self.nvars:
            raise DimensionMismatchError(f"no variable of index {index}")
        terms = {}
        for exp, c in self.terms.items():
            k = exp[index]
            if k:
                e = list(exp)
                e[index] = k - 1
                terms[tuple(e)] = c * k
        return Polynomial(self.nvars, terms)

    def remap_variables(self, new_nvars, index_map):
        """Send variable i to variable index_map[i] of a new ring.

        The map need not be injective; exponents of merged variables add, so
        this also performs substitutions like y := x.
        """
        if len(index_map) != self.nvars:
            raise DimensionMismatchError("index map must cover every variable")
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * new_nvars
            for i, e in enumerate(exp):
                new[index_map[i]] += e
            key = tuple(new)
            s = terms.get(key, 0) + c
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
        return Polynomial(new_nvars, terms)

    def evaluate(self, point):
        """Evaluate at a point given as a sequence (exact if the inputs are)."""
        if len(point) != self.nvars:
            raise DimensionMismatchError("point length does not match the ring")
        total = 0
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v *= x**e
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exp in sorted(self.terms, key=order_key):
            c = self.terms[exp]
            mono = "*".join(
                f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(exp) if e
            )
            if mono:
                parts.append(mono if c == 1 else f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


def det(matrix):
    """Determinant of a square matrix of polynomials.

    Row-by-row expansion over column subsets, with the sign of each partial
    permutation tracked by inversion count; entries equal to zero are never
    multiplied.
    """
    size = len(matrix)
    if size == 0:
        raise ValueError("determinant of an empty matrix needs a ring to live in")
    nvars = matrix[0][0].nvars
    for row in matrix:
        if len(row) != size:
            raise ValueError("matrix is not square")
    states = {(): Polynomial.constant(nvars, 1)}
    for row in matrix:
        new = {}
        for used, acc in states.items():
            for col in range(size):
                if col in used:
                    continue
                entry = row[col]
                if not entry:
                    continue
                inversions = sum(1 for u in used if u > col)
                piece = acc * entry
                if inversions & 1:
                    piece = -piece
                key = tuple(sorted(used + (col,)))
                prev = new.get(key)
                new[key] = piece if prev is None else prev + piece
        states = new
        if not states:
            return Polynomial.zero(nvars)
    return states.get(tuple(range(size)), Polynomial.zero(nvars))


def jacobian_matrix(fs):
    """Rows indexed by variables, columns by functions: M[i][j] = d f_j / d x_i."""
    if not fs:
        raise ValueError("need at least one polynomial")
    n = fs[0].nvars
    for f in fs:
        if f.nvars != n:
            raise DimensionMismatchError("jacobian of polynomials from different rings")
    return [[f.derivative(i) for f in fs] for i in range(n)]


def jacobian_minors(fs, k):
    """All k x k minors of the Jacobian matrix of fs.

    Rows are variables, columns are functions; the enumeration runs
    lexicographically over (row subset, column subset), so the output order
    is reproducible.  k = 0 yields the single empty minor 1.
    """
    if not fs:
        raise ValueError("need at least one polynomial")
    n = fs[0].nvars
    m = len(fs)
    if k < 0 or k > min(n, m):
        raise ValueError(f"minor size {k} out of range for a {n} x {m} jacobian")
    if k == 0:
        return [Polynomial.constant(n, 1)]
    mat = jacobian_matrix(fs)
    minors = []
    for rows in combinations(range(n), k):
        for cols in combinations(range(m), k):
            minors.append(det([[mat[r][c] for c in cols] for r in rows]))
    return minors
