"""Standard bases in the local ring: staircases, division, colengths.

The completion is Buchberger-style, driven by the ecart-guided weak normal
form that keeps division terminating under the local order: when the chosen
reducer has larger ecart than the current polynomial, a snapshot of the
current polynomial joins the reducer pool.  Reductions against snapshots are
what introduce the unit multiplier of local division; the unit (and, on
request, the quotients) are tracked exactly.

All certificates produced here are exact: finiteness of a staircase
complement is decided combinatorially from the minimal generators, never by
enumeration with a cutoff.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

from .errors import (
    DimensionMismatchError,
    InternalCertificateError,
    NotSubidealError,
)
from .poly import Polynomial, order_key

INFINITE = float("inf")


# ---------------------------------------------------------------------------
# staircases


def minimal_antichain(exponents):
    """The unique minimal generating set of the upper set spanned by
    `exponents`, sorted ascending under the local order."""
    exps = sorted(set(map(tuple, exponents)), key=order_key)
    kept = []
    for e in exps:
        # a strict divisor has strictly smaller degree, hence comes earlier
        if not any(all(b <= a for b, a in zip(k, e)) for k in kept):
            kept.append(e)
    return tuple(kept)


class Diagram:
    """A staircase of initial exponents, stored by its minimal generators."""

    __slots__ = ("nvars", "generators")

    def __init__(self, nvars, exponents):
        self.nvars = nvars
        self.generators = minimal_antichain(exponents)
        for g in self.generators:
            if len(g) != nvars:
                raise DimensionMismatchError(
                    f"exponent {g} does not fit a staircase in {nvars} variables"
                )

    def contains(self, exponent):
        return any(all(b <= a for b, a in zip(g, exponent)) for g in self.generators)

    def axis_bounds(self):
        """Per axis, the least pure-power exponent present, or None.

        The complement is finite exactly when every axis carries a pure
        power; the bounds then box the complement.
        """
        bounds = []
        for i in range(self.nvars):
            best = None
            for g in self.generators:
                if all(e == 0 for j, e in enumerate(g) if j != i):
                    best = g[i] if best is None else min(best, g[i])
            bounds.append(best)
        return bounds

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.nvars == other.nvars and self.generators == other.generators

    def __hash__(self):
        return hash((self.nvars, self.generators))

    def __repr__(self):
        return f"Diagram({self.nvars}, {list(self.generators)})"


def colength(diagram):
    """Number of lattice points outside the staircase, or INFINITE."""
    points = _complement(diagram)
    return INFINITE if points is None else len(points)


def basis_under_staircase(diagram):
    """All exponents outside the staircase, ascending under the local order.

    Raises when the complement is infinite.
    """
    points = _complement(diagram)
    if points is None:
        raise ValueError("the staircase complement is infinite")
    return points


def _complement(diagram):
    bounds = diagram.axis_bounds()
    if any(b is None for b in bounds):
        return None
    n = diagram.nvars
    out = []
    prefix = []

    def walk():
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        pad = (0,) * (n - 1 - i)
        for v in range(bounds[i]):
            prefix.append(v)
            if not diagram.contains(tuple(prefix) + pad):
                walk()
            prefix.pop()

    walk()
    return sorted(out, key=order_key)


def staircase_difference(outer, inner):
    """Exponents of the outer staircase missing from the inner one, sorted
    ascending; None when that set is infinite.

    Finiteness is decided per outer corner: the inner staircase translated to
    the corner must still carry a pure power on every axis.
    """
    if outer.nvars != inner.nvars:
        raise DimensionMismatchError("staircases of different rings")
    n = outer.nvars
    if not outer.generators:
        return []
    bounds = [0] * n
    for corner in outer.generators:
        shifted = Diagram(
            n,
            [tuple(max(b - c, 0) for b, c in zip(g, corner)) for g in inner.generators],
        )
        local = shifted.axis_bounds()
        if any(b is None for b in local):
            return None
        bounds = [max(m, c + b) for m, c, b in zip(bounds, corner, local)]

    out = []
    prefix = []

    def walk():
        i = len(prefix)
        if i == n:
            p = tuple(prefix)
            if outer.contains(p):
                out.append(p)
            return
        pad = (0,) * (n - 1 - i)
        for v in range(bounds[i]):
            prefix.append(v)
            # once inside the inner staircase, every completion stays inside
            if not inner.contains(tuple(prefix) + pad):
                walk()
            prefix.pop()

    walk()
    return sorted(out, key=order_key)


# ---------------------------------------------------------------------------
# the division engine (integer reducers, exact rational workspace)


class _Gen:
    __slots__ = ("nu", "lc", "terms", "ecart", "index")

    def __init__(self, terms, index):
        self.terms = terms
        self.nu = min(terms, key=order_key)
        self.lc = terms[self.nu]
        self.ecart = max(sum(e) for e in terms) - sum(self.nu)
        self.index = index


class _Stored:
    __slots__ = ("nu", "lc", "terms", "ecart", "unit", "quots")

    def __init__(self, terms, unit, quots):
        self.terms = terms
        self.nu = min(terms, key=order_key)
        self.lc = terms[self.nu]
        self.ecart = max(sum(e) for e in terms) - sum(self.nu)
        self.unit = unit
        self.quots = quots


def _int_terms(poly):
    """Clear denominators; returns (dict exp -> int, multiplier used)."""
    den = 1
    for c in poly.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {e: int(c * den) for e, c in poly.terms.items()}, den


def _primitive(terms):
    """Divide an integer term dict by its content, initial coefficient > 0."""
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    if g == 0:
        return {}
    nu = min(terms, key=order_key)
    if terms[nu] < 0:
        g = -g
    return {e: c // g for e, c in terms.items()}


def _rational_to_primitive(terms):
    den = 1
    for c in terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return _primitive({e: int(c * den) for e, c in terms.items()})


def _dict_addmul(dst, src, coeff, shift):
    """dst += coeff * x^shift * src, in place, dropping zeros."""
    for e, c in src.items():
        ne = tuple(a + b for a, b in zip(e, shift))
        cur = dst.get(ne)
        if cur is None:
            dst[ne] = coeff * c
        else:
            v = cur + coeff * c
            if v:
                dst[ne] = v
            else:
                del dst[ne]


class _Work:
    """Mutable polynomial under reduction: lazy min-heap over the order and a
    lazy max-heap over total degree."""

    __slots__ = ("terms", "heap", "degheap")

    def __init__(self, terms):
        self.terms = terms
        self.heap = [(order_key(e), e) for e in terms]
        heapq.heapify(self.heap)
        self.degheap = [(-sum(e), e) for e in terms]
        heapq.heapify(self.degheap)

    def min_exponent(self):
        heap = self.heap
        terms = self.terms
        while heap:
            e = heap[0][1]
            if e in terms:
                return e
            heapq.heappop(heap)
        return None

    def max_degree(self):
        degheap = self.degheap
        terms = self.terms
        while degheap:
            d, e = degheap[0]
            if e in terms:
                return -d
            heapq.heappop(degheap)
        return -1

    def add_scaled(self, src, coeff, shift, trunc=None):
        terms = self.terms
        heap = self.heap
        degheap = self.degheap
        for e, c in src.items():
            ne = tuple(a + b for a, b in zip(e, shift))
            cur = terms.get(ne)
            if cur is None:
                deg = sum(ne)
                if trunc is not None and deg >= trunc:
                    continue
                terms[ne] = coeff * c
                heapq.heappush(heap, ((deg, ne[::-1]), ne))
                heapq.heappush(degheap, (-deg, ne))
            else:
                v = cur + coeff * c
                if v:
                    terms[ne] = v
                else:
                    del terms[ne]


def _weak_reduce_int(f_terms, gens, trunc):
    """Lead-only local division below a certified truncation degree, over the
    integers: instead of dividing by the reducer's initial coefficient the
    working polynomial is rescaled, and content is stripped each step.

    Tails stay unreduced on purpose: fully reduced elements of these ideals
    can carry astronomically large rational coefficients, while the leads,
    which are all completion needs, stay cheap.  The result is correct up to
    a positive scalar.
    """
    terms = {}
    for e, c in f_terms.items():
        if sum(e) < trunc:
            terms[e] = c
    heap = [((sum(e), e[::-1]), e) for e in terms]
    heapq.heapify(heap)

    while heap:
        e = heap[0][1]
        c = terms.get(e)
        if not c:
            heapq.heappop(heap)
            continue
        red = None
        red_key = None
        for g in gens:
            ok = True
            for a, b in zip(g.nu, e):
                if a > b:
                    ok = False
                    break
            if ok:
                size = len(g.terms)
                if red is None or size < red_key:
                    red, red_key = g, size
        if red is None:
            break
        lc = red.lc
        r = gcd(c, lc)
        scale = lc // r
        mult = c // r
        if scale < 0:
            scale = -scale
            mult = -mult
        if scale != 1:
            for k in terms:
                terms[k] *= scale
        nu = red.nu
        for ge, gc in red.terms.items():
            ne = tuple(a + b - d for a, b, d in zip(ge, e, nu))
            deg = sum(ne)
            if deg >= trunc:
                continue
            cur = terms.get(ne)
            if cur is None:
                terms[ne] = -mult * gc
                heapq.heappush(heap, ((deg, ne[::-1]), ne))
            else:
                v = cur - mult * gc
                if v:
                    terms[ne] = v
                else:
                    del terms[ne]
        content = 0
        for v in terms.values():
            content = gcd(content, v)
            if content == 1:
                break
        if content > 1:
            for k in terms:
                terms[k] //= content

    return terms


def _nf_truncated(f_terms, gens, *, total, trunc):
    """Plain local division below a certified truncation degree.

    Every term of degree >= trunc lies in the ideal, so it is dropped; the
    minimal reducible exponent then increases strictly inside a finite set,
    and division terminates with no ecart bookkeeping at all.  Coefficients
    are exact rationals; each step touches only the reducer's support.
    """
    terms = {}
    for e, c in f_terms.items():
        if sum(e) < trunc:
            terms[e] = Fraction(c)
    heap = [((sum(e), e[::-1]), e) for e in terms]
    heapq.heapify(heap)
    out = {}

    while heap:
        key, e = heapq.heappop(heap)
        c = terms.pop(e, None)
        if not c:
            continue
        red = None
        red_size = None
        for g in gens:
            ok = True
            for a, b in zip(g.nu, e):
                if a > b:
                    ok = False
                    break
            if ok:
                size = len(g.terms)
                if red is None or size < red_size:
                    red, red_size = g, size
        if red is None:
            if total:
                out[e] = c
                continue
            terms[e] = c
            break

        mult = c / red.lc
        nu = red.nu
        for ge, gc in red.terms.items():
            if ge == nu:
                continue  # the lead contribution cancelled the popped term
            ne = tuple(a + b - d for a, b, d in zip(ge, e, nu))
            deg = sum(ne)
            if deg >= trunc:
                continue
            cur = terms.get(ne)
            if cur is None:
                terms[ne] = -mult * gc
                heapq.heappush(heap, ((deg, ne[::-1]), ne))
            else:
                v = cur - mult * gc
                if v:
                    terms[ne] = v
                else:
                    del terms[ne]

    out.update(terms)
    return out, 1, 1


def _nf_untracked(f_terms, gens, *, total, trunc):
    """Integer pseudo-reduction: instead of dividing by the reducer's initial
    coefficient, the whole working polynomial is rescaled by it, and the
    content is stripped periodically.  Every intermediate is an integer
    multiple of the exact one, so the result is the normal form up to a
    positive rational scalar: all completion and membership need.

    Dispatches to the simple truncated division whenever a truncation degree
    is certified; the ecart-and-snapshot machinery below is only needed while
    no finite colength is known yet.
    """
    if trunc is not None:
        if not total:
            return _weak_reduce_int(f_terms, gens, trunc)
        return _nf_truncated(f_terms, gens, total=total, trunc=trunc)[0]
    terms = dict(f_terms)
    heap = [((sum(e), e[::-1]), e) for e in terms]
    heapq.heapify(heap)
    degheap = [(-sum(e), e) for e in terms]
    heapq.heapify(degheap)
    frozen = {}
    stored = []
    steps = 0

    while True:
        sigma = None
        while heap:
            e = heap[0][1]
            if e not in terms:
                heapq.heappop(heap)
                continue
            reducible = False
            for g in gens:
                hit = True
                for a, b in zip(g.nu, e):
                    if a > b:
                        hit = False
                        break
                if hit:
                    reducible = True
                    break
            if reducible:
                sigma = e
                break
            if not total:
                break
            frozen[e] = terms.pop(e)
            heapq.heappop(heap)
        if sigma is None:
            break

        best = None
        for g in gens:
            ok = True
            for a, b in zip(g.nu, sigma):
                if a > b:
                    ok = False
                    break
            if ok and (best is None or (g.ecart, 0, g.index) < best[:3]):
                best = (g.ecart, 0, g.index, g)
        for j, s in enumerate(stored):
            ok = True
            for a, b in zip(s.nu, sigma):
                if a > b:
                    ok = False
                    break
            if ok and (s.ecart, 1, j) < best[:3]:
                best = (s.ecart, 1, j, s)
        red = best[3]

        while degheap and degheap[0][1] not in terms:
            heapq.heappop(degheap)
        maxdeg = -degheap[0][0] if degheap else 0
        if best[0] > maxdeg - sum(sigma):
            snap = dict(frozen)
            snap.update(terms)
            stored.append(_Gen(_primitive(snap), -1))

        c = terms[sigma]
        lc = red.lc
        r = gcd(c, lc)
        scale = lc // r
        mult = c // r
        if scale < 0:
            scale = -scale
            mult = -mult
        if scale != 1:
            for k in terms:
                terms[k] *= scale
            for k in frozen:
                frozen[k] *= scale
        delta = tuple(a - b for a, b in zip(sigma, red.nu))
        rterms = red.terms
        for e, gc in rterms.items():
            ne = tuple(a + b for a, b in zip(e, delta))
            cur = terms.get(ne)
            if cur is None:
                deg = sum(ne)
                if trunc is not None and deg >= trunc:
                    continue
                terms[ne] = -mult * gc
                heapq.heappush(heap, ((deg, ne[::-1]), ne))
                heapq.heappush(degheap, (-deg, ne))
            else:
                v = cur - mult * gc
                if v:
                    terms[ne] = v
                else:
                    del terms[ne]
        steps += 1
        if not steps & 15 or c.bit_length() > 2048:
            content = 0
            for v in terms.values():
                content = gcd(content, v)
                if content == 1:
                    break
            if content != 1:
                for v in frozen.values():
                    content = gcd(content, v)
                    if content == 1:
                        break
            if content > 1:
                for k in terms:
                    terms[k] //= content
                for k in frozen:
                    frozen[k] //= content

    frozen.update(terms)
    return frozen


def _normal_form(f_terms, gens, *, total, track_unit=False, track_quotients=False,
                 nvars=None, unit_seed=1, trunc=None):
    """Ecart-guided local division of `f_terms` by the reducers `gens`.

    With total=False this is the weak normal form: it stops as soon as the
    minimal term is not divisible by any reducer initial.  With total=True
    irreducible minimal terms are frozen and division continues behind them,
    so the result has its entire support outside the reducers' staircase.

    `trunc`, when given, must be a degree such that every term of that degree
    or more is already known to lie in the ideal of the reducers (in the
    power-series sense); such terms are dropped exactly.  Truncation is
    incompatible with unit or quotient tracking.

    Returns (remainder dict, unit dict or None, quotient dicts or None),
    satisfying  unit * f = sum q_i g_i + r  when tracking.  Without tracking
    the remainder is integer-valued and correct up to a positive rational
    scalar, which is all completion and membership need.
    """
    if not (track_unit or track_quotients):
        return _nf_untracked(f_terms, gens, total=total, trunc=trunc), None, None
    if trunc is not None:
        raise InternalCertificateError("truncated division cannot track certificates")
    work = _Work({e: Fraction(c) for e, c in f_terms.items()})
    zero_exp = (0,) * nvars if nvars is not None else None
    unit = None
    if track_unit:
        unit = {zero_exp: Fraction(unit_seed)}
    quots = [dict() for _ in gens] if track_quotients else None
    stored = []
    frozen = {}

    while True:
        sigma = None
        while True:
            e = work.min_exponent()
            if e is None:
                break
            reducible = False
            for g in gens:
                hit = True
                for a, b in zip(g.nu, e):
                    if a > b:
                        hit = False
                        break
                if hit:
                    reducible = True
                    break
            if reducible:
                sigma = e
                break
            if not total:
                break
            frozen[e] = work.terms.pop(e)
        if sigma is None:
            break

        best = None
        for g in gens:
            ok = True
            for a, b in zip(g.nu, sigma):
                if a > b:
                    ok = False
                    break
            if ok and (best is None or (g.ecart, 0, g.index) < best[:3]):
                best = (g.ecart, 0, g.index, g)
        for j, s in enumerate(stored):
            ok = True
            for a, b in zip(s.nu, sigma):
                if a > b:
                    ok = False
                    break
            if ok and (s.ecart, 1, j) < best[:3]:
                best = (s.ecart, 1, j, s)
        red = best[3]

        ecart_here = work.max_degree() - sum(sigma)
        if best[0] > ecart_here:
            snap = dict(frozen)
            snap.update(work.terms)
            stored.append(
                _Stored(
                    snap,
                    dict(unit) if track_unit else None,
                    [dict(q) for q in quots] if track_quotients else None,
                )
            )

        m = work.terms[sigma] / red.lc
        delta = tuple(a - b for a, b in zip(sigma, red.nu))
        work.add_scaled(red.terms, -m, delta, trunc)
        if best[1] == 0:
            if track_quotients:
                _dict_addmul(quots[red.index], {zero_exp: 1}, m, delta)
        else:
            if track_unit:
                _dict_addmul(unit, red.unit, -m, delta)
            if track_quotients:
                for i, q in enumerate(red.quots):
                    _dict_addmul(quots[i], q, -m, delta)

    remainder = frozen
    remainder.update(work.terms)
    if track_unit and not unit.get(zero_exp):
        raise InternalCertificateError("division produced a non-unit multiplier")
    return remainder, unit, quots


# ---------------------------------------------------------------------------
# the homogeneous completion (Lazard's route)
#
# The local completion a la Mora wanders: reduction chains climb in degree
# with no bound, exploding coefficients.  Instead, homogenize the generators
# with a fresh first variable t and run Buchberger under the global order
#
#     t^a x^alpha  >  t^b x^beta
#       iff  (total degree, a, reversed-x read ascending) is larger,
#
# chosen so the leading (largest) term of the homogenization of f carries
# exactly the initial exponent of f.  For homogeneous input every reduction
# stays inside one degree, division (with full tail reduction) terminates on
# its own, and dehomogenizing the resulting basis at t = 1 yields a standard
# basis of the local ideal: for any polynomial combination f of the
# generators, some t-power multiple of its homogenization lies in the
# homogenized ideal, so its lead is divisible by a basis lead, and on x-parts
# that is exactly the staircase membership of the initial exponent of f.


def _hmax_key(m):
    """Heap key whose minimum is the largest monomial under the global order."""
    return (-sum(m), -m[0], m[:0:-1])


class _HGen:
    __slots__ = ("lead", "lc", "terms", "size", "index")

    def __init__(self, terms, index):
        self.terms = terms
        self.lead = min(terms, key=_hmax_key)
        self.lc = terms[self.lead]
        self.size = len(terms)
        self.index = index


def _h_reduce(terms, gens, xcut=None):
    """Full homogeneous reduction (lead and tails) by integer pseudo-division;
    the result is reduced against every generator, up to a positive scalar.

    With `xcut` given, terms whose x-part has degree >= xcut are dropped:
    that is reduction by the implicit pure monomials of that degree, which
    are certified members of the ideal being completed.
    """
    if xcut is None:
        work = dict(terms)
    else:
        work = {m: c for m, c in terms.items() if sum(m) - m[0] < xcut}
    heap = [(_hmax_key(m), m) for m in work]
    heapq.heapify(heap)
    out = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if not c:
            continue
        red = None
        for g in gens:
            lead = g.lead
            ok = True
            for a, b in zip(lead, m):
                if a > b:
                    ok = False
                    break
            if ok and (red is None or g.size < red.size):
                red = g
        if red is None:
            out[m] = c
            continue
        lc = red.lc
        r = gcd(c, lc)
        scale = lc // r
        mult = c // r
        if scale < 0:
            scale = -scale
            mult = -mult
        if scale != 1:
            for k in work:
                work[k] *= scale
            for k in out:
                out[k] *= scale
        lead = red.lead
        for ge, gc in red.terms.items():
            if ge == lead:
                continue
            ne = tuple(a + b - d for a, b, d in zip(ge, m, lead))
            cur = work.get(ne)
            if cur is None:
                if xcut is not None and sum(ne) - ne[0] >= xcut:
                    continue
                work[ne] = -mult * gc
                heapq.heappush(heap, (_hmax_key(ne), ne))
            else:
                v = cur - mult * gc
                if v:
                    work[ne] = v
                else:
                    del work[ne]
        content = 0
        for v in work.values():
            content = gcd(content, v)
            if content == 1:
                break
        if content != 1:
            for v in out.values():
                content = gcd(content, v)
                if content == 1:
                    break
        if content > 1:
            for k in work:
                work[k] //= content
            for k in out:
                out[k] //= content
    return out


def _level_monomials(nvars, degree):
    """All exponents in `nvars` variables of the given total degree."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree + 1):
        for rest in _level_monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def _hom_basis(int_polys, nvars, xcut=None):
    """Buchberger completion of the homogenized generators; returns the pair
    (basis term dicts over n+1 variables with t first, final x-degree cut).

    Three exact accelerations tame the torsion the homogenization brings in:

    * every new element is divided by its common t-power (its value at t = 1
      is unchanged, so the dehomogenized basis still sits in the ideal);

    * terms with x-degree >= xcut are dropped, standing in for reduction by
      the pure monomials of that degree.  Under this order the tail of a
      homogeneous element has strictly larger x-degree than its lead, so an
      S-polynomial against such a monomial consists of terms of x-degree at
      least the monomial's, and reduces to zero by dropping alone: no pairs
      with the implicit monomials are ever needed, and pairs whose lcm has
      x-degree >= xcut are skipped for the same reason;

    * whenever the staircase of the x-parts of the current leads has a finite
      complement of top degree K - 1, every form of degree >= K is certified
      to lie in the computed ideal (total division leaves a remainder of too
      high a degree to fit outside the staircase, and the Krull intersection
      squeezes out the previous cut), so the cut tightens to K.

    An initial `xcut` of D computes the staircase of the ideal plus all forms
    of degree D, which equals the ideal's own staircase exactly when the cut
    subsequently tightened below D.
    """
    basis = []
    pairs = []
    state = {"xcut": xcut}

    def push(hterms):
        tmin = min(m[0] for m in hterms)
        if tmin:
            hterms = {(m[0] - tmin,) + m[1:]: c for m, c in hterms.items()}
        g = _HGen(_primitive_hom(hterms), len(basis))
        for other in basis:
            lcm = tuple(max(a, b) for a, b in zip(g.lead, other.lead))
            heapq.heappush(pairs, (sum(lcm), other.index, g.index, lcm))
        basis.append(g)

    def refresh_cut():
        diag = Diagram(nvars, [g.lead[1:] for g in basis])
        points = _complement(diag)
        if points is None:
            return
        bound = 1 + max((sum(e) for e in points), default=-1)
        cut = state["xcut"]
        if cut is None or bound < cut:
            state["xcut"] = bound
            for g in basis:
                if len(g.terms) > 1:
                    slim = {
                        m: c
                        for m, c in g.terms.items()
                        if m == g.lead or sum(m) - m[0] < bound
                    }
                    if len(slim) != len(g.terms):
                        g.terms = slim
                        g.size = len(slim)

    for terms in int_polys:
        d = max(sum(e) for e in terms)
        hom = {(d - sum(e),) + e: c for e, c in terms.items()}
        h = _h_reduce(hom, basis, state["xcut"])
        if h:
            push(h)
            refresh_cut()

    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        cut = state["xcut"]
        if cut is not None and sum(lcm) - lcm[0] >= cut:
            continue  # every term of this S-polynomial would be cut away
        gi, gj = basis[i], basis[j]
        if all(a + b == c for a, b, c in zip(gi.lead, gj.lead, lcm)):
            continue  # coprime leads: the S-polynomial reduces to zero
        s = {}
        _dict_addmul(s, gi.terms, gj.lc, tuple(a - b for a, b in zip(lcm, gi.lead)))
        _dict_addmul(s, gj.terms, -gi.lc, tuple(a - b for a, b in zip(lcm, gj.lead)))
        if not s:
            continue
        h = _h_reduce(s, basis, state["xcut"])
        if h:
            push(h)
            refresh_cut()

    return [g.terms for g in basis], state["xcut"]


def _primitive_hom(terms):
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = min(terms, key=_hmax_key)
    if terms[lead] < 0:
        g = -g
    if g in (0, 1):
        return dict(terms)
    return {e: c // g for e, c in terms.items()}


# ---------------------------------------------------------------------------
# standard bases


class StandardBasis:
    """A certified generating set: the staircase of its initials equals the
    staircase of the generated ideal (every S-pair reduced to zero during
    completion)."""

    __slots__ = ("nvars", "generators", "initials", "diagram", "source", "_engine", "_corner")

    def __init__(self, nvars, generators, diagram, source):
        self.nvars = nvars
        self.generators = tuple(generators)
        self.initials = tuple(g.initial_exponent() for g in self.generators)
        self.diagram = diagram
        self.source = tuple(source)
        self._engine = None
        self._corner = False

    def engine_gens(self):
        if self._engine is None:
            self._engine = [
                _Gen(_int_terms(g)[0], i) for i, g in enumerate(self.generators)
            ]
        return self._engine

    def high_corner(self):
        """The degree from which on every term lies in the ideal, or None
        when the colength is infinite."""
        if self._corner is False:
            points = _complement(self.diagram)
            self._corner = (
                None if points is None else 1 + max((sum(e) for e in points), default=-1)
            )
        return self._corner

    def __repr__(self):
        return f"StandardBasis({self.nvars} vars, {len(self.generators)} generators, diagram {list(self.diagram.generators)})"


class DivisionResult:
    """Outcome of local division: unit * f = sum quotients[i] * basis[i] + remainder,
    with the remainder supported outside the staircase."""

    __slots__ = ("remainder", "member", "unit", "quotients")

    def __init__(self, remainder, member, unit, quotients=None):
        self.remainder = remainder
        self.member = member
        self.unit = unit
        self.quotients = quotients


def _local_bounded_basis(int_polys, nvars, bound):
    """Completion of the ideal plus all forms of degree `bound`, entirely in
    the local world: truncated total division terminates on its own, pairs
    run among the polynomial elements only (S-polynomials against the
    implicit cut monomials consist of terms at or above the cut and vanish
    under truncation), and the cut tightens adaptively exactly as in the
    homogeneous route.  Returns (elements, final cut); the result describes
    the ideal itself precisely when the cut managed to tighten.
    """
    basis = []
    pairs = []
    state = {"cut": bound}

    def push(int_terms):
        g = _Gen(int_terms, len(basis))
        for other in basis:
            lcm = tuple(max(a, b) for a, b in zip(g.nu, other.nu))
            heapq.heappush(pairs, (order_key(lcm), other.index, g.index, lcm))
        basis.append(g)
        diag = Diagram(nvars, [b.nu for b in basis])
        bounds = diag.axis_bounds()
        if any(b is None for b in bounds):
            return
        box = 1
        for b in bounds:
            box *= max(b, 1)
        if box > 200000:
            return  # tightening opportunity skipped while the box is huge
        points = _complement(diag)
        tight = 1 + max((sum(e) for e in points), default=-1)
        if tight < state["cut"]:
            state["cut"] = tight
            for b in basis:
                if len(b.terms) > 1:
                    slim = {
                        e: c
                        for e, c in b.terms.items()
                        if e == b.nu or sum(e) < tight
                    }
                    if len(slim) != len(b.terms):
                        b.terms = slim

    for terms in int_polys:
        h = _weak_reduce_int(terms, basis, state["cut"])
        if h:
            push(_primitive(h))

    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        if sum(lcm) >= state["cut"]:
            continue
        gi, gj = basis[i], basis[j]
        if all(a + b == c for a, b, c in zip(gi.nu, gj.nu, lcm)):
            continue  # coprime initials
        s = {}
        _dict_addmul(s, gi.terms, gj.lc, tuple(a - b for a, b in zip(lcm, gi.nu)))
        _dict_addmul(s, gj.terms, -gi.lc, tuple(a - b for a, b in zip(lcm, gj.nu)))
        if not s:
            continue
        h = _weak_reduce_int(_primitive(s), basis, state["cut"])
        if h:
            push(_primitive(h))

    return basis, state["cut"]


def _assemble_basis(hom, cut, nvars, polys):
    elements = []
    for hterms in hom:
        terms = {e[1:]: c for e, c in hterms.items()}
        elements.append(_Gen(terms, len(elements)))
    return _assemble_local(elements, cut, nvars, polys)


def _assemble_local(elements, cut, nvars, polys):
    corners = [g.nu for g in elements]
    if cut is not None:
        # the implicit pure monomials of the cut degree are ideal members
        corners.extend(_level_monomials(nvars, cut))
    diagram = Diagram(nvars, corners)
    wanted = set(diagram.generators)
    kept = {}
    for g in elements:
        # one element per staircase corner; prefer the shortest, then earliest
        if g.nu in wanted:
            cur = kept.get(g.nu)
            if cur is None or (len(g.terms), g.index) < (len(cur.terms), cur.index):
                kept[g.nu] = g
    generators = []
    for nu in diagram.generators:
        g = kept.get(nu)
        if g is not None:
            generators.append(
                Polynomial(nvars, {e: Fraction(c) for e, c in g.terms.items()})
            )
        else:
            generators.append(Polynomial.monomial(nvars, nu))
    return StandardBasis(nvars, generators, diagram, polys)


def standard_basis(gens, nvars=None, finite_hint=False):
    """Complete `gens` to a standard basis under the local order.

    Zero generators are dropped; an empty input describes the zero ideal and
    needs an explicit `nvars`.  The output generator list is minimal (its
    initials form the staircase's minimal antichain) and sorted, so equal
    ideals presented with equal generators reproduce bit-identical bases.

    `finite_hint` promises nothing but suggests the ideal probably has finite
    colength: completion is then first attempted below escalating degree
    cuts, accepting only a self-certified cut, with the exact unbounded run
    as the fallback; verdicts are identical either way.
    """
    polys = [g for g in gens if g]
    if polys:
        nvars = polys[0].nvars
        for g in polys:
            if g.nvars != nvars:
                raise DimensionMismatchError("generators from different rings")
    elif nvars is None:
        raise DimensionMismatchError("the zero ideal needs an explicit variable count")

    int_polys = [_int_terms(p)[0] for p in polys]
    if finite_hint:
        bound = 8
        for _ in range(4):
            elements, cut = _local_bounded_basis(int_polys, nvars, bound)
            if cut < bound:
                # the cut tightened on its own: the bounded run is exact
                return _assemble_local(elements, cut, nvars, polys)
            bound *= 2
    hom, cut = _hom_basis(int_polys, nvars)
    return _assemble_basis(hom, cut, nvars, polys)


def reduce(f, basis, quotients=False):
    """Divide `f` by a standard basis in the local ring.

    Returns a DivisionResult whose remainder has support disjoint from the
    staircase; membership in the localized ideal is exactly `remainder == 0`.
    The unit is normalized to constant term 1, so
    unit * f == sum quotients[i] * basis.generators[i] + remainder
    holds as an exact polynomial identity (quotients on request).
    """
    if f.nvars != basis.nvars:
        raise DimensionMismatchError("polynomial and basis from different rings")
    n = basis.nvars
    if not f:
        return DivisionResult(
            Polynomial.zero(n),
            True,
            Polynomial.constant(n, 1),
            [Polynomial.zero(n) for _ in basis.generators] if quotients else None,
        )
    ints, den = _int_terms(f)
    rem, unit, quots = _normal_form(
        ints,
        basis.engine_gens(),
        total=True,
        track_unit=True,
        track_quotients=quotients,
        nvars=n,
        unit_seed=den,
    )
    u0 = unit[(0,) * n]
    remainder = Polynomial(n, {e: c / u0 for e, c in rem.items()})
    unit_poly = Polynomial(n, {e: c / u0 for e, c in unit.items()})
    quot_polys = None
    if quotients:
        quot_polys = [
            Polynomial(n, {e: c / u0 for e, c in q.items()}) for q in quots
        ]
    return DivisionResult(remainder, not rem, unit_poly, quot_polys)


def is_member(f, basis):
    """Membership test in the localized ideal.

    With a finite colength this is one truncated division.  Otherwise the
    certificate is staircase stability: a non-member strictly enlarges the
    staircase when adjoined (its normal form contributes a fresh initial
    exponent), so equality of staircases decides membership.
    """
    if f.nvars != basis.nvars:
        raise DimensionMismatchError("polynomial and basis from different rings")
    if not f:
        return True
    corner = basis.high_corner()
    if corner is not None:
        rem, _, _ = _normal_form(
            _int_terms(f)[0], basis.engine_gens(), total=False, trunc=corner
        )
        return not rem
    grown = standard_basis(list(basis.generators) + [f], nvars=basis.nvars)
    return grown.diagram == basis.diagram


def contains_ideal(outer, inner_polys):
    """Whether every polynomial of `inner_polys` lies in the outer localized
    ideal, certified jointly by one staircase-stability computation."""
    polys = [p for p in inner_polys if p]
    if not polys:
        return True
    if outer.high_corner() is not None:
        return all(is_member(p, outer) for p in polys)
    grown = standard_basis(list(outer.generators) + polys, nvars=outer.nvars)
    return grown.diagram == outer.diagram


def quotient_dim(outer, inner):
    """dim of (outer ideal)/(inner ideal) as a vector space, or INFINITE.

    Requires the inner ideal to be contained in the outer one; containment is
    certified by the staircase stability of the outer basis under adjoining
    the inner generators.
    """
    if outer.nvars != inner.nvars:
        raise DimensionMismatchError("bases from different rings")
    if not contains_ideal(outer, inner.generators):
        raise NotSubidealError("inner ideal is not contained in the outer ideal")
    diff = staircase_difference(outer.diagram, inner.diagram)
    return INFINITE if diff is None else len(diff)
