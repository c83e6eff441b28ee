"""Search for completely split places of an extension field.

A base place pi is completely split in K = E[T]/(f) when the reduction of f
modulo pi has deg(f) distinct simple roots in the residue field.  Candidates
are enumerated in a canonical order per base (primes ascending; monic
irreducibles by degree then coefficients; rational polynomials by coefficient
height then degree), so searches are reproducible.  Residue fields here are
either finite or number fields Q[x]/(pi); both admit a complete root count,
so a place is never reported split on partial evidence.
"""

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CheckResult,
    DegenerateInputError,
    RepresentationNotFoundError,
    SosfieldError,
)
from .factor import factor_q, fq_roots, is_irreducible_fq, sturm_isolate
from .fields import QQ, field_sqrt
from .local import BasePlace, ExtPlace
from .numtheory import primes
from .poly import Poly, RatFunc, RatFuncField, poly_gcd, poly_pow_mod, resultant


@dataclass(frozen=True)
class SearchBudget:
    """Caps for the candidate enumeration.

    max_size is interpreted per base: largest prime over Q, largest
    uniformizer degree over a finite constant field, largest coefficient
    height (and degree) over Q(X).  Zero means the per-base default.
    """

    max_candidates: int = 20000
    max_size: int = 0
    wall_seconds: float = 60.0

    def size_for(self, label):
        if self.max_size:
            return self.max_size
        return 10**6 if label == "Q" else 6


@dataclass(frozen=True)
class SplitPlaceRecord:
    """A certified completely split place with its sorted residue roots."""

    field: object
    base_place: BasePlace
    roots: tuple
    nonreal: bool
    sqrt_minus_one: object

    def ext_places(self):
        return tuple(ExtPlace(self.field, self.base_place, r) for r in self.roots)


@dataclass(frozen=True)
class SplitSearchResult:
    records: tuple
    candidates_tried: int
    exhausted: bool


def _rational_coeff_pool(height):
    pool = set()
    for den in range(1, height + 1):
        for num in range(-height * den, height * den + 1):
            c = Fraction(num, den)
            if max(abs(c.numerator), c.denominator) <= height:
                pool.add(c)
    return sorted(pool, key=QQ.sort_key)


def _frac_height(c):
    return max(abs(c.numerator), c.denominator)


def _candidate_uniformizers(base, budget):
    """Ring-element candidates in canonical order; irreducibility pre-filtered."""
    size = budget.size_for(base.label)
    if base.kind == "Q":
        for p in primes(3):
            if p > size:
                return
            yield p
        return
    k = base.k
    if k != QQ:
        elems = list(k.elements())
        for deg in range(1, size + 1):
            for top in itertools.product(elems, repeat=deg):
                pi = Poly(k, list(reversed(top)) + [k.one()], "X")
                if is_irreducible_fq(pi):
                    yield pi
        return
    for height in range(1, size + 1):
        pool = _rational_coeff_pool(height)
        for deg in range(1, size + 1):
            for top in itertools.product(pool, repeat=deg):
                if max(_frac_height(c) for c in top) != height:
                    continue
                pi = Poly(QQ, list(reversed(top)) + [Fraction(1)], "X")
                fac = factor_q(pi)
                if len(fac.factors) == 1 and fac.factors[0][1] == 1:
                    yield pi


def _trager_norm(L, g):
    """Res_x(modulus, g) as a rational polynomial in the outer variable T."""
    RT = RatFuncField(QQ, "T")
    cols = []
    for i in range(L.deg):
        tcoeffs = [g.coeff(j).coords[i] for j in range(g.degree() + 1)]
        cols.append(RatFunc(Poly(QQ, tcoeffs, "T")))
    gx = Poly(RT, cols, "X")
    pix = Poly(RT, [RatFunc(Poly(QQ, [c], "T")) for c in L.modulus.coeffs], "X")
    norm = resultant(pix, gx)
    return norm.as_poly()


def number_field_roots(L, g, max_shift=16):
    """All roots in L = Q[x]/(pi) of a monic squarefree g over L, sorted.

    Trager's method: shift until the norm is squarefree, factor it over Q, and
    read the linear factors back off gcds.  Complete: an empty list is a proof
    that g has no root in L.
    """
    xbar = L.gen()
    for s in range(max_shift):
        if s == 0:
            gs = g
        else:
            point = Poly(L, [L.from_int(-s) * xbar, L.one()], g.var)
            gs = g(point)
        norm = _trager_norm(L, gs)
        if poly_gcd(norm, norm.derivative()).degree() == 0:
            break
    else:
        raise RepresentationNotFoundError("no squarefree norm shift found")
    roots, total = [], 0
    for h, _ in factor_q(norm).factors:
        h_in_l = Poly(L, [L.coerce(c) for c in h.coeffs], g.var)
        common = poly_gcd(gs, h_in_l)
        total += common.degree()
        if common.degree() == 1:
            r = -common.coeff(0)
            roots.append(r - L.from_int(s) * xbar if s else r)
    if total != g.degree():
        raise RepresentationNotFoundError("norm factorization did not cover g")
    return sorted(roots, key=L.sort_key)


def residue_is_nonreal(base_place):
    """(nonreal, sqrt_minus_one or None) for the residue field.

    Finite residue fields are always nonreal; a number field Q[x]/(pi) is
    nonreal exactly when pi has no real root.  The square root of -1, when it
    exists, is the canonically smaller of the two.
    """
    R = base_place.residue_field()
    if R.order() is not None:
        return True, field_sqrt(R, -R.one())
    nonreal = sturm_isolate(base_place.uniformizer).count == 0
    tsq = Poly(R, [R.one(), R.zero(), R.one()], "T")
    rts = number_field_roots(R, tsq)
    return nonreal, (rts[0] if rts else None)


def analyze_place(field, base_place, seed=0):
    """SplitPlaceRecord when base_place is completely split in field, else None."""
    if field.base != base_place.base:
        raise DegenerateInputError("place does not belong to the base of the field")
    if not field.disc:
        raise DegenerateInputError("defining polynomial is not separable")
    if base_place.valuation(field.disc) != 0:
        return None
    R = base_place.residue_field()
    fbar = base_place.reduce_poly(field.f)
    if R.order() is not None:
        tbar = Poly.gen(R, fbar.var)
        if poly_pow_mod(tbar, R.order(), fbar) != tbar % fbar:
            return None
        roots = fq_roots(fbar, seed=seed)
    else:
        roots = number_field_roots(R, fbar)
    if len(roots) != field.deg:
        return None
    nonreal, sqrtm1 = residue_is_nonreal(base_place)
    return SplitPlaceRecord(
        field, base_place, tuple(sorted(roots, key=R.sort_key)), nonreal, sqrtm1
    )


def find_split_places(
    field,
    count=1,
    budget=None,
    require_nonreal=True,
    require_sqrt_minus_one=False,
    seed=0,
):
    """First `count` completely split places in canonical candidate order.

    require_nonreal keeps only places whose residue field is nonreal (always
    true for finite residue fields); require_sqrt_minus_one additionally
    demands an explicit square root of -1 in the residue field.  The result
    flags exhaustion when the budget ran out first; found records are still
    returned.
    """
    if count < 1:
        raise DegenerateInputError("count must be positive")
    budget = budget or SearchBudget()
    deadline = time.monotonic() + budget.wall_seconds
    records, tried = [], 0
    for pi in _candidate_uniformizers(field.base, budget):
        if tried >= budget.max_candidates or time.monotonic() > deadline:
            return SplitSearchResult(tuple(records), tried, True)
        tried += 1
        rec = analyze_place(field, BasePlace(field.base, pi), seed=seed)
        if rec is None or (require_nonreal and not rec.nonreal):
            continue
        if require_sqrt_minus_one and rec.sqrt_minus_one is None:
            continue
        records.append(rec)
        if len(records) == count:
            return SplitSearchResult(tuple(records), tried, False)
    return SplitSearchResult(tuple(records), tried, True)


def verify_split_place(record):
    """Recompute every claim in a SplitPlaceRecord from scratch."""
    field = record.field
    try:
        place = BasePlace(field.base, record.base_place.uniformizer)
        if place != record.base_place:
            return CheckResult(False, "uniformizer is not normalized")
        if not field.disc or place.valuation(field.disc) != 0:
            return CheckResult(False, "place divides the discriminant")
        R = place.residue_field()
        roots = [R.coerce(r) for r in record.roots]
        if any(r is None for r in roots):
            return CheckResult(False, "root outside the residue field")
        if len(roots) != field.deg:
            return CheckResult(False, "root count differs from the degree")
        if len(set(roots)) != len(roots):
            return CheckResult(False, "roots are not distinct")
        if [R.sort_key(r) for r in roots] != sorted(R.sort_key(r) for r in roots):
            return CheckResult(False, "roots are not sorted")
        fbar = place.reduce_poly(field.f)
        dbar = fbar.derivative()
        for r in roots:
            if fbar(r) != R.zero():
                return CheckResult(False, f"{r!r} is not a residue root")
            if dbar(r) == R.zero():
                return CheckResult(False, f"residue root {r!r} is not simple")
        nonreal, sqrtm1 = residue_is_nonreal(place)
        if record.nonreal != nonreal:
            return CheckResult(False, "nonreal flag is wrong")
        if record.sqrt_minus_one is not None:
            s = R.coerce(record.sqrt_minus_one)
            if s is None or s * s != -R.one():
                return CheckResult(False, "claimed square root of -1 fails")
        elif sqrtm1 is not None:
            return CheckResult(False, "residue field has a square root of -1")
    except SosfieldError as e:
        return CheckResult(False, str(e))
    return CheckResult(True, "ok")
