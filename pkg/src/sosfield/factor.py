"""Polynomial factorization and real root isolation.

Over a finite field: squarefree split, distinct-degree split, then seeded
Cantor-Zassenhaus equal-degree splitting. Works over any finite field object
(prime fields and quotient-ring extensions alike).

Over Q: Yun squarefree decomposition, reduction modulo a good prime,
multifactor Hensel lifting to a Mignotte-style bound, and subset
recombination. No lattice reduction; degrees here are desk scale.

Real roots: Sturm chains with a Cauchy bound, exact rational bisection.
"""

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInputError
from .fields import QQ, FqField
from .numtheory import is_prime, prime_divisors
from .poly import Poly, poly_ext_gcd, poly_gcd, poly_pow_mod


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor**multiplicity); factors monic, deterministic order."""

    unit: object
    factors: tuple

    def expand(self):
        first = self.factors[0][0] if self.factors else None
        if first is None:
            raise DegenerateInputError("nothing to expand")
        acc = Poly(first.field, [first.field.one()], first.var)
        for f, m in self.factors:
            acc = acc * f**m
        return acc * self.unit


def _sqf_list_fq(f):
    """Squarefree decomposition of a monic f over a finite field."""
    F = f.field
    p, s = F.char, F.order()
    factors, n = [], 1
    while f.degree() > 0:
        d = f.derivative()
        if not d.is_zero():
            g = poly_gcd(f, d)
            h = f // g
            i = 1
            while h.degree() > 0:
                gh = poly_gcd(g, h)
                part = h // gh
                if part.degree() > 0:
                    factors.append((part.monic(), i * n))
                g, h = g // gh, gh
                i += 1
            if g.degree() == 0:
                break
            f = g
        # here f is a p-th power: deflate and take p-th roots of coefficients
        root = [f.coeffs[j] ** (s // p) for j in range(0, len(f.coeffs), p)]
        f = Poly(F, root, f.var)
        n *= p
    return factors


def _distinct_degree(f):
    """Split monic squarefree f into (product, d) pieces, factors all degree d."""
    F, s = f.field, f.field.order()
    x = Poly.gen(F, f.var)
    h, d, out = x, 0, []
    while f.degree() >= 2 * (d + 1):
        d += 1
        h = poly_pow_mod(h, s, f)
        g = poly_gcd(h - x, f)
        if g.degree() > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree() > 0:
        out.append((f, f.degree()))
    return out


def _equal_degree(f, d, rng):
    """Cantor-Zassenhaus: split monic squarefree f whose factors all have degree d."""
    n = f.degree()
    if n == d:
        return [f]
    F, s = f.field, f.field.order()
    e = (s**d - 1) // 2
    one = Poly(F, [F.one()], f.var)
    while True:
        a = Poly(F, [F.rand(rng) for _ in range(n)], f.var)
        if a.degree() < 1:
            continue
        g = poly_gcd(a, f)
        if not 0 < g.degree() < n:
            b = poly_pow_mod(a, e, f)
            g = poly_gcd(b - one, f)
        if 0 < g.degree() < n:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor_fq(f, seed=0):
    """Full factorization over a finite field; deterministic output order."""
    if f.is_zero():
        raise DegenerateInputError("cannot factor the zero polynomial")
    if f.field.order() is None:
        raise DegenerateInputError("factor_fq needs a finite coefficient field")
    unit = f.lc()
    if f.degree() == 0:
        return Factorization(unit, ())
    rng = random.Random(seed)
    factors = []
    for part, mult in _sqf_list_fq(f.monic()):
        for prod, d in _distinct_degree(part):
            for irr in _equal_degree(prod, d, rng):
                factors.append((irr.monic(), mult))
    factors.sort(key=lambda t: t[0].sort_key())
    return Factorization(unit, tuple(factors))


def is_irreducible_fq(f):
    """Degree criterion: f | X^(s^n) - X and coprimality at proper iterates."""
    if f.degree() < 1:
        return False
    f = f.monic()
    F, s, n = f.field, f.field.order(), f.degree()
    if n == 1:
        return True
    x = Poly.gen(F, f.var)
    if poly_pow_mod(x, s**n, f) != x % f:
        return False
    for ell in prime_divisors(n):
        g = poly_pow_mod(x, s ** (n // ell), f) - x
        if poly_gcd(g, f).degree() != 0:
            return False
    return True


def fq_roots(f, seed=0):
    """Roots of f in its finite coefficient field, canonically sorted."""
    F = f.field
    roots = []
    for g, _ in factor_fq(f, seed=seed).factors:
        if g.degree() == 1:
            roots.append(-g.coeff(0))
    roots.sort(key=F.sort_key)
    return roots


# ---------------------------------------------------------------------------
# Factorization over Q


def _yun(f):
    """Squarefree decomposition of a monic f over Q: list of (part, mult)."""
    out = []
    fp = f.derivative()
    g = poly_gcd(f, fp)
    if g.degree() == 0:
        return [(f, 1)]
    w, y = f // g, fp // g
    z = y - w.derivative()
    i = 1
    while not z.is_zero():
        h = poly_gcd(w, z)
        if h.degree() > 0:
            out.append((h, i))
        w, y = w // h, z // h
        z = y - w.derivative()
        i += 1
    if w.degree() > 0:
        out.append((w, i))
    return out


def _zl_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zl_add(a, b, M):
    n = max(len(a), len(b))
    return _zl_trim(
        [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % M for i in range(n)]
    )


def _zl_sub(a, b, M):
    n = max(len(a), len(b))
    return _zl_trim(
        [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % M for i in range(n)]
    )


def _zl_mul(a, b, M):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % M
    return _zl_trim(out)


def _zl_divmod_monic(a, b, M):
    """Division by a polynomial with invertible leading coefficient, mod M."""
    a = [c % M for c in a]
    inv = pow(b[-1], -1, M)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    _zl_trim(r)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        t = r[-1] * inv % M
        q[k] = t
        for i, c in enumerate(b):
            r[k + i] = (r[k + i] - t * c) % M
        _zl_trim(r)
    return _zl_trim(q), r


def _hensel_step(m, f, g, h, s, t):
    """One quadratic lifting step: from factorization mod m to mod m*m."""
    M = m * m
    e = _zl_sub(f, _zl_mul(g, h, M), M)
    q, r = _zl_divmod_monic(_zl_mul(s, e, M), h, M)
    g1 = _zl_add(g, _zl_add(_zl_mul(t, e, M), _zl_mul(q, g, M), M), M)
    h1 = _zl_add(h, r, M)
    b = _zl_sub(_zl_add(_zl_mul(s, g1, M), _zl_mul(t, h1, M), M), [1], M)
    c, d = _zl_divmod_monic(_zl_mul(s, b, M), h1, M)
    s1 = _zl_sub(s, d, M)
    t1 = _zl_sub(t, _zl_add(_zl_mul(t, b, M), _zl_mul(c, g1, M), M), M)
    return g1, h1, s1, t1


def _hensel_lift(p, f, facs, l):
    """Lift monic factors mod p of f (≡ lc(f)*prod facs) to factors mod p**l."""
    r = len(facs)
    pl = p**l
    if r == 1:
        inv = pow(f[-1] % pl, -1, pl)
        return [_zl_trim([c * inv % pl for c in f])]
    k = r // 2
    g = [f[-1] % p]
    for fi in facs[:k]:
        g = _zl_mul(g, fi, p)
    h = [1]
    for fi in facs[k:]:
        h = _zl_mul(h, fi, p)
    Fp = FqField(p)
    gP = Poly(Fp, g, "X")
    hP = Poly(Fp, h, "X")
    one, sP, tP = poly_ext_gcd(gP, hP)
    if one.degree() != 0:
        raise DegenerateInputError("modular factors not coprime; bad prime")
    s = [c.val for c in sP.coeffs]
    t = [c.val for c in tP.coeffs]
    m = p
    steps = max(1, math.ceil(math.log2(l))) if l > 1 else 0
    for _ in range(steps):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    g = _zl_trim([c % pl for c in g])
    h = _zl_trim([c % pl for c in h])
    return _hensel_lift(p, g, facs[:k], l) + _hensel_lift(p, h, facs[k:], l)


def _centered(c, M):
    c %= M
    return c - M if c > M // 2 else c


def _zx_content(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g or 1


def _zx_primitive(a):
    g = _zx_content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _zx_divides(h, G):
    """Exact division test in Z[X]; returns quotient or None."""
    if len(h) > len(G):
        return None
    q, r = divmod(Poly(QQ, G, "X"), Poly(QQ, h, "X"))
    if not r.is_zero() and r != 0:
        return None
    if any(c.denominator != 1 for c in q.coeffs):
        return None
    return [c.numerator for c in q.coeffs]


def good_prime(G, skip=0):
    """Smallest odd prime dividing neither lc nor disc of the integer poly G.

    Accepts a rational Poly or an integer coefficient list.  skip > 0 steps
    past the first `skip` qualifying primes, for the prime-independence
    cross-check.
    """
    from .poly import discriminant

    if isinstance(G, Poly):
        den = 1
        for c in G.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        G = _zx_primitive([int(c * den) for c in G.coeffs])
    disc = discriminant(Poly(QQ, G, "X"))
    bad = abs(G[-1]) * abs(disc.numerator)
    if bad == 0:
        raise DegenerateInputError("polynomial not squarefree")
    p = 3
    while True:
        if is_prime(p) and bad % p != 0:
            if skip == 0:
                return p
            skip -= 1
        p += 2


def _zassenhaus(G, prime=None):
    """Irreducible integer factors of a primitive squarefree G, lc > 0."""
    n = len(G) - 1
    if n == 1:
        return [G]
    if prime is None:
        prime = good_prime(G)
    else:
        check = Poly(QQ, G, "X")
        from .poly import discriminant

        bad = abs(G[-1]) * abs(discriminant(check).numerator)
        if prime == 2 or not is_prime(prime) or bad % prime == 0:
            raise DegenerateInputError(f"{prime} is not a good prime here")
    Fp = FqField(prime)
    fbar = Poly(Fp, G, "X").monic()
    modular = [[c.val for c in g.coeffs] for g, _ in factor_fq(fbar).factors]
    if len(modular) == 1:
        return [G]
    maxc = max(abs(c) for c in G)
    bound = (n + 1) * (1 << n) * maxc * abs(G[-1])
    l = 1
    while prime**l <= 2 * bound:
        l += 1
    lifted = _hensel_lift(prime, G, modular, l)
    pl = prime**l
    idxs = list(range(len(lifted)))
    result, s = [], 1
    while 2 * s <= len(idxs):
        found = False
        for subset in itertools.combinations(idxs, s):
            hstar = [G[-1] % pl]
            for i in subset:
                hstar = _zl_mul(hstar, lifted[i], pl)
            h = _zx_primitive([_centered(c, pl) for c in hstar])
            q = _zx_divides(h, G)
            if q is not None:
                result.append(h)
                G = _zx_primitive(q)
                idxs = [i for i in idxs if i not in subset]
                found = True
                break
        if not found:
            s += 1
    if len(G) > 1:
        result.append(G)
    return result


def factor_q(f, modular_prime=None):
    """Factor over Q into monic irreducibles with a rational unit.

    modular_prime forces the internal good prime (must qualify); the output is
    identical for any qualifying prime.
    """
    if f.is_zero():
        raise DegenerateInputError("cannot factor the zero polynomial")
    if f.field != QQ:
        raise DegenerateInputError("factor_q expects rational coefficients")
    unit = f.lc()
    if f.degree() == 0:
        return Factorization(unit, ())
    factors = []
    for part, mult in _yun(f.monic()):
        den = 1
        for c in part.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        G = _zx_primitive([int(c * den) for c in part.coeffs])
        for h in _zassenhaus(G, prime=modular_prime):
            factors.append((Poly(QQ, h, f.var).monic(), mult))
    factors.sort(key=lambda t: t[0].sort_key())
    return Factorization(unit, tuple(factors))


def rational_roots(f):
    """Sorted rational roots of f (multiplicity ignored)."""
    roots = [-g.coeff(0) for g, _ in factor_q(f).factors if g.degree() == 1]
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# Real root isolation


def _sign(x):
    return (x > 0) - (x < 0)


def _sturm_chain(f):
    chain = [f, f.derivative()]
    while chain[-1].degree() > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations(chain, x):
    signs = [s for s in (_sign(p(x)) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class RootIntervals:
    """Isolating intervals for the distinct real roots of a polynomial.

    squarefree is the squarefree part actually isolated; intervals are open,
    sorted, pairwise disjoint, and their endpoints are never roots.
    """

    squarefree: Poly
    intervals: tuple

    @property
    def count(self):
        return len(self.intervals)


def _nonroot_midpoint(f, lo, hi):
    mid = (lo + hi) / 2
    step = (hi - lo) / 4
    while f(mid) == 0:
        mid = mid + step
        step = step / 2
    return mid


def sturm_isolate(f):
    """Isolate all distinct real roots of a nonzero rational polynomial."""
    if f.is_zero():
        raise DegenerateInputError("zero polynomial has every point as a root")
    if f.degree() == 0:
        return RootIntervals(f.monic(), ())
    g = (f // poly_gcd(f, f.derivative())).monic()
    bound = 1 + max(abs(c) for c in g.coeffs)
    chain = _sturm_chain(g)
    out = []
    stack = [(Fraction(-bound), Fraction(bound))]
    while stack:
        lo, hi = stack.pop()
        k = _variations(chain, lo) - _variations(chain, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = _nonroot_midpoint(g, lo, hi)
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return RootIntervals(g, tuple(out))


def refine_interval(f, lo, hi, width):
    """Shrink an isolating interval of f below `width` by sign bisection."""
    slo = _sign(f(lo))
    if slo == 0 or _sign(f(hi)) == 0 or slo == _sign(f(hi)):
        raise DegenerateInputError("interval endpoints must give opposite signs")
    while hi - lo >= width:
        mid = _nonroot_midpoint(f, lo, hi)
        if _sign(f(mid)) == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi
