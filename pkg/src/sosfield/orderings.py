"""Real embeddings of number fields, exact sign evaluation, and sign witnesses.

An embedding is stored as the defining polynomial plus an isolating rational
interval for one of its real roots.  Signs are decided exactly: interval
Horner evaluation, with bisection refinement until the sign is unambiguous.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExhaustedError,
    CheckResult,
    DegenerateInputError,
    PrecisionExhaustedError,
)
from .extension import field_norm
from .factor import refine_interval, sturm_isolate
from .fields import rat_is_square
from .split import _frac_height, _rational_coeff_pool


@dataclass(frozen=True)
class RealEmbedding:
    """One real root of minpoly, isolated in the open interval (lo, hi)."""

    minpoly: object
    lo: Fraction
    hi: Fraction

    def refine(self, width):
        lo, hi = refine_interval(self.minpoly, self.lo, self.hi, width)
        return RealEmbedding(self.minpoly, lo, hi)


def real_embeddings(field):
    """All real embeddings of a number field, ordered by root position.

    Requires verified irreducibility: with a merely asserted modulus the
    isolated roots need not correspond to embeddings of a field at all.
    """
    if field.base.kind != "Q":
        raise DegenerateInputError("real embeddings are for number fields")
    if field.irreducibility_status != "verified":
        raise DegenerateInputError(
            "real_embeddings needs verified irreducibility of the modulus"
        )
    iso = sturm_isolate(field.f)
    return tuple(RealEmbedding(field.f, lo, hi) for lo, hi in iso.intervals)


def _interval_eval(p, lo, hi):
    """Bounds for p over [lo, hi] by interval Horner."""
    acc_lo = acc_hi = p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        products = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(products) + c, max(products) + c
    return acc_lo, acc_hi


def sign_at(emb, x):
    """The exact sign (-1, 0, +1) of a field element under a real embedding."""
    rep = x.rep()
    if list(x.ring.modulus.coeffs) != list(emb.minpoly.coeffs):
        raise DegenerateInputError("element does not live in the embedded field")
    if rep.is_zero():
        return 0
    lo, hi = emb.lo, emb.hi
    for _ in range(256):
        vlo, vhi = _interval_eval(rep, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        lo, hi = refine_interval(emb.minpoly, lo, hi, (hi - lo) / 4)
    # a nonzero element of the field cannot vanish at the root
    raise PrecisionExhaustedError("sign did not stabilize under refinement")


@dataclass(frozen=True)
class SignPatternWitness:
    """beta = x^2 + y^2 * alpha with certified signs under two embeddings."""

    alpha: object
    pair: tuple
    embeddings: tuple
    signs: tuple

    @property
    def beta(self):
        x, y = self.pair
        return x * x + y * y * self.alpha


def _element_pool(field, max_height):
    """Rationals and generator-linear elements a + b*theta, smallest first.

    Ordered by coordinate height, then with constants before theta terms,
    then by magnitude with nonnegative entries first.
    """
    theta = field.gen()

    def coord_key(c):
        return (_frac_height(c), abs(c), 0 if c >= 0 else 1)

    out = []
    for h in range(1, max_height + 1):
        coords = [c for c in _rational_coeff_pool(h)]
        fresh = []
        for b in coords:
            for a in coords:
                if max(_frac_height(a), _frac_height(b)) != h:
                    continue
                fresh.append((a, b))
        fresh.sort(key=lambda ab: (coord_key(ab[1]), coord_key(ab[0])))
        out.extend(
            (field.from_base(a) + field.from_base(b) * theta, h) for a, b in fresh
        )
    return out


def indefinite_witness(field, alpha, e1, e2, max_height=8, max_pairs=20000):
    """Find beta = x^2 + y^2 alpha positive under e1 and negative under e2.

    Precondition: alpha is negative under both embeddings, so neither sign
    of beta is forced.  The pair (x, y) is searched smallest-height first
    and the returned witness carries exact certified signs.
    """
    alpha = field.coerce(alpha)
    if sign_at(e1, alpha) != -1 or sign_at(e2, alpha) != -1:
        raise DegenerateInputError(
            "indefinite_witness needs alpha negative under both embeddings"
        )
    pool = _element_pool(field, max_height)
    tried = 0
    for h in range(1, max_height + 1):
        for x, hx in pool:
            if hx > h:
                break
            for y, hy in pool:
                if hy > h:
                    break
                if max(hx, hy) != h:
                    continue
                tried += 1
                if tried > max_pairs:
                    raise BudgetExhaustedError(
                        f"no sign-splitting pair within {max_pairs} candidates"
                    )
                beta = x * x + y * y * alpha
                if not beta:
                    continue
                if sign_at(e1, beta) == 1 and sign_at(e2, beta) == -1:
                    return SignPatternWitness(alpha, (x, y), (e1, e2), (1, -1))
    raise BudgetExhaustedError(f"no sign-splitting pair up to height {max_height}")


def verify_sign_witness(witness):
    """Recompute both signs of the witness element from scratch."""
    try:
        e1, e2 = witness.embeddings
        x, y = witness.pair
        beta = x * x + y * y * witness.alpha
        if not beta:
            return CheckResult(False, "witness element is zero")
        if (sign_at(e1, beta), sign_at(e2, beta)) != tuple(witness.signs):
            return CheckResult(False, "claimed signs do not recompute")
        if tuple(witness.signs) != (1, -1):
            return CheckResult(False, "witness must be positive then negative")
    except (DegenerateInputError, PrecisionExhaustedError, AttributeError) as exc:
        return CheckResult(False, f"malformed witness: {exc}")
    return CheckResult(True, "ok")


@dataclass(frozen=True)
class NormProbeReport:
    """Sampled check of the norm product identity on sums of squares."""

    samples: int
    identity_failures: int
    square_yes: int
    square_no: int
    square_untested: int


def norm_product_probe(field, samples=20, seed=0):
    """Check N(alpha * N(alpha)) = N(alpha)^(n+1) on random sums of squares.

    Odd-degree extensions only.  Whether alpha * N(alpha) is itself a square
    is decided in the degree-1 case and reported as untested otherwise;
    no claim is fabricated for degrees where no exact test is implemented.
    """
    n = field.deg
    if n % 2 == 0:
        raise DegenerateInputError("norm_product_probe needs odd degree")
    rng = random.Random(seed)
    failures = 0
    yes = no = untested = 0
    done = 0
    while done < samples:
        terms = [field.rand(rng) for _ in range(rng.randint(2, 4))]
        alpha = field.zero()
        for t in terms:
            alpha = alpha + t * t
        if not alpha:
            continue
        done += 1
        na = field_norm(alpha)
        lhs = field_norm(alpha * field.from_base(na))
        if lhs != na ** (n + 1):
            failures += 1
        if n == 1 and field.base.kind == "Q":
            product = alpha * field.from_base(na)
            if rat_is_square(Fraction(product.coords[0])):
                yes += 1
            else:
                no += 1
        else:
            untested += 1
    return NormProbeReport(samples, failures, yes, no, untested)
