"""Dense univariate polynomials over an exact field, and rational functions.

Coefficients are stored lowest degree first with no trailing zeros. A Poly is
generic over the field objects from fields.py (and over RatFuncField below),
so the same code serves Q[T], F_q[X], Q(X)[T] and F_q(X)[T].
"""

from fractions import Fraction

from .errors import DegenerateInputError


class Poly:
    """Immutable dense polynomial over a field object, in one named variable."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field, coeffs, var):
        cs = []
        for c in coeffs:
            e = field.coerce(c)
            if e is None:
                raise DegenerateInputError(f"cannot coerce {c!r} into {field!r}")
            cs.append(e)
        while cs and cs[-1] == field.zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def const(cls, field, c, var):
        return cls(field, [c], var)

    @classmethod
    def gen(cls, field, var):
        return cls(field, [field.zero(), field.one()], var)

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self):
        if self.is_zero():
            raise DegenerateInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return not self.is_zero() and self.lc() == self.field.one()

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def _wrap(self, other):
        if isinstance(other, Poly):
            if other.field != self.field or other.var != self.var:
                raise DegenerateInputError("mixed polynomial domains")
            return other
        c = self.field.coerce(other)
        if c is None:
            return NotImplemented
        return Poly(self.field, [c], self.var)

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(i) - other.coeff(i) for i in range(n)], self.var)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs], self.var)

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly(self.field, [], self.var)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DegenerateInputError("negative polynomial power")
        result = Poly(self.field, [self.field.one()], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.field.zero()] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        d, inv_lc = other.degree(), self.field.one() / other.lc()
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            t = rem[-1] * inv_lc
            q[k] = t
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - t * b
            while rem and rem[-1] == self.field.zero():
                rem.pop()
        return Poly(self.field, q, self.var), Poly(self.field, rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Division by a constant, or exact polynomial division."""
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.degree() == 0:
            inv = self.field.one() / other.coeffs[0]
            return self * inv
        q, r = divmod(self, other)
        if r.is_zero():
            return q
        raise DegenerateInputError("non-exact polynomial division")

    def __rtruediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (
                self.field == other.field
                and self.var == other.var
                and self.coeffs == other.coeffs
            )
        c = self.field.coerce(other)
        if c is None:
            return NotImplemented
        return self.coeffs == () if c == self.field.zero() else self.coeffs == (c,)

    def __hash__(self):
        return hash((self.field, self.var, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def monic(self):
        if self.is_zero():
            raise DegenerateInputError("zero polynomial cannot be made monic")
        inv = self.field.one() / self.lc()
        return Poly(self.field, [c * inv for c in self.coeffs], self.var)

    def derivative(self):
        return Poly(
            self.field,
            [self.field.from_int(i) * c for i, c in enumerate(self.coeffs)][1:],
            self.var,
        )

    def __call__(self, point):
        """Horner evaluation. `point` must live in the coefficient domain."""
        acc = self.field.zero() * point if not isinstance(point, (int, Fraction)) else self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def map_coeffs(self, target_field, fn=None, var=None):
        """Map coefficients into target_field (via fn or target_field.coerce)."""
        fn = fn or target_field.coerce
        return Poly(target_field, [fn(c) for c in self.coeffs], var or self.var)

    def sort_key(self):
        # degree-major, then coefficients from the leading term down
        return (self.degree(), tuple(self.field.sort_key(c) for c in reversed(self.coeffs)))

    def __repr__(self):
        from .parsing import render_poly

        return render_poly(self)


def poly_gcd(a, b):
    """Monic gcd over a field; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_ext_gcd(a, b):
    """Extended gcd: returns (g, s, t) with g monic (or zero) and s*a + t*b = g."""
    F, var = a.field, a.var
    one, zero = Poly(F, [F.one()], var), Poly(F, [], var)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.one() / r0.lc()
    return r0.monic(), s0 * inv, t0 * inv


def resultant(a, b):
    """Resultant of two polynomials over a field, by Euclidean PRS."""
    if a.field != b.field or a.var != b.var:
        raise DegenerateInputError("mixed polynomial domains")
    F = a.field
    if a.is_zero() or b.is_zero():
        return F.one() if max(a.degree(), b.degree()) <= 0 else F.zero()
    acc = F.one()
    if a.degree() < b.degree():
        if (a.degree() * b.degree()) % 2 == 1:
            acc = -acc
        a, b = b, a
    while b.degree() > 0:
        r = a % b
        if r.is_zero():
            return F.zero()
        acc = acc * b.lc() ** (a.degree() - r.degree())
        if (a.degree() * b.degree()) % 2 == 1:
            acc = -acc
        a, b = b, r
    return acc * b.coeffs[0] ** a.degree()


def discriminant(f):
    """Discriminant: (-1)^(d(d-1)/2) * Res(f, f') / lc(f)."""
    d = f.degree()
    if d < 1:
        raise DegenerateInputError("discriminant needs degree >= 1")
    r = resultant(f, f.derivative()) / f.lc()
    return -r if (d * (d - 1) // 2) % 2 == 1 else r


def poly_pow_mod(a, e, m):
    """a**e mod m by square and multiply."""
    result = Poly(a.field, [a.field.one()], a.var)
    a = a % m
    while e:
        if e & 1:
            result = result * a % m
        a = a * a % m
        e >>= 1
    return result


def lagrange_interp(field, points, var):
    """Polynomial of least degree through the given (x, y) pairs."""
    total = Poly(field, [], var)
    xs = [x for x, _ in points]
    for i, (xi, yi) in enumerate(points):
        num = Poly(field, [field.one()], var)
        den = field.one()
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * Poly(field, [-xj, field.one()], var)
            den = den * (xi - xj)
        total = total + num * (yi / den)
    return total


def poly_sqrt(p, sqrt_fn):
    """Exact square root of p, or None. sqrt_fn takes/returns field elements."""
    if p.is_zero():
        return p
    d = p.degree()
    if d % 2 == 1:
        return None
    m = d // 2
    lead = sqrt_fn(p.lc())
    if lead is None:
        return None
    F = p.field
    b = [F.zero()] * (m + 1)
    b[m] = lead
    inv2lead = F.one() / (lead + lead)
    for j in range(m - 1, -1, -1):
        s = F.zero()
        for i in range(j + 1, m):
            k = m + j - i
            if 0 <= k < m:
                s = s + b[i] * b[k]
        b[j] = (p.coeff(m + j) - s) * inv2lead
    cand = Poly(F, b, p.var)
    return cand if cand * cand == p else None


class RatFunc:
    """A rational function num/den over k[X]: den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly(num.field, [num.field.one()], num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly(num.field, [num.field.one()], num.var)
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num, den = num // g, den // g
            lc = den.lc()
            if lc != den.field.one():
                num, den = num * (num.field.one() / lc), den.monic()
        self.num = num
        self.den = den

    def is_poly(self):
        return self.den.degree() == 0

    def as_poly(self):
        if not self.is_poly():
            raise DegenerateInputError(f"{self!r} is not polynomial")
        return self.num

    def _wrap(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly) and other.field == self.num.field and other.var == self.num.var:
            return RatFunc(other)
        c = self.num.field.coerce(other)
        if c is None:
            return NotImplemented
        return RatFunc(Poly(self.num.field, [c], self.num.var))

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, n):
        if n < 0:
            return (self._wrap(1) / self) ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        if self.is_poly():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


class RatFuncField:
    """Field object for k(X), elements are RatFunc over the field object k."""

    def __init__(self, k, var="X"):
        self.k = k
        self.var = var
        self.char = k.char

    def _poly(self, coeffs):
        return Poly(self.k, coeffs, self.var)

    def zero(self):
        return RatFunc(self._poly([]))

    def one(self):
        return RatFunc(self._poly([self.k.one()]))

    def from_int(self, n):
        return RatFunc(self._poly([self.k.from_int(n)]))

    def gen(self):
        return RatFunc(Poly.gen(self.k, self.var))

    def coerce(self, x):
        if isinstance(x, RatFunc):
            if x.num.field == self.k and x.num.var == self.var:
                return x
            return None
        if isinstance(x, Poly):
            if x.field == self.k and x.var == self.var:
                return RatFunc(x)
            return None
        c = self.k.coerce(x)
        if c is None:
            return None
        return RatFunc(self._poly([c]))

    def order(self):
        return None

    def sort_key(self, x):
        return (x.num.sort_key(), x.den.sort_key())

    def rand(self, rng, height=6):
        num = self._poly([self.k.rand(rng) for _ in range(rng.randint(1, 3))])
        den = self._poly([self.k.rand(rng) for _ in range(rng.randint(1, 3))])
        if den.is_zero():
            den = self._poly([self.k.one()])
        return RatFunc(num, den)

    def __repr__(self):
        return f"{self.k!r}({self.var})"

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and other.k == self.k and other.var == self.var

    def __hash__(self):
        return hash(("RatFuncField", self.k, self.var))
