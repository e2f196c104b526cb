"""Exact arithmetic in Q(K), the field of rational functions of the time parameter K.

Q(K) is ordered by eventual sign as K -> +infinity.  Everything here is exact;
no floating point is used.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "Poly",
    "RatFunc",
    "PoleError",
    "K",
    "ONE",
    "ZERO",
    "as_ratfunc",
    "compare_asymptotic",
    "limit_at_infinity",
    "eval_at",
    "sign_threshold",
    "asymptotic_sign",
    "cauchy_bound",
]

Scalar = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a root of its denominator."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """Dense univariate polynomial in K; ``coeffs[d]`` is the coefficient of K^d."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        # caller guarantees Fractions with nonzero leading entry
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> float:
        """Degree; the zero polynomial has degree ``-math.inf``."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        return _render_poly(self.coeffs)

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out) if len(a) == len(b) else Poly._raw(tuple(out))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        if len(b) == 1:
            s = b[0]
            return Poly._raw(tuple(c * s for c in a))
        if len(a) == 1:
            s = a[0]
            return Poly._raw(tuple(c * s for c in b))
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(tuple(out))

    def scale(self, s) -> "Poly":
        s = _frac(s)
        if s == 0:
            return Poly()
        return Poly._raw(tuple(c * s for c in self.coeffs))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for shift in range(len(rem) - 1 - db, -1, -1):
            c = rem[shift + db] / lead
            quot[shift] = c
            if c:
                for j, bc in enumerate(other.coeffs):
                    rem[shift + j] -= c * bc
        return Poly(quot), Poly(rem[:db])

    def exact_div(self, other: "Poly") -> "Poly":
        if len(other.coeffs) == 1:
            return self.scale(1 / other.coeffs[0])
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(1 / self.coeffs[-1])

    def __call__(self, k) -> Fraction:
        k = _frac(k)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q by the Euclidean algorithm; gcd(0, 0) = 0."""
    if len(a.coeffs) < len(b.coeffs):
        a, b = b, a
    if not b.coeffs:
        return a.monic()
    if len(b.coeffs) == 1:
        return Poly._raw((Fraction(1),))
    while b.coeffs:
        _, r = a.divmod(b)
        a, b = b, r.monic()
    return a.monic()


def _render_poly(coeffs: Sequence[Fraction]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        if d == 0:
            parts.append(str(c))
        elif d == 1:
            parts.append(f"{c}K")
        else:
            parts.append(f"{c}K^{d}")
    return " + ".join(parts)


_ONE_POLY = Poly((1,))


class RatFunc:
    """An element of Q(K) in canonical form.

    Canonical means gcd(num, den) = 1 and ``den`` is monic, so two values are
    equal iff their (num, den) pairs are identical.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if not isinstance(num, Poly):
            num = Poly((num,)) if not isinstance(num, (list, tuple)) else Poly(num)
        if not isinstance(den, Poly):
            den = Poly((den,)) if not isinstance(den, (list, tuple)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, _ONE_POLY
            return
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
        lead = den.coeffs[-1]
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def poly(cls, coeffs) -> "RatFunc":
        return cls._raw(Poly(coeffs), _ONE_POLY)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.coeffs

    def is_polynomial(self) -> bool:
        return len(self.den.coeffs) == 1

    def is_constant(self) -> bool:
        return len(self.den.coeffs) == 1 and len(self.num.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.num.coeffs)

    # -- equality / hashing -----------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RatFunc({list(map(str, self.num.coeffs))}, {list(map(str, self.den.coeffs))})"

    def __str__(self):
        if self.is_polynomial():
            return _render_poly(self.num.coeffs)
        return f"({self.num})/({self.den})"

    # -- field operations -------------------------------------------------
    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if len(b.coeffs) == 1 and len(d.coeffs) == 1:
            return RatFunc._raw(a + c, _ONE_POLY)
        if not a.coeffs:
            return other
        if not c.coeffs:
            return self
        if b == d:
            return RatFunc(a + c, b)
        # Henrici: only the common part of the denominators can cancel
        g = poly_gcd(b, d)
        if g.is_constant():
            num = a * d + c * b
            if not num.coeffs:
                return RatFunc._raw(num, _ONE_POLY)
            return RatFunc._raw(num, b * d)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        num = a * d1 + c * b1
        if not num.coeffs:
            return RatFunc._raw(num, _ONE_POLY)
        h = poly_gcd(num, g)
        if not h.is_constant():
            num, g = num.exact_div(h), g.exact_div(h)
        return RatFunc._raw(num, b1 * d1 * g)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a.coeffs or not c.coeffs:
            return RatFunc._raw(Poly(), _ONE_POLY)
        if len(b.coeffs) == 1 and len(d.coeffs) == 1:
            return RatFunc._raw(a * c, _ONE_POLY)
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_constant():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_constant():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RatFunc._raw(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.coeffs:
            raise ZeroDivisionError("division by the zero element of Q(K)")
        num, den = self.den, self.num
        lead = den.coeffs[-1]
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        return RatFunc._raw(num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_constant():
            c = other.constant_value()
            if c == 0:
                raise ZeroDivisionError("division by the zero element of Q(K)")
            return RatFunc._raw(self.num.scale(1 / c), self.den)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order (eventual, K -> +infinity) ----------------------------------
    def __lt__(self, other):
        return compare_asymptotic(self, other) < 0

    def __le__(self, other):
        return compare_asymptotic(self, other) <= 0

    def __gt__(self, other):
        return compare_asymptotic(self, other) > 0

    def __ge__(self, other):
        return compare_asymptotic(self, other) >= 0

    def __call__(self, k):
        return eval_at(self, k)


def _coerce(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc._raw(Poly((x,)) if x else Poly(), _ONE_POLY)
    if isinstance(x, Poly):
        return RatFunc._raw(x, _ONE_POLY)
    return None


def as_ratfunc(x) -> RatFunc:
    r = _coerce(x)
    if r is None:
        if isinstance(x, str):
            return RatFunc(Fraction(x))
        raise TypeError(f"cannot interpret {x!r} as an element of Q(K)")
    return r


K = RatFunc.poly([0, 1])
ONE = RatFunc.poly([1])
ZERO = RatFunc.poly([])


def asymptotic_sign(f) -> int:
    """Eventual sign of f(k) as k -> +infinity: -1, 0 or +1."""
    if isinstance(f, RatFunc):
        if not f.num.coeffs:
            return 0
        # den is monic, so the sign is that of the numerator's leading coefficient
        return 1 if f.num.coeffs[-1] > 0 else -1
    return (f > 0) - (f < 0)


def compare_asymptotic(f, g) -> int:
    """Return -1, 0 or +1 as f is eventually less than, equal to, or greater than g."""
    return asymptotic_sign(as_ratfunc(f) - as_ratfunc(g))


def limit_at_infinity(f) -> Fraction | float:
    """Limit as K -> +infinity: an exact Fraction, or +/- ``math.inf``."""
    f = as_ratfunc(f)
    if f.is_zero():
        return Fraction(0)
    dn, dd = f.num.degree, f.den.degree
    if dn < dd:
        return Fraction(0)
    if dn == dd:
        return f.num.lead / f.den.lead
    return math.inf if f.num.lead / f.den.lead > 0 else -math.inf


def eval_at(f, k) -> Fraction:
    """Exact value f(k); raises PoleError at a root of the denominator."""
    f = as_ratfunc(f)
    k = _frac(k)
    d = f.den(k)
    if d == 0:
        raise PoleError(f"{f} has a pole at K = {k}")
    return f.num(k) / d


def cauchy_bound(p: Poly) -> Fraction:
    """1 + max|a_i|/|a_d|; every real root of p lies strictly inside it.

    A constant polynomial has no roots and contributes 0.
    """
    if len(p.coeffs) <= 1:
        return Fraction(0)
    lead = abs(p.coeffs[-1])
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


def sign_threshold(f) -> Fraction:
    """K0 such that sign(f(k)) equals the asymptotic sign of f for every k > K0."""
    f = as_ratfunc(f)
    if f.is_zero():
        raise ValueError("the zero element has no stable nonzero sign")
    return max(cauchy_bound(f.num), cauchy_bound(f.den))
