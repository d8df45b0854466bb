"""Exact arithmetic on complex-rational numbers, univariate polynomials, and
the closed differentiation family P(z)*(1+z^2)^m*exp(a*arctan z).

Coefficients are complex rationals (QQi): real and imaginary parts are
arbitrary-precision fractions.Fraction values, so polynomial identities can
be asserted bit-exactly.  Floating point enters only in evaluate().
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from math import isqrt

from .errors import BranchPointError

Scalarish = "int | Fraction | QQi"


def rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class QQi:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(v):
        if isinstance(v, QQi):
            return v
        if isinstance(v, (int, Fraction)):
            return QQi(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to QQi")

    def __add__(self, other):
        other = QQi.coerce(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = QQi.coerce(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        other = QQi.coerce(other)
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QQi.coerce(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero QQi")
        return QQi((self.re * other.re + self.im * other.im) / d,
                   (self.im * other.re - self.re * other.im) / d)

    def __rtruediv__(self, other):
        return QQi.coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("QQi power must be a nonnegative integer")
        out, base = QQi(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            other = QQi.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return QQi(self.re, -self.im)

    def is_real(self):
        return self.im == 0

    def sqrt(self):
        """A square root in Q(i) (canonical: Re > 0, or Re = 0 and Im >= 0).

        Returns None when no exact complex-rational root exists.
        """
        if not self:
            return QQi(0)
        mod2 = self.re * self.re + self.im * self.im
        m = rational_sqrt(mod2)
        if m is None:
            return None
        x2 = (m + self.re) / 2
        y2 = (m - self.re) / 2
        x = rational_sqrt(x2)
        y = rational_sqrt(y2)
        if x is None or y is None:
            return None
        root = QQi(x, y if self.im >= 0 else -y)
        if root * root != self:   # guards sign bookkeeping
            return None
        return root

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"


_ZERO = QQi(0)
_ONE = QQi(1)


class CPoly:
    """Univariate polynomial over QQi, coefficients ascending in degree.

    Immutable; trailing zero coefficients are trimmed so the zero polynomial
    has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [QQi.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("CPoly is immutable")

    @staticmethod
    def coerce(v):
        if isinstance(v, CPoly):
            return v
        return CPoly([QQi.coerce(v)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coeff(self, j):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else _ZERO

    def leading(self):
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        other = CPoly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return CPoly([self.coeff(j) + other.coeff(j) for j in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = CPoly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return CPoly([self.coeff(j) - other.coeff(j) for j in range(n)])

    def __rsub__(self, other):
        return CPoly.coerce(other) - self

    def __neg__(self):
        return CPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            return self.scale(other)
        other = CPoly.coerce(other)
        if self.is_zero() or other.is_zero():
            return CPoly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return CPoly(out)

    __rmul__ = __mul__

    def scale(self, s):
        s = QQi.coerce(s)
        return CPoly([c * s for c in self.coeffs])

    def derivative(self):
        return CPoly([QQi.coerce(j) * c for j, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, a, b):
        """p(a*z + b), exactly, by Horner over the coefficient field."""
        arg = CPoly([QQi.coerce(b), QQi.coerce(a)])
        out = CPoly()
        for c in reversed(self.coeffs):
            out = out * arg + CPoly([c])
        return out

    def divmod(self, other):
        """Exact polynomial division: (quotient, remainder)."""
        other = CPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [_ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        while len(rem) - 1 >= d and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < d:
                break
            shift = len(rem) - 1 - d
            factor = rem[-1] / lead
            q[shift] = factor
            for j in range(d + 1):
                rem[shift + j] = rem[shift + j] - factor * other.coeffs[j]
        return CPoly(q), CPoly(rem)

    def eval_exact(self, z):
        z = QQi.coerce(z)
        out = _ZERO
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def evaluate(self, z):
        """Floating-point Horner evaluation (complex in, complex out)."""
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + complex(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, (CPoly, int, Fraction, QQi)):
            return NotImplemented
        return self.coeffs == CPoly.coerce(other).coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "CPoly(0)"
        terms = ", ".join(repr(c) for c in self.coeffs)
        return f"CPoly([{terms}])"


CPoly.zero = CPoly()
CPoly.one = CPoly([1])
CPoly.x = CPoly([0, 1])
# 1 + z^2 underlies the whole differentiation family below.
ONE_PLUS_Z2 = CPoly([1, 0, 1])


def complex_arctan(z):
    """Principal-branch arctan via (i/2) ln((1-iz)/(1+iz)); real z stays real."""
    if isinstance(z, (int, float, Fraction)):
        return math.atan(float(z))
    if z == 1j or z == -1j:
        raise BranchPointError("arctan has branch points at z = +-i")
    return 0.5j * cmath.log((1 - 1j * z) / (1 + 1j * z))


class ExpPoly:
    """Exact representative of P(z) * (1+z^2)^m * exp(a*arctan z).

    m is an exact rational, a an exact complex rational; the family is closed
    under d/dz, so repeated exact differentiation (Rodrigues products, Pearson
    checks) stays inside it.
    """

    __slots__ = ("p", "m", "a")

    def __init__(self, p, m=0, a=0):
        object.__setattr__(self, "p", CPoly.coerce(p))
        object.__setattr__(self, "m", Fraction(m))
        object.__setattr__(self, "a", QQi.coerce(a))

    def __setattr__(self, *a):
        raise AttributeError("ExpPoly is immutable")

    def derive(self):
        """Exact derivative: (P'(1+z^2) + (2mz + a)P, m-1, a)."""
        p_new = self.p.derivative() * ONE_PLUS_Z2 \
            + CPoly([self.a, QQi.coerce(2 * self.m)]) * self.p
        return ExpPoly(p_new, self.m - 1, self.a)

    def canonical(self):
        """Fold (1+z^2) factors of P into the exponent m."""
        if self.p.is_zero():
            return ExpPoly(CPoly(), 0, self.a)
        p, m = self.p, self.m
        while p.degree >= 2:
            q, r = p.divmod(ONE_PLUS_Z2)
            if not r.is_zero():
                break
            p, m = q, m + 1
        return ExpPoly(p, m, self.a)

    def __eq__(self, other):
        if not isinstance(other, ExpPoly):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        if a.p.is_zero() and b.p.is_zero():
            return True
        return a.p == b.p and a.m == b.m and a.a == b.a

    def __hash__(self):
        c = self.canonical()
        return hash((c.p, c.m, c.a))

    def evaluate(self, z):
        """Floating-point value, principal branches for complex z."""
        if self.m < 0 and (z == 1j or z == -1j):
            raise BranchPointError("(1+z^2)^m singular at z = +-i")
        base = 1 + z * z
        if isinstance(z, complex) or isinstance(base, complex):
            pw = cmath.exp(float(self.m) * cmath.log(base)) if base != 0 else 0j
        else:
            pw = float(base) ** float(self.m)
        return self.p.evaluate(z) * pw * cmath.exp(complex(self.a) * complex_arctan(z))

    def __repr__(self):
        return f"ExpPoly({self.p!r}, m={self.m}, a={self.a!r})"
