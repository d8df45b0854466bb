"""Generalized trigonometric functions of a signed curvature and the curved
Coulomb potential.

Atomic units throughout: a_B = 1, Ry = 1, and kappa is the dimensionless
product kappa*a_B^2.  S, C, T unify the circular (kappa>0), flat (kappa=0)
and hyperbolic (kappa<0) cases and satisfy C^2 + kappa*S^2 = 1, S' = C,
C' = -kappa*S.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError, PoleError
from .polynomials import rational_sqrt

# below this |kappa|*r^2 the closed forms lose digits to cancellation
_SERIES_CUTOFF = 1e-8
# |C| below this at a near-half-period point is treated as an exact pole
_POLE_TOL = 1e-14


class Curvature:
    """Signed sectional curvature in units of a_B^-2.

    Stored exactly as a Fraction so spectra and branch algebra can stay in
    rational arithmetic; float(kappa) feeds the numeric paths.
    """

    __slots__ = ("kappa", "value")

    def __init__(self, kappa):
        if isinstance(kappa, float):
            if not math.isfinite(kappa):
                raise DomainError("curvature must be finite")
            kappa = Fraction(kappa)
        elif isinstance(kappa, str):
            kappa = Fraction(kappa)
        object.__setattr__(self, "kappa", Fraction(kappa))
        object.__setattr__(self, "value", float(self.kappa))

    def __setattr__(self, *a):
        raise AttributeError("Curvature is immutable")

    @property
    def classification(self):
        if self.kappa > 0:
            return "sphere"
        if self.kappa < 0:
            return "hyperbolic"
        return "flat"

    @property
    def radius(self):
        """R = 1/sqrt(-kappa) for the hyperbolic case."""
        if self.kappa >= 0:
            raise DomainError("radius accessor is for kappa < 0")
        return 1.0 / math.sqrt(-self.value)

    @property
    def domain_sup(self):
        """Upper end of the open radial domain: pi/sqrt(kappa), or +inf."""
        if self.kappa > 0:
            return math.pi / math.sqrt(self.value)
        return math.inf

    def sqrt_abs_exact(self):
        """Exact rational sqrt(|kappa|), or None when irrational."""
        return rational_sqrt(abs(self.kappa))

    def __eq__(self, other):
        return isinstance(other, Curvature) and self.kappa == other.kappa

    def __hash__(self):
        return hash(self.kappa)

    def __repr__(self):
        return f"Curvature({self.kappa})"


def _as_curv(kappa):
    return kappa if isinstance(kappa, Curvature) else Curvature(kappa)


def s_kappa(kappa, r):
    """Generalized sine: sin(sqrt(k)r)/sqrt(k), r, or sinh(sqrt(-k)r)/sqrt(-k)."""
    k = _as_curv(kappa).value
    if r < 0:
        raise DomainError("r must be nonnegative")
    u = k * r * r
    if abs(u) < _SERIES_CUTOFF:
        return r * (1.0 - u / 6.0 + u * u / 120.0)
    if k > 0:
        rt = math.sqrt(k)
        return math.sin(rt * r) / rt
    rt = math.sqrt(-k)
    return math.sinh(rt * r) / rt


def c_kappa(kappa, r):
    """Generalized cosine: cos(sqrt(k)r), 1, or cosh(sqrt(-k)r)."""
    k = _as_curv(kappa).value
    if r < 0:
        raise DomainError("r must be nonnegative")
    u = k * r * r
    if abs(u) < _SERIES_CUTOFF:
        return 1.0 - u / 2.0 + u * u / 24.0
    if k > 0:
        return math.cos(math.sqrt(k) * r)
    return math.cosh(math.sqrt(-k) * r)


def t_kappa(kappa, r):
    """Generalized tangent S/C; PoleError where the generalized cosine vanishes."""
    c = c_kappa(kappa, r)
    if abs(c) < _POLE_TOL:
        raise PoleError(f"generalized tangent pole at r={r}")
    return s_kappa(kappa, r) / c


def _check_open_domain(curv, r):
    if r <= 0:
        raise DomainError("r must be positive")
    if curv.kappa > 0 and r >= curv.domain_sup:
        raise DomainError(
            f"r={r} outside the sphere's radial domain (0, {curv.domain_sup})")


def coulomb_potential(kappa, r, z_charge=1):
    """Point-source potential -Z/T_kappa(r) on the open radial domain.

    Value is in e^2/a_B units (so the Rydberg-unit radial equation carries a
    factor 2: the Coulomb term there is 2*coulomb_potential).
    """
    curv = _as_curv(kappa)
    _check_open_domain(curv, r)
    # cot form: finite where T has its mid-domain pole, divergent only at the
    # domain ends, which _check_open_domain already excludes
    return -float(z_charge) * c_kappa(curv, r) / s_kappa(curv, r)
