"""Curved hydrogen-like atom: spectrum, gauge function, and radial wave
functions, with three independent constructions of the bound-state
polynomials (three-term recurrence, derivative recurrence, Jacobi connection)
cross-checkable against the exact Rodrigues oracle in nu.py.

Conventions: atomic units (a_B = 1, energies in Ry), kappa dimensionless
(kappa*a_B^2), optional charge multiplier Z scaling e^2 -> Z e^2.  The
dimensionless variable is z = 1/(sqrt(kappa) T_kappa(r)), which is cot for
the sphere and -i*coth for hyperbolic space; kappa < 0 runs through the same
complex formulas with principal branches, and reality of the final radial
value is asserted rather than re-derived.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .curvature import Curvature, _check_open_domain
from .errors import (BranchPointError, DomainError, FlatCurvatureError,
                     ImaginaryResidueError, NoBoundState, QuantumNumberError)
from .nu import GHTProblem, enumerate_branches, lambda_n, select_physical
from .polynomials import CPoly, QQi, complex_arctan

IM_RESIDUE_REL = 1e-10   # reality assertion for the complex kappa<0 path


@dataclass(frozen=True, slots=True)
class AtomParams:
    """Curvature plus the optional charge multiplier Z (default 1)."""

    kappa: Curvature
    z_charge: Fraction = Fraction(1)

    def __post_init__(self):
        if not isinstance(self.kappa, Curvature):
            object.__setattr__(self, "kappa", Curvature(self.kappa))
        object.__setattr__(self, "z_charge", Fraction(self.z_charge))
        if self.z_charge <= 0:
            raise DomainError("z_charge must be positive")


@dataclass(frozen=True, slots=True)
class QuantumNumbers:
    """Principal n >= 1 and orbital l in [0, n-1]; n_r = n - l - 1."""

    n: int
    l: int

    def __post_init__(self):
        if self.n < 1:
            raise QuantumNumberError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise QuantumNumberError(f"l must be in [0, {self.n - 1}], got {self.l}")

    @property
    def n_r(self):
        return self.n - self.l - 1


def is_bound(params, n):
    """Bound-state test: always true for kappa >= 0, else n^2 < Z/sqrt(-kappa)."""
    if n < 1:
        return False
    k = params.kappa.kappa
    if k >= 0:
        return True
    # n^2 sqrt(-kappa) < Z, squared to stay rational
    return n ** 4 * (-k) < params.z_charge ** 2


def _require_bound(params, n):
    if not is_bound(params, n):
        raise NoBoundState(
            f"n={n} is not a bound state for kappa={params.kappa.kappa} "
            f"(requires n^2 < Z/sqrt(-kappa))")


def energy(params, n):
    """Exact level energy E_n = -Z^2/n^2 + (n^2 - 1) kappa, in Ry."""
    if not isinstance(n, int) or n < 1:
        raise QuantumNumberError(f"n must be a positive integer, got {n}")
    _require_bound(params, n)
    z = params.z_charge
    return -z * z / Fraction(n * n) + Fraction(n * n - 1) * params.kappa.kappa


def beta_r(params):
    """Coulomb-strength parameter 2Z/sqrt(kappa) as an exact complex rational.

    Real for kappa > 0, negative-imaginary for kappa < 0 (principal root).
    When sqrt(|kappa|) is irrational the exact binary rational of the float
    value is used, so downstream polynomial arithmetic stays exact in it.
    """
    k = params.kappa.kappa
    if k == 0:
        raise FlatCurvatureError("beta_r undefined at kappa = 0")
    root = params.kappa.sqrt_abs_exact()
    if root is None:
        root = Fraction(math.sqrt(abs(params.kappa.value)))
    mag = 2 * params.z_charge / root
    return QQi(mag, 0) if k > 0 else QQi(0, -mag)


def lambda_e(params, e):
    """Dimensionless energy lambda_E = E/kappa (E in Ry, kappa in a_B^-2)."""
    if params.kappa.kappa == 0:
        raise FlatCurvatureError("lambda_E undefined at kappa = 0")
    return Fraction(e) / params.kappa.kappa


def z_of_r(params, r):
    """Dimensionless variable z = 1/(sqrt(kappa) T_kappa(r)).

    Real cot(sqrt(kappa) r) on the sphere; -i coth(sqrt(-kappa) r) (complex)
    for hyperbolic space.
    """
    k = params.kappa.value
    if k == 0:
        raise FlatCurvatureError("z undefined at kappa = 0")
    _check_open_domain(params.kappa, r)
    if k > 0:
        th = math.sqrt(k) * r
        return math.cos(th) / math.sin(th)
    th = math.sqrt(-k) * r
    return complex(0.0, -math.cosh(th) / math.sinh(th))


def ght_problem(params, e, l):
    """Generalized hypergeometric data of the radial equation in z at energy e:
    sigma = 1 + z^2, pi1 = 0, sigma1 = lambda_E + beta_R z - l(l+1)(1+z^2).
    """
    le = lambda_e(params, e)
    return _ght_from_lambda_e(params, QQi(le), l)


def _ght_from_lambda_e(params, le, l):
    b = beta_r(params)
    ll = l * (l + 1)
    sigma1 = CPoly([le - ll, b, -ll])
    return GHTProblem(sigma=CPoly([1, 0, 1]), pi1=CPoly(), sigma1=sigma1)


@dataclass(frozen=True, slots=True)
class SpectrumSolution:
    """Exact output of the quantization chain for one (n_r, l)."""

    sqrt_x: int              # physical root, = n_r + l + 1 = n
    rejected_sqrt_x: int     # the root n_r - l (needs n_r >= l; diagnostics only)
    lambda_e: Fraction
    energy: Fraction


def nu_spectrum(params, n_r, l):
    """Spectrum via the termination condition, exactly in rational arithmetic.

    Solves the quadratic x - (2 n_r + 1) sqrt(x) + n_r(n_r+1) - l(l+1) = 0 for
    sqrt(x), keeps the root with the correct flat limit, and converts
    lambda_E = x - 1 - beta_R^2/(4x) to E = kappa*lambda_E.  beta_R^2 =
    4 Z^2/kappa needs no square root, so this is exact for every rational
    kappa.
    """
    if n_r < 0 or l < 0:
        raise QuantumNumberError("n_r and l must be nonnegative")
    k = params.kappa.kappa
    if k == 0:
        raise FlatCurvatureError("the z-variable pipeline needs kappa != 0")
    n = n_r + l + 1
    # both roots of the sqrt(x) quadratic, checked exactly
    for s in (n, n_r - l):
        assert s * s - (2 * n_r + 1) * s + n_r * (n_r + 1) - l * (l + 1) == 0
    x = Fraction(n * n)
    beta_sq = 4 * params.z_charge ** 2 / k
    le = x - 1 - beta_sq / (4 * x)
    return SpectrumSolution(sqrt_x=n, rejected_sqrt_x=n_r - l,
                            lambda_e=le, energy=k * le)


def atom_branch(params, n, l):
    """The physically selected NU branch at E = E_n.

    The generic negative-pi'-predicate is ambiguous for kappa < 0 (both
    discriminant roots give real-negative pi') and empty for n = 1 (pi' = 0),
    so selection here additionally demands the termination identity
    lambda = lambda_{n_r}, which is unique for valid bound states.
    """
    qn = QuantumNumbers(n, l)
    b = beta_r(params)
    # lambda_E built from beta_R itself so the branch algebra closes exactly
    # even when sqrt(kappa) was approximated
    le = QQi(n * n - 1) - b * b / QQi(4 * n * n)
    problem = _ght_from_lambda_e(params, le, l)
    branches = enumerate_branches(problem)

    def quantized(branch):
        pp = branch.pi_prime
        if not (pp.is_real() and pp.re <= 0):
            return False
        return branch.lam == lambda_n(branch, problem.sigma, qn.n_r)

    return select_physical(branches, quantized)


def y_recurrence(n, n_r, beta):
    """Bound-state polynomial y_{n_r}^n by the three-term recurrence.

    Seeds y_0 = 1, y_1 = 2(1-n) z + beta_R/n; exact coefficients.
    """
    _check_poly_indices(n, n_r)
    b = QQi.coerce(beta)
    prev = CPoly.one
    if n_r == 0:
        return prev
    cur = CPoly([b / QQi(n), QQi(2 * (1 - n))])
    for j in range(2, n_r + 1):
        c1 = QQi(Fraction(2 * n + 1 - 2 * j, 2 * n - j))
        bracket = CPoly([b / QQi(n + 1 - j), QQi(-2 * (n - j))])
        c2 = QQi(Fraction((j - 1) * (n - j), 2 * n - j)) \
            * (QQi(4 * (n + 1 - j)) + b * b / QQi(n * n * (n + 1 - j)))
        nxt = bracket.scale(c1) * cur - prev.scale(c2)
        prev, cur = cur, nxt
    return cur


def y_derivative_recurrence(n, n_r, beta):
    """Same polynomials via the first-order (derivative) recurrence."""
    _check_poly_indices(n, n_r)
    b = QQi.coerce(beta)
    one_plus_z2 = CPoly([1, 0, 1])
    y = CPoly.one
    for j in range(n_r):
        lin = CPoly([b / QQi(n), QQi(2 * (1 - n + j))])
        c = QQi(Fraction(2 * (1 - n + j), 2 * n - j - 1))
        y = lin * y - (one_plus_z2 * y.derivative()).scale(c)
    return y


def _check_poly_indices(n, n_r):
    if n < 1:
        raise QuantumNumberError(f"n must be >= 1, got {n}")
    if not 0 <= n_r <= n - 1:
        raise QuantumNumberError(f"n_r must be in [0, {n - 1}], got {n_r}")


def jacobi_connection(n, n_r, params):
    """y_{n_r}^n via complex Jacobi polynomials (floating path).

    Evaluates (-i)^{n_r} 2^{n_r} n_r! P_{n_r}^{(alpha,beta)}(i z) with
    alpha/beta = -n +- i beta_R/(2n), expanding the standard Jacobi
    three-term recurrence directly in powers of z.  Returns ascending complex
    coefficients.
    """
    _check_poly_indices(n, n_r)
    if params.kappa.kappa == 0:
        raise FlatCurvatureError("Jacobi connection needs kappa != 0")
    b = complex(beta_r(params))
    al = -n + 1j * b / (2 * n)
    be = -n - 1j * b / (2 * n)
    ab = al + be

    prev = [0j]          # P_{-1}
    cur = [1 + 0j]       # P_0
    for j in range(n_r):
        qa = (2 * j + ab + 1) * (2 * j + ab + 2) / (2 * (j + 1) * (j + ab + 1))
        qb = (al * al - be * be) * (2 * j + ab + 1) \
            / (2 * (j + 1) * (j + ab + 1) * (2 * j + ab))
        qc = (j + al) * (j + be) * (2 * j + ab + 2) \
            / ((j + 1) * (j + ab + 1) * (2 * j + ab))
        # next(z) = qa*(i z)*cur + qb*cur - qc*prev, as coefficients in z
        nxt = [0j] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += qa * 1j * c
            nxt[i] += qb * c
        for i, c in enumerate(prev):
            nxt[i] -= qc * c
        prev, cur = cur, nxt

    scale = (-1j) ** n_r * 2 ** n_r * math.factorial(n_r)
    return [scale * c for c in cur]


def gauge_phi(n, beta, z):
    """Gauge exponent phi = -(n-1)/2 ln(1+z^2) + (beta_R/2n) arctan z."""
    zc = complex(z)
    if zc == 1j or zc == -1j:
        raise BranchPointError("gauge function singular at z = +-i")
    b = complex(QQi.coerce(beta))
    return -0.5 * (n - 1) * cmath.log(1 + zc * zc) \
        + b / (2 * n) * complex_arctan(zc)


@dataclass(frozen=True, slots=True)
class RadialState:
    """One bound state: quantum numbers, y-polynomial, normalization.

    b_norm = 1.0 means unnormalized; normalization.normalize() returns a copy
    with the quadrature value filled in.  For kappa = 0 the polynomial fields
    are None and evaluation goes through the flat Laguerre form.
    """

    qn: QuantumNumbers
    params: AtomParams
    y: CPoly | None
    beta: QQi | None
    energy: Fraction
    b_norm: float = 1.0

    def with_norm(self, b):
        return replace(self, b_norm=float(b))


def solve_state(params, n, l):
    """Construct the (unnormalized) bound state for (n, l)."""
    qn = QuantumNumbers(n, l)
    e = energy(params, n)
    if params.kappa.kappa == 0:
        return RadialState(qn=qn, params=params, y=None, beta=None, energy=e)
    b = beta_r(params)
    y = y_recurrence(n, qn.n_r, b)
    return RadialState(qn=qn, params=params, y=y, beta=b, energy=e)


def real_y_coeffs(state):
    """Real coefficients of the radial polynomial factor, exactly.

    kappa > 0: coefficients of y in z = cot (all real already).
    kappa < 0: coefficients of Y in w = coth, where y(-i w) = (-i)^{n_r} Y(w);
    the transform i^{n_r} (-i)^j c_j is exactly real -- asserting that is the
    exact-arithmetic form of the reality check.
    """
    k = state.params.kappa.kappa
    n_r = state.qn.n_r
    if k == 0:
        raise FlatCurvatureError("flat states have no z-polynomial")
    out = []
    i_unit = QQi(0, 1)
    for j, c in enumerate(state.y.coeffs):
        if k > 0:
            if c.im != 0:
                raise ImaginaryResidueError("spherical y must be real")
            out.append(float(c.re))
        else:
            t = i_unit ** (n_r % 4) * (-i_unit) ** (j % 4) * c
            if t.im != 0:
                raise ImaginaryResidueError("hyperbolic realification failed")
            out.append(float(t.re))
    out += [0.0] * (n_r + 1 - len(out))
    return out


def _horner(coeffs, x):
    out = coeffs[-1] if coeffs else 0.0
    for c in reversed(coeffs[:-1]):
        out = out * x + c
    return out


def evaluate_radial(state, r):
    """Radial wave function G(r) = B [sqrt(k) S]^{n-1} e^{-Zr/n} y(z(r)).

    Sign convention: G > 0 as r -> 0+, which works out to a (-1)^{n_r} factor
    on the raw product.  For kappa < 0 the product is assembled in complex
    arithmetic and the imaginary residue is checked before being discarded.
    """
    params, qn = state.params, state.qn
    k = params.kappa.value
    _check_open_domain(params.kappa, r)
    n, l, n_r = qn.n, qn.l, qn.n_r
    zc = float(params.z_charge)
    expo = math.exp(-zc * r / n)
    sign = -1.0 if n_r % 2 else 1.0

    if params.kappa.kappa == 0:
        from .flatlimit import laguerre
        x = 2 * zc * r / n
        return state.b_norm * x ** l * expo * laguerre(n_r, 2 * l + 1, x)

    if k > 0:
        th = math.sqrt(k) * r
        sn, cs = math.sin(th), math.cos(th)
        coeffs = [float(c.re) for c in state.y.coeffs]
        coeffs += [0.0] * (n_r + 1 - len(coeffs))
        z = cs / sn
        if abs(z) <= 1.0:
            val = sn ** (n - 1) * _horner(coeffs, z)
        else:
            # y(z) = z^{n_r} q(1/z); sin^{n-1} z^{n_r} = sin^l cos^{n_r}
            val = sn ** l * cs ** n_r * _horner(coeffs[::-1], sn / cs)
        return state.b_norm * sign * expo * val

    th = math.sqrt(-k) * r
    sh, ch = math.sinh(th), math.cosh(th)
    coeffs = [complex(c) for c in state.y.coeffs]
    coeffs += [0j] * (n_r + 1 - len(coeffs))
    # factored complex form: (i sh)^{n-1} y(-i coth) = i^l sh^l ch^{n_r} q(i tanh);
    # the i^l phase cancels exactly against the i^{-l} reality correction
    q = _horner(coeffs[::-1], complex(0.0, sh / ch))
    v = sh ** l * ch ** n_r * q
    if abs(v.imag) > IM_RESIDUE_REL * (abs(v.real) + 1e-300):
        raise ImaginaryResidueError(
            f"imaginary residue {v.imag} at r={r} exceeds tolerance")
    return state.b_norm * sign * expo * v.real
