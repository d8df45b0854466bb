"""Ladder operators on the bound-state polynomials, the normalization
recursion, direct quadrature normalization, and the hyperbolic bound-state
count.

Quadrature contract: adaptive subdivision (QUADPACK) after the substitution
u = exp(-rate*r), which turns the integrand's exponential decay into a
polynomial-like factor and maps semi-infinite domains onto (0, 1].  For
kappa < 0 the integrand is assembled from logs of sinh/cosh so near-threshold
states cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.integrate import quad

from .atom import real_y_coeffs, solve_state, _horner
from .curvature import Curvature
from .errors import (DomainError, LadderGuardError, NoBoundState,
                     QuadratureFailure, QuantumNumberError)
from .polynomials import CPoly, QQi, ONE_PLUS_Z2

_LOG2 = math.log(2.0)


@dataclass(frozen=True, slots=True)
class QuadratureSpec:
    """Tolerances and limits for the adaptive quadrature."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    domain: tuple | None = None     # (r_lo, r_hi); None = full radial domain

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("quadrature tolerances must be positive")


DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True, slots=True)
class LadderCoeffs:
    """Prefactors alpha_l, beta_l of the radial raising/lowering operators."""

    n: int
    l: int
    alpha_l: complex
    beta_l: complex


def ladder_coeffs(n, l, kappa):
    """alpha_l = (2/sqrt(k)) l/(n+l), beta_l = (sqrt(k)/2) n^2/(1+n^2(l+1)^2 k)
    * (l+1)/(n-l-1); complex for kappa < 0."""
    k = Curvature(kappa) if not isinstance(kappa, Curvature) else kappa
    rk = complex(k.value) ** 0.5
    alpha = 2.0 / rk * l / (n + l) if l > 0 else 0.0j
    beta = rk / 2.0 * n * n / (1 + n * n * (l + 1) ** 2 * k.value) \
        * (l + 1) / (n - l - 1)
    return LadderCoeffs(n=n, l=l, alpha_l=alpha, beta_l=beta)


def ratio_beta_alpha(n, l, kappa):
    """Exact beta_l / alpha_{l+1} = (k/4) n^2 (n+l+1) / ((1+n^2(l+1)^2 k)(n-l-1)).

    Signed; for kappa < 0 the sign cancels against the squared state phase,
    so the normalization step uses its absolute value.
    """
    k = kappa.kappa if isinstance(kappa, Curvature) else Fraction(kappa)
    if not 0 <= l <= n - 2:
        raise QuantumNumberError("ratio needs 0 <= l <= n-2")
    den = 1 + n * n * (l + 1) ** 2 * k
    if den == 0:
        raise DomainError("vanishing ladder denominator 1 + n^2(l+1)^2 kappa")
    return k / 4 * Fraction(n * n * (n + l + 1), n - l - 1) / den


def a_plus(y, n, n_r, beta):
    """Raising operator on polynomials: y_{n_r} -> y_{n_r+1}, exactly."""
    if not 0 <= n_r <= n - 2:
        raise QuantumNumberError(f"a_plus needs n_r <= n-2, got n_r={n_r}")
    b = QQi.coerce(beta)
    m = n - n_r - 1
    lin = CPoly([b / QQi(n * m), QQi(-2)])
    out = lin * y + (ONE_PLUS_Z2 * y.derivative()).scale(
        QQi(Fraction(2, 2 * n - n_r - 1)))
    return out.scale(QQi(m))


def a_minus(y, n, n_r, beta):
    """Lowering operator on polynomials: y_{n_r} -> y_{n_r-1}, exactly.

    Raises LadderGuardError if the denominator 4n^2(n-n_r)^2 + beta_R^2
    vanishes (possible for kappa < 0 outside the bound-state region).
    """
    if n_r < 1:
        raise QuantumNumberError("a_minus needs n_r >= 1")
    if n_r > n - 1:
        raise QuantumNumberError(f"n_r must be <= n-1, got {n_r}")
    b = QQi.coerce(beta)
    denom = QQi(4 * n * n * (n - n_r) ** 2) + b * b
    if not denom:
        raise LadderGuardError(
            f"4n^2(n-n_r)^2 + beta_R^2 = 0 at n={n}, n_r={n_r}")
    pref = QQi(n * n * (n - n_r)) / denom
    lin = CPoly([b / QQi(n * (n - n_r)), QQi(2)])
    out = lin * y - (ONE_PLUS_Z2 * y.derivative()).scale(QQi(Fraction(2, n_r)))
    return out.scale(pref)


def expectation_dplus_dminus(n, l, kappa):
    """<d+ d-> in the paper-verbatim closed form
    [n^2-(l+1)^2][1+n^2(l+1)^2 kappa] / (n (l+1)^2), exactly (Z=1)."""
    k = kappa.kappa if isinstance(kappa, Curvature) else Fraction(kappa)
    return Fraction(n * n - (l + 1) ** 2) * (1 + n * n * (l + 1) ** 2 * k) \
        / Fraction(n * (l + 1) ** 2)


def expectation_middle_form(n, l, kappa):
    """The same expectation from kappa*(lambda_E - l(l+2)) + 1/(l+1)^2 (Z=1).

    Simplifies to [n^2-(l+1)^2][1+n^2(l+1)^2 kappa] / (n^2 (l+1)^2): the two
    written forms differ by an exact factor n; see
    expectation_consistency_report.
    """
    k = kappa.kappa if isinstance(kappa, Curvature) else Fraction(kappa)
    # kappa*lambda_E = E_n = -1/n^2 + (n^2-1) kappa, valid at kappa = 0 too
    e_n = Fraction(-1, n * n) + (n * n - 1) * k
    return e_n - k * l * (l + 2) + Fraction(1, (l + 1) ** 2)


def expectation_consistency_report(n_max, kappas, tol=Fraction(1, 10 ** 10)):
    """Probe comparing the two written forms of the expectation value.

    Returns a dict with per-case ratios; 'agree' is True only if every pair
    matches within tol.  The observed systematic discrepancy is the exact
    factor n ('ratio_is_n').
    """
    cases = []
    agree = True
    ratio_is_n = True
    for kap in kappas:
        for n in range(1, n_max + 1):
            for l in range(n):
                v = expectation_dplus_dminus(n, l, kap)
                m = expectation_middle_form(n, l, kap)
                same = abs(v - m) <= tol * max(1, abs(v))
                agree = agree and same
                if m != 0:
                    ratio_is_n = ratio_is_n and (v / m == n)
                cases.append({"n": n, "l": l, "kappa": float(kap),
                              "verbatim": float(v), "middle": float(m),
                              "agree": same})
    return {"agree": agree, "ratio_is_n": ratio_is_n, "cases": cases}


def max_principal_n(kappa, z_charge=1):
    """Largest bound n for kappa < 0 (n^2 < Z/sqrt(-kappa)); inf otherwise."""
    k = kappa.kappa if isinstance(kappa, Curvature) else Fraction(kappa)
    if k >= 0:
        return math.inf
    z2 = Fraction(z_charge) ** 2
    n = int(float(z2 / -k) ** 0.25) + 2
    while n > 0 and n ** 4 * (-k) >= z2:
        n -= 1
    return n


# ---------------------------------------------------------------------------
# quadrature engine


def _integrate_decay(g, rate, r_hi, spec):
    """integral_0^{r_hi} g(r) exp(-rate*r) dr via u = exp(-rate*r)."""
    if rate <= 0:
        raise QuadratureFailure("decay rate must be positive")
    if math.isinf(r_hi):
        u_lo = 0.0
    else:
        x = -rate * r_hi
        u_lo = math.exp(x) if x > -745 else 0.0

    def integrand(u):
        if u <= 0.0:
            return 0.0
        r = -math.log(u) / rate
        if not math.isinf(r_hi) and r >= r_hi:
            return 0.0
        return g(r) / rate

    val, err, info, *rest = quad(integrand, u_lo, 1.0, epsabs=spec.abs_tol,
                                 epsrel=spec.rel_tol,
                                 limit=spec.max_subdivisions, full_output=True)
    if rest:
        raise QuadratureFailure(f"quadrature did not converge: {rest[0]}")
    if err > max(spec.abs_tol, spec.rel_tol * abs(val)) * 50:
        raise QuadratureFailure(f"quadrature error estimate {err} too large")
    return val


def _log_sinh(th):
    return th + math.log1p(-math.exp(-2 * th)) - _LOG2


def _log_cosh(th):
    return th + math.log1p(math.exp(-2 * th)) - _LOG2


def _signed_shape(state):
    """(shape, rate): G(r) = shape(r)*exp(-rate*r) with b_norm and the
    r->0+ sign convention folded in; shapes stay finite in double precision.
    """
    params, qn = state.params, state.qn
    n, l, n_r = qn.n, qn.l, qn.n_r
    zc = float(params.z_charge)
    rate = zc / n
    k = params.kappa.value
    sign = -1.0 if n_r % 2 else 1.0

    if k == 0:
        from .flatlimit import laguerre

        def shape(r):
            x = 2 * zc * r / n
            return state.b_norm * x ** l * laguerre(n_r, 2 * l + 1, x)

        return shape, rate

    coeffs = real_y_coeffs(state)
    if k > 0:
        rk = math.sqrt(k)

        def shape(r):
            th = rk * r
            sn, cs = math.sin(th), math.cos(th)
            if abs(cs) <= abs(sn):
                val = sn ** (n - 1) * _horner(coeffs, cs / sn)
            else:
                val = sn ** l * cs ** n_r * _horner(coeffs[::-1], sn / cs)
            return state.b_norm * sign * val

        return shape, rate

    rk = math.sqrt(-k)

    def shape(r):
        th = rk * r
        if th < 1e-12:
            return 0.0 if l > 0 else state.b_norm * sign * _weighted_y(coeffs, th, n_r)
        w = 1.0 / math.tanh(th)
        yv = _horner(coeffs, w)
        if yv == 0.0:
            return 0.0
        lg = (n - 1) * _log_sinh(th) + math.log(abs(yv))
        if lg > 700.0:
            raise QuadratureFailure("hyperbolic shape overflow")
        return state.b_norm * sign * math.copysign(math.exp(lg), yv)

    return shape, rate


def _weighted_y(coeffs, th, n_r):
    # r -> 0 with l = 0: sinh^{n-1} y(coth) -> leading coefficient survives
    return coeffs[n_r] if n_r < len(coeffs) else 0.0


def _s_squared(curv):
    k = curv.value
    if k == 0:
        return lambda r: r * r
    if k > 0:
        rk = math.sqrt(k)
        return lambda r: (math.sin(rk * r) / rk) ** 2
    rk = math.sqrt(-k)

    def s2(r):
        th = rk * r
        if th < 350.0:
            return (math.sinh(th) / rk) ** 2
        return math.exp(2 * (_log_sinh(th) - math.log(rk)))

    return s2


def _domain(spec, curv):
    if spec.domain is not None:
        return spec.domain
    return (0.0, curv.domain_sup)


def norm_integral(state, spec=DEFAULT_QUAD):
    """integral G^2 S^2 dr for the state as stored (including b_norm)."""
    shape, rate = _signed_shape(state)
    s2 = _s_squared(state.params.kappa)
    r_lo, r_hi = _domain(spec, state.params.kappa)
    if r_lo > 0:
        raise DomainError("normalization domain must start at 0")
    return _integrate_decay(lambda r: shape(r) ** 2 * s2(r), 2 * rate, r_hi, spec)


def normalize(state, spec=DEFAULT_QUAD):
    """State with b_norm set so that integral G^2 S^2 dr = 1."""
    _require_valid(state)
    base = state.with_norm(1.0)
    val = norm_integral(base, spec)
    if val <= 0:
        raise QuadratureFailure(f"normalization integral {val} not positive")
    return state.with_norm(1.0 / math.sqrt(val))


def _require_valid(state):
    from .atom import is_bound
    if not is_bound(state.params, state.qn.n):
        raise NoBoundState(f"state n={state.qn.n} is not bound")


def radial_overlap(state_a, state_b, spec=DEFAULT_QUAD):
    """integral G_a G_b S^2 dr (states as stored, normally both normalized)."""
    if state_a.params != state_b.params:
        raise DomainError("overlap requires identical atom parameters")
    sa, ra = _signed_shape(state_a)
    sb, rb = _signed_shape(state_b)
    s2 = _s_squared(state_a.params.kappa)
    _, r_hi = _domain(spec, state_a.params.kappa)
    return _integrate_decay(lambda r: sa(r) * sb(r) * s2(r), ra + rb, r_hi, spec)


def b_n0(params, n, spec=DEFAULT_QUAD):
    """Base normalization constant: B_{n,0}^{-2} = integral S^2 [ |sqrt(k)S| ]^{2(n-1)}
    e^{-2Zr/n} dr, evaluated by quadrature; NoBoundState outside validity."""
    state = solve_state(params, n, n - 1)     # n_r = 0
    return normalize(state, spec).b_norm


def b_recursive(params, n, n_r, spec=DEFAULT_QUAD):
    """B_{n,n_r} from B_{n,0} by the ladder recursion.

    Each step multiplies by sqrt(|beta_l/alpha_{l+1}|) with l = n - j - 1 at
    step j; the factor under the root is positive for valid bound states for
    both curvature signs.
    """
    if not 0 <= n_r <= n - 1:
        raise QuantumNumberError(f"n_r must be in [0, {n - 1}]")
    from .atom import is_bound
    if not is_bound(params, n):
        raise NoBoundState(f"n={n} not bound at kappa={params.kappa.kappa}")
    b = b_n0(params, n, spec)
    for j in range(1, n_r + 1):
        l = n - j - 1
        fac2 = ratio_beta_alpha(n, l, params.kappa)
        b *= math.sqrt(abs(float(fac2)))
    return b
