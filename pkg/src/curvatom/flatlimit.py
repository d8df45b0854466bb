"""Associated Laguerre polynomials (Arfken/Weber convention), the flat-space
hydrogen radial function, the Duff identity with an exact symbolic oracle,
and flat-limit convergence checks of the curved results.

The Duff identity d^n/dt^n [t^-k e^(1/t)] = (-1)^n n! t^-(n+k) e^(1/t)
L_n^{k-1}(-1/t) involves an essential singularity at t = 0, so it is verified
in exact arithmetic on the closed family P(u) u^k e^u, u = 1/t, never
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import QuantumNumberError
from .polynomials import CPoly, QQi


def laguerre(n, k, x):
    """L_n^k(x) by the forward three-term recurrence from L_0 = 1, L_1 = k+1-x."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev = 1.0
    if n == 0:
        return prev
    cur = k + 1.0 - x
    for j in range(1, n):
        prev, cur = cur, ((2 * j + k + 1 - x) * cur - (j + k) * prev) / (j + 1)
    return cur


def laguerre_poly(n, k):
    """L_n^k as an exact CPoly in x, same recurrence over rationals."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev = CPoly.one
    if n == 0:
        return prev
    cur = CPoly([k + 1, -1])
    for j in range(1, n):
        lin = CPoly([2 * j + k + 1, -1])
        nxt = (lin * cur - prev.scale(j + k)).scale(QQi(Fraction(1, j + 1)))
        prev, cur = cur, nxt
    return cur


def laguerre_derivative_identity_check(n, k, x, tol=1e-9):
    """Check x dL_n^k/dx = n L_n^k - (n+k) L_{n-1}^k with a 5-point stencil.

    The residual is compared at tol relative to the identity's term scale
    (the terms reach ~1e4 on the sweep grid, so an absolute 1e-9 would sit
    below float roundoff).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    h = 1e-3 * max(1.0, abs(x))
    d = (laguerre(n, k, x - 2 * h) - 8 * laguerre(n, k, x - h)
         + 8 * laguerre(n, k, x + h) - laguerre(n, k, x + 2 * h)) / (12 * h)
    lhs = x * d
    rhs = n * laguerre(n, k, x) - (n + k) * laguerre(n - 1, k, x)
    scale = max(1.0, abs(lhs), abs(rhs))
    return abs(lhs - rhs) <= tol * scale


@dataclass(frozen=True, slots=True)
class InvExpPoly:
    """Exact representative of P(u) u^k e^u with u = 1/t.

    Closed under d/dt: the derivative is -(u P' + k P + u P) u^(k+1) e^u.
    """

    p: CPoly
    k_exp: int

    def derive(self):
        u = CPoly.x
        new_p = -(u * self.p.derivative() + self.p.scale(self.k_exp) + u * self.p)
        return InvExpPoly(p=new_p, k_exp=self.k_exp + 1)

    def canonical(self):
        p, k = self.p, self.k_exp
        if p.is_zero():
            return InvExpPoly(p=CPoly(), k_exp=0)
        while not p.coeff(0):
            p, _ = p.divmod(CPoly.x)
            k += 1
        return InvExpPoly(p=p, k_exp=k)

    def __eq__(self, other):
        if not isinstance(other, InvExpPoly):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.p == b.p and (a.p.is_zero() or a.k_exp == b.k_exp)

    def evaluate(self, t):
        u = 1.0 / t
        return self.p.evaluate(u).real * u ** self.k_exp * math.exp(u)


def duff_lhs(n, k):
    """d^n/dt^n [t^-k e^(1/t)] by n exact in-family differentiations."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    f = InvExpPoly(p=CPoly.one, k_exp=k)
    for _ in range(n):
        f = f.derive()
    return f


def duff_rhs(n, k):
    """(-1)^n n! t^-(n+k) e^(1/t) L_n^{k-1}(-1/t), expanded exactly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    lag = laguerre_poly(n, k - 1).compose_linear(-1, 0)   # argument -u
    sign = -1 if n % 2 else 1
    return InvExpPoly(p=lag.scale(sign * math.factorial(n)), k_exp=n + k)


def flat_radial(n, l, r):
    """Normalized flat-space hydrogen radial function (a_B = 1, Z = 1).

    (2/n^2) sqrt((n-l-1)!/(n+l)!) x^l e^(-x/2) L_{n-l-1}^{2l+1}(x), x = 2r/n;
    positive as r -> 0+.
    """
    if n < 1 or not 0 <= l <= n - 1:
        raise QuantumNumberError(f"invalid (n, l) = ({n}, {l})")
    x = 2.0 * r / n
    pref = 2.0 / (n * n) * math.sqrt(
        math.factorial(n - l - 1) / math.factorial(n + l))
    return pref * x ** l * math.exp(-x / 2) * laguerre(n - l - 1, 2 * l + 1, x)


def default_flat_samples(n, l, count=60, r_cap=30.0):
    """Deterministic comparison grid: where the flat state carries its mass,
    capped so the largest sweep curvature's sphere domain still contains it."""
    r_hi = min(float(n * (n + 8)), r_cap)
    step = (r_hi - 0.3) / (count - 1)
    return [0.3 + j * step for j in range(count)]


def flat_limit_error(n, l, kappa, sample_rs=None):
    """Max-norm distance between the normalized curved G_{n,l} and the flat
    function over the sample grid, after aligning both signs at r -> 0+."""
    from .atom import AtomParams, evaluate_radial, solve_state
    from .curvature import Curvature
    from .normalization import normalize

    if sample_rs is None:
        sample_rs = default_flat_samples(n, l)
    curv = kappa if isinstance(kappa, Curvature) else Curvature(kappa)
    if curv.kappa == 0:
        return 0.0
    params = AtomParams(kappa=curv)
    state = normalize(solve_state(params, n, l))
    r0 = min(sample_rs) * 1e-3
    align = 1.0 if evaluate_radial(state, r0) >= 0 else -1.0
    flat_sign = 1.0 if flat_radial(n, l, r0) >= 0 else -1.0
    err = 0.0
    for r in sample_rs:
        g = align * evaluate_radial(state, r)
        f = flat_sign * flat_radial(n, l, r)
        err = max(err, abs(g - f))
    return err
