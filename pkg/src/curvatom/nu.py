"""Nikiforov-Uvarov reduction of a generalized hypergeometric-type equation.

The input equation u'' + (pi1/sigma) u' + (sigma1/sigma^2) u = 0 is mapped by
the gauge substitution u = exp(phi) y, phi' = pi/sigma, onto
sigma y'' + tau y' + lambda y = 0 with tau = pi1 + 2 pi.  The degree-<=1
polynomial pi exists only for the k values that make

    sigma3 = ((sigma' - pi1)/2)^2 - sigma1 + k*sigma

a perfect square; each admissible k and each sign of the square root gives a
branch (pi, k, lambda, tau).  All branch arithmetic is exact over Q(i):
perfect-square tests are meaningless in floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoBranchError, SelectionError, UnsupportedSigma
from .polynomials import CPoly, ExpPoly, ONE_PLUS_Z2, QQi


def _require_degree(p, bound, name):
    if p.degree > bound:
        raise ValueError(f"{name} must have degree <= {bound}, got {p.degree}")


@dataclass(frozen=True, slots=True)
class GHTProblem:
    """Polynomial triple (sigma, pi1, sigma1) of the input equation."""

    sigma: CPoly
    pi1: CPoly
    sigma1: CPoly

    def __post_init__(self):
        _require_degree(self.sigma, 2, "sigma")
        _require_degree(self.pi1, 1, "pi1")
        _require_degree(self.sigma1, 2, "sigma1")
        if self.sigma.is_zero():
            raise ValueError("sigma must not be identically zero")


@dataclass(frozen=True, slots=True)
class NUBranch:
    """One solved branch: pi, k, lambda = k + pi', tau = pi1 + 2 pi."""

    pi: CPoly
    k: QQi
    lam: QQi
    tau: CPoly
    sigma3_root: CPoly       # s with s^2 = sigma3, exactly
    sign_choice: int         # +-1, the sign in pi = A +- s
    root_index: int          # which root of the discriminant condition

    @property
    def pi_prime(self):
        return self.pi.coeff(1)


def _solve_k(a2, a1, a0):
    """Exact roots in Q(i) of a2 k^2 + a1 k + a0 = 0, with multiplicity merged."""
    if a2:
        disc = a1 * a1 - QQi.coerce(4) * a2 * a0
        root = disc.sqrt()
        if root is None:
            raise NoBranchError(
                "discriminant of the k-condition has no square root in Q(i)")
        two_a2 = QQi.coerce(2) * a2
        k1 = (-a1 + root) / two_a2
        k2 = (-a1 - root) / two_a2
        return [k1] if k1 == k2 else [k1, k2]
    if a1:
        return [-a0 / a1]
    if not a0:
        raise NoBranchError(
            "discriminant condition vanishes identically: every k is "
            "admissible (degenerate family outside the supported scope)")
    raise NoBranchError("discriminant condition has no solution for k")


def _poly_square_root(p):
    """Degree-<=1 polynomial s with s^2 = p, or None."""
    if p.is_zero():
        return CPoly()
    if p.degree == 1:
        return None
    if p.degree == 0:
        c = p.coeff(0).sqrt()
        return None if c is None else CPoly([c])
    lead = p.coeff(2).sqrt()
    if lead is None:
        return None
    const = p.coeff(1) / (QQi.coerce(2) * lead)
    s = CPoly([const, lead])
    return s if s * s == p else None


def enumerate_branches(problem):
    """All branches (at most 4) of the reduction, exactly.

    For each root k of the (degree-<=2) discriminant condition and each sign
    of sqrt(sigma3), a branch is emitted when sigma3 is exactly a perfect
    square over Q(i); coincident (pi, k) pairs from double roots are merged.
    """
    sigma, pi1, sigma1 = problem.sigma, problem.pi1, problem.sigma1
    a_poly = (sigma.derivative() - pi1).scale(Fraction(1, 2))
    base = a_poly * a_poly - sigma1          # sigma3 = base + k*sigma

    def comp(poly, j):
        return poly.coeff(j)

    # discriminant of sigma3 in z, expanded as a quadratic in k
    b2, b1, b0 = comp(base, 2), comp(base, 1), comp(base, 0)
    s2, s1, s0 = comp(sigma, 2), comp(sigma, 1), comp(sigma, 0)
    four = QQi.coerce(4)
    a2 = s1 * s1 - four * s2 * s0
    a1 = QQi.coerce(2) * b1 * s1 - four * (b2 * s0 + b0 * s2)
    a0 = b1 * b1 - four * b2 * b0

    branches = []
    seen = set()
    for idx, k in enumerate(_solve_k(a2, a1, a0)):
        sigma3 = base + sigma.scale(k)
        root = _poly_square_root(sigma3)
        if root is None:
            continue
        signs = (1,) if root.is_zero() else (1, -1)
        for sign in signs:
            pi = a_poly + root.scale(sign)
            _require_degree(pi, 1, "pi")
            key = (pi.coeffs, k.re, k.im)
            if key in seen:
                continue
            seen.add(key)
            lam = k + pi.coeff(1)
            tau = pi1 + pi.scale(2)
            branches.append(NUBranch(pi=pi, k=k, lam=lam, tau=tau,
                                     sigma3_root=root, sign_choice=sign,
                                     root_index=idx))
    if not branches:
        raise NoBranchError("no k makes sigma3 a perfect square over Q(i)")
    return branches


def negative_pi_prime(branch):
    """Default physicality test: leading coefficient of pi real and negative."""
    c = branch.pi_prime
    return c.is_real() and c.re < 0


def select_physical(branches, predicate=negative_pi_prime):
    """The unique branch satisfying the predicate; SelectionError otherwise."""
    hits = [b for b in branches if predicate(b)]
    if not hits:
        raise SelectionError("no branch satisfies the physicality predicate")
    if len(hits) > 1:
        raise SelectionError(
            f"{len(hits)} branches satisfy the physicality predicate; "
            "refine the predicate rather than guessing")
    return hits[0]


def lambda_n(branch, sigma, n):
    """Termination eigenvalue lambda_n = -n tau' - n(n-1) sigma''/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    tau_p = branch.tau.coeff(1)
    sigma_pp = QQi.coerce(2) * sigma.coeff(2)
    return -QQi.coerce(n) * tau_p - QQi.coerce(Fraction(n * (n - 1), 2)) * sigma_pp


def mu_m(branch, sigma, lam, m):
    """mu_m = lambda + m tau' + m(m-1) sigma''/2 (derivative-chain constants)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    tau_p = branch.tau.coeff(1)
    sigma_pp = QQi.coerce(2) * sigma.coeff(2)
    return QQi.coerce(lam) + QQi.coerce(m) * tau_p \
        + QQi.coerce(Fraction(m * (m - 1), 2)) * sigma_pp


def pearson_weight(branch, sigma):
    """Weight rho with (sigma rho)' = rho tau, for sigma = 1 + z^2.

    For this sigma the Pearson equation integrates in closed form to
    rho = (1+z^2)^((tau1-2)/2) * exp(tau0 * arctan z), an ExpPoly with P = 1.
    """
    if sigma != ONE_PLUS_Z2:
        raise UnsupportedSigma("pearson_weight supports sigma = 1 + z^2 only")
    tau1, tau0 = branch.tau.coeff(1), branch.tau.coeff(0)
    if not tau1.is_real():
        raise UnsupportedSigma(
            "tau leading coefficient must be real for an ExpPoly weight")
    m = (tau1.re - 2) / 2
    return ExpPoly(CPoly.one, m, tau0)


def rodrigues_poly(branch, sigma, n_r):
    """Exact Rodrigues polynomial (1/rho) d^n_r/dz^n_r [sigma^n_r rho].

    Normalization: no extra constant, i.e. the convention that fixes the
    derivative chain so y_0 = 1.  Degree <= n_r; used as the bit-exact oracle
    for the recurrence constructions.
    """
    if n_r < 0:
        raise ValueError("n_r must be nonnegative")
    rho = pearson_weight(branch, sigma)
    f = ExpPoly(CPoly.one, rho.m + n_r, rho.a)
    for _ in range(n_r):
        f = f.derive()
    if f.m != rho.m:
        raise AssertionError("derivative chain left the weight family")
    return f.p
