"""Independent finite-difference eigensolver for the radial equation.

The substitution u = S_kappa(r) G(r) removes the first-derivative term and
leaves -u'' + W(r) u = E u with

    W(r) = l(l+1)/S_kappa^2 - 2 Z / T_kappa - kappa      (E in Ry)

which discretizes to a symmetric tridiagonal eigenproblem.  The substitution
constant is not taken on faith: residual tests against the closed-form
states (see verify/tests) are the arbiter.  Richardson extrapolation over a
grid and its half-step refinement removes the leading O(h^2) error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .curvature import c_kappa, s_kappa, t_kappa
from .errors import ConvergenceError, DomainError
from .normalization import max_principal_n

_COTH_SATURATION = 350.0   # beyond this theta, coth == 1 to machine precision


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Uniform FD mesh: Dirichlet ends at r_lo/r_hi, `points` subintervals."""

    r_lo: float
    r_hi: float
    points: int
    epsilon_boundary: float = 1e-8

    def __post_init__(self):
        if self.points < 200:
            raise DomainError("grid needs at least 200 points")
        if not 0 < self.r_lo < self.r_hi:
            raise DomainError("grid requires 0 < r_lo < r_hi")

    @staticmethod
    def auto(params, n_max, points=4000, epsilon_boundary=1e-8):
        """Domain sized to the slowest bound-state tail among n <= n_max.

        Sphere: (eps, pi/sqrt(kappa) - eps).  Otherwise the box end is set so
        exp(-2*gamma*R) < 1e-14 for the weakest decay rate gamma = Z/n -
        n*sqrt(-kappa).
        """
        k = params.kappa.value
        z = float(params.z_charge)
        if k > 0:
            top = params.kappa.domain_sup
            return GridSpec(r_lo=epsilon_boundary, r_hi=top - epsilon_boundary,
                            points=points, epsilon_boundary=epsilon_boundary)
        n_cap = n_max
        if k < 0:
            n_cap = min(n_max, max_principal_n(params.kappa, params.z_charge))
            if n_cap < 1:
                raise DomainError("no bound states at this curvature")
        rates = [z / n - n * math.sqrt(-k) if k < 0 else z / n
                 for n in range(1, n_cap + 1)]
        gamma = min(rates)
        return GridSpec(r_lo=epsilon_boundary, r_hi=16.5 / gamma,
                        points=points, epsilon_boundary=epsilon_boundary)


def effective_potential(params, l, r):
    """W(r) = l(l+1)/S^2 - 2Z/T - kappa at one radius (scalar reference)."""
    s = s_kappa(params.kappa, r)
    t = t_kappa(params.kappa, r)
    z = float(params.z_charge)
    return l * (l + 1) / (s * s) - 2 * z / t - params.kappa.value


def _potential_array(params, l, r):
    """Vectorized W; agrees with effective_potential (tested) but avoids
    Python-level loops when building large meshes."""
    k = params.kappa.value
    z = float(params.z_charge)
    ll = l * (l + 1)
    if k == 0:
        return ll / r ** 2 - 2 * z / r
    if k > 0:
        rk = math.sqrt(k)
        th = rk * r
        sn = np.sin(th)
        return ll * k / sn ** 2 - 2 * z * rk * np.cos(th) / sn - k
    rk = math.sqrt(-k)
    th = rk * r
    w = np.empty_like(th)
    sat = th > _COTH_SATURATION
    ok = ~sat
    sh = np.sinh(th[ok])
    w[ok] = ll * (-k) / sh ** 2 - 2 * z * rk * np.cosh(th[ok]) / sh - k
    w[sat] = -2 * z * rk - k
    return w


def continuum_edge(params):
    """Bottom of the continuous spectrum for kappa < 0: W(r -> inf)."""
    k = params.kappa.value
    if k >= 0:
        raise DomainError("continuum edge exists only for kappa < 0")
    return -2 * float(params.z_charge) * math.sqrt(-k) - k


@dataclass(frozen=True, slots=True)
class EigenResult:
    """Extrapolated spectrum plus the fine-grid eigenvectors (optional)."""

    energies: np.ndarray          # Richardson-extrapolated, ascending
    energies_coarse: np.ndarray
    energies_fine: np.ndarray
    r: np.ndarray | None          # fine-grid interior nodes
    states: np.ndarray | None     # rows normalized: trapezoid integral u^2 = 1


def _solve_grid(params, l, r_lo, r_hi, n_sub, count, want_vectors):
    h = (r_hi - r_lo) / n_sub
    r = r_lo + h * np.arange(1, n_sub)
    diag = 2.0 / h ** 2 + _potential_array(params, l, r)
    off = np.full(n_sub - 2, -1.0 / h ** 2)
    if want_vectors:
        vals, vecs = eigh_tridiagonal(diag, off, select="i",
                                      select_range=(0, count - 1))
        return r, vals, vecs.T / math.sqrt(h)
    vals = eigh_tridiagonal(diag, off, eigvals_only=True, select="i",
                            select_range=(0, count - 1))
    return r, vals, None


def eigen_solve(params, l, grid, count, change_tol=1e-2, vectors=True):
    """Lowest `count` eigenpairs with Richardson extrapolation.

    Solves on `grid.points` subintervals and on the half-step refinement;
    E = (4 E_fine - E_coarse)/3 cancels the O(h^2) term.  The extrapolated
    change |E_fine - E_coarse|/3 estimates the removed error; exceeding
    change_tol raises ConvergenceError.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    _, e_coarse, _ = _solve_grid(params, l, grid.r_lo, grid.r_hi,
                                 grid.points, count, False)
    r, e_fine, states = _solve_grid(params, l, grid.r_lo, grid.r_hi,
                                    2 * grid.points, count, vectors)
    change = np.abs(e_fine - e_coarse) / 3.0
    if np.any(change > change_tol):
        raise ConvergenceError(
            f"eigenvalue extrapolation change {change.max()} exceeds "
            f"{change_tol}; refine the grid")
    energies = (4.0 * e_fine - e_coarse) / 3.0
    if states is not None:
        for row in states:
            lead = np.argmax(np.abs(row) > 0.05 * np.abs(row).max())
            if row[lead] < 0:
                row *= -1.0
    return EigenResult(energies=energies, energies_coarse=e_coarse,
                       energies_fine=e_fine, r=r, states=states)


def count_bound_levels(params, l, points=8000, probe_levels=8):
    """Number of discrete levels below the continuum edge (kappa < 0 only).

    A level counts as bound when its extrapolated energy sits below the edge
    and its eigenvector is localized (tail amplitude < 1e-3 of the peak over
    the last 5% of the box); box-discretized continuum states fail both.
    """
    edge = continuum_edge(params)
    grid = GridSpec.auto(params, n_max=max_principal_n(
        params.kappa, params.z_charge), points=points)
    res = eigen_solve(params, l, grid, probe_levels, vectors=True)
    tail_start = int(0.95 * res.states.shape[1])
    count = 0
    for e, u in zip(res.energies, res.states):
        if e >= edge:
            continue
        tail = np.abs(u[tail_start:]).max()
        if tail < 1e-3 * np.abs(u).max():
            count += 1
    return count


def radial_equation_residual(state, r, h=1e-3):
    """Residual of the radial equation on the closed-form G at one radius.

    -G'' - 2 (C/S) G' + [l(l+1)/S^2 - 2Z/T] G - E G, derivatives by 5-point
    stencils; all terms in Ry units.
    """
    from .atom import evaluate_radial
    params, qn = state.params, state.qn
    g = [evaluate_radial(state, r + j * h) for j in (-2, -1, 0, 1, 2)]
    d1 = (g[0] - 8 * g[1] + 8 * g[3] - g[4]) / (12 * h)
    d2 = (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / (12 * h * h)
    s = s_kappa(params.kappa, r)
    c = c_kappa(params.kappa, r)
    z = float(params.z_charge)
    pot = qn.l * (qn.l + 1) / (s * s) - 2 * z * c / s
    return -d2 - 2 * (c / s) * d1 + pot * g[2] - float(state.energy) * g[2]


def reduced_equation_residual(params, l, e_value, u, r, h=1e-3):
    """Residual -u'' + W u - E u for a callable u, 5-point second derivative."""
    vals = [u(r + j * h) for j in (-2, -1, 0, 1, 2)]
    d2 = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) \
        / (12 * h * h)
    return -d2 + effective_potential(params, l, r) * vals[2] - e_value * vals[2]
