"""
Numerical oracles, independent of the closed forms they check.

* :func:`numerov_eigenvalues` -- matrix Numerov discretization of
  ``-(hbar^2/2m) psi'' + V psi = E psi`` on a uniform grid with hard walls,
  with a Numerov shooting solver as a secondary route.
* :func:`integrate_halfline` -- Gauss-Laguerre or adaptive quadrature on
  ``[0, inf)``.
* :func:`grid_convergence_study` -- observed order of the Numerov eigenvalues.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, Literal, Optional

import numpy as np
from scipy import integrate, linalg, optimize, sparse
from scipy.sparse.linalg import eigsh
from scipy.special import roots_genlaguerre

from .morse import MorseParams, bound_state_count, energy


class NoBoundStateError(RuntimeError):
    """Fewer negative eigenvalues on the grid than requested."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not converge."""


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be below x_max")
        if self.n_points < 3:
            raise ValueError("need at least 3 grid points")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def refined(self, times: int = 1) -> "GridSpec":
        """Same interval with the spacing halved ``times`` times."""
        return GridSpec(self.x_min, self.x_max, (self.n_points - 1) * 2**times + 1)


@dataclass(frozen=True)
class QuadratureSpec:
    """``weight_power`` selects generalized Gauss-Laguerre (weight z^p e^-z)."""

    scheme: Literal["gauss_laguerre", "adaptive"] = "adaptive"
    order: int = 64
    tol: float = 1e-12
    weight_power: float = 0.0

    def __post_init__(self):
        if self.scheme not in ("gauss_laguerre", "adaptive"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not self.weight_power > -1:
            raise ValueError("weight_power must exceed -1")


# ---------------------------------------------------------------------------
# eigenvalues


_DENSE_LIMIT = 400


def _numerov_matrices(v: np.ndarray, h: float, mass: float, hbar: float):
    """
    Matrix Numerov as a symmetric generalized problem.

    The Numerov rows read ``-(hbar^2/2m) A psi + B V psi = E B psi`` with
    ``A = (T - 2I)/h^2`` and ``B = (T + 10I)/12``. A and B commute, so
    substituting ``psi = B phi`` gives the symmetric pentadiagonal pencil
    ``(-(hbar^2/2m) B A + B V B) phi = E B^2 phi`` with the same spectrum.
    """
    m = len(v)
    one = np.ones(m)
    off = one[:-1]
    a = sparse.diags([off, -2.0 * one, off], [-1, 0, 1]) / h**2
    b = sparse.diags([off, 10.0 * one, off], [-1, 0, 1]) / 12.0
    k = -(hbar**2) / (2.0 * mass) * (b @ a) + b @ sparse.diags(v) @ b
    return k.tocsc(), (b @ b).tocsc()


def _matrix_numerov(v, h, count, mass, hbar):
    k, m2 = _numerov_matrices(v, h, mass, hbar)
    size = len(v)
    if count > size:
        raise ValueError(f"grid has only {size} interior points")
    if size <= _DENSE_LIMIT or count >= size - 1:
        return linalg.eigh(
            k.toarray(), m2.toarray(), eigvals_only=True, subset_by_index=[0, count - 1]
        )
    vmin = float(np.min(v))
    sigma = vmin - max(1.0, 0.1 * abs(vmin))
    w = eigsh(
        k, k=count, M=m2, sigma=sigma, which="LM", v0=np.ones(size),
        return_eigenvectors=False,
    )
    return np.sort(w)


def _shoot(e, v, h, c):
    """Outward Numerov integration from the left wall. Returns (psi_end, nodes)."""
    q = 1.0 + h * h * c * (e - v) / 12.0
    prev, cur = 0.0, 1e-12
    nodes = 0
    for i in range(1, len(v) - 1):
        nxt = ((12.0 - 10.0 * q[i]) * cur - q[i - 1] * prev) / q[i + 1]
        if nxt != 0.0 and (nxt > 0.0) != (cur > 0.0):
            nodes += 1
        prev, cur = cur, nxt
        if abs(cur) > 1e150:
            prev, cur = prev * 1e-150, cur * 1e-150
    return cur, nodes


def _shooting_numerov(v_full, h, count, mass, hbar):
    c = 2.0 * mass / hbar**2
    lo0, hi0 = float(np.min(v_full)), float(np.max(v_full))
    out = []
    for n in range(count):
        lo, hi = lo0, hi0
        n_lo, n_hi = _shoot(lo, v_full, h, c)[1], _shoot(hi, v_full, h, c)[1]
        if n_hi <= n:
            raise NoBoundStateError(f"no eigenvalue {n} below max(V) on this grid")
        # isolate the step of the node count from n to n + 1
        while (n_lo != n or n_hi != n + 1) and hi - lo > 1e-14 * max(1.0, abs(lo)):
            mid = 0.5 * (lo + hi)
            nodes = _shoot(mid, v_full, h, c)[1]
            if nodes <= n:
                lo, n_lo = mid, nodes
            else:
                hi, n_hi = mid, nodes
        f = lambda e: _shoot(e, v_full, h, c)[0]
        if f(lo) * f(hi) < 0:
            out.append(optimize.brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps))
        else:
            out.append(0.5 * (lo + hi))
    return np.array(out)


def numerov_eigenvalues(
    potential: Callable,
    grid: GridSpec,
    count: int,
    mass: float = 1.0,
    hbar: float = 1.0,
    method: Literal["matrix", "shooting"] = "matrix",
    negative_only: bool = True,
) -> np.ndarray:
    """
    Lowest ``count`` eigenvalues with Dirichlet walls at the grid ends.

    Parameters
    ----------
    potential : callable
        Vectorized ``V(x)``.
    grid : GridSpec
        Uniform grid; the end points carry the walls.
    count : int
        Number of eigenvalues wanted.
    method : {"matrix", "shooting"}
        Matrix Numerov (default) or Numerov shooting with node-count
        bisection. Both discretize the same recurrence.
    negative_only : bool
        Treat the request as bound states and raise
        :class:`NoBoundStateError` unless all ``count`` values are negative.
        Switch off for confining potentials such as the harmonic oscillator.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    x = grid.points()
    v = np.asarray(potential(x), dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError("potential is not finite on the grid")
    if method == "matrix":
        w = _matrix_numerov(v[1:-1], grid.h, count, mass, hbar)
    elif method == "shooting":
        w = _shooting_numerov(v, grid.h, count, mass, hbar)
    else:
        raise ValueError(f"unknown method {method!r}")
    if negative_only:
        n_neg = int(np.count_nonzero(w < 0))
        if n_neg < count:
            raise NoBoundStateError(
                f"requested {count} bound states, grid holds {n_neg} negative eigenvalues"
            )
    return np.asarray(w, dtype=float)


def default_grid(p: MorseParams, n_points: int = 4001) -> GridSpec:
    """
    Window sized from the potential: ``V(x_min) >= 1e3 |E_0|`` on the
    repulsive side and ``x_max >= x_turn + 10/kappa`` past the outer turning
    point of the shallowest state, ``kappa = sqrt(2m|E|)/hbar``.
    """
    if not p.has_well:
        raise ValueError("no potential well; supply an explicit grid")
    nmax = bound_state_count(p)
    vmin = -(p.v1**2) / (4.0 * p.v2)
    e_deep = energy(p, 0) if nmax else vmin
    e_shallow = energy(p, nmax - 1) if nmax else vmin
    top = 1e3 * abs(e_deep)
    u_wall = (-p.v1 + math.sqrt(p.v1**2 + 4.0 * p.v2 * top)) / (2.0 * p.v2)
    u_turn = (-p.v1 - math.sqrt(p.v1**2 + 4.0 * p.v2 * e_shallow)) / (2.0 * p.v2)
    kappa = math.sqrt(2.0 * p.mass * abs(e_shallow)) / p.hbar
    x_min = -math.log(u_wall) / p.alpha
    x_max = -math.log(u_turn) / p.alpha + 10.0 / kappa
    return GridSpec(x_min, x_max, n_points)


def morse_numerov(
    p: MorseParams,
    grid: Optional[GridSpec] = None,
    count: Optional[int] = None,
    method: Literal["matrix", "shooting"] = "matrix",
) -> np.ndarray:
    """Numerov bound-state energies of a Morse instance."""
    grid = default_grid(p) if grid is None else grid
    count = bound_state_count(p) if count is None else count
    if count < 1:
        raise NoBoundStateError("the potential holds no bound state")
    return numerov_eigenvalues(
        p.potential, grid, count, mass=p.mass, hbar=p.hbar, method=method
    )


# ---------------------------------------------------------------------------
# quadrature


def integrate_halfline(
    f: Callable, q: QuadratureSpec = QuadratureSpec(), weighted: bool = False
) -> float:
    """
    Integral of ``f`` over ``[0, inf)``.

    For ``gauss_laguerre`` the nodes carry the weight ``z**p exp(-z)``
    (``p = q.weight_power``). By default ``f`` is the full integrand and the
    weight is divided out at the nodes; with ``weighted=True`` ``f`` is
    already the weight-stripped factor, which avoids the round trip. An
    order-N rule is exact for weight times polynomials of degree <= 2N - 1.
    """
    if q.scheme == "gauss_laguerre":
        z, w = roots_genlaguerre(q.order, q.weight_power)
        vals = np.asarray(f(z), dtype=float)
        if not weighted:
            vals = vals * np.exp(z) * z ** (-q.weight_power)
        return float(np.dot(w, vals))
    if weighted:
        p = q.weight_power
        g = f
        f = lambda z: np.exp(-z) * z**p * g(z)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, info = integrate.quad(
            f, 0.0, np.inf, epsabs=q.tol, epsrel=q.tol, limit=500, full_output=True
        )[:3]
    if info.get("last", 0) >= 500 or err > max(q.tol, q.tol * abs(val)) * 1e3:
        raise QuadratureError(f"adaptive quadrature did not converge (err={err:.3g})")
    return float(val)


# ---------------------------------------------------------------------------
# convergence


@dataclass(frozen=True)
class ConvergenceRow:
    n_points: int
    h: float
    eigenvalue: float
    error: float


@dataclass(frozen=True)
class ConvergenceTable:
    state: int
    exact: float
    rows: List[ConvergenceRow]
    orders: List[float] = field(default_factory=list)

    @property
    def observed_order(self) -> Optional[float]:
        """Smallest pairwise order; None with a single level."""
        if not self.orders:
            return None
        return float(np.min(self.orders))

    @property
    def reliable(self) -> bool:
        """False when errors stall (truncation- or roundoff-dominated)."""
        if not self.orders:
            return False
        return all(2.0 <= o <= 6.0 for o in self.orders)


def grid_convergence_study(
    p: MorseParams, levels: List[GridSpec], state: int = 0
) -> ConvergenceTable:
    """Numerov error on ``E_state`` for each grid in ``levels`` (coarse first)."""
    hs = [g.h for g in levels]
    if any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("levels must be ordered by decreasing h")
    exact = energy(p, state)
    rows = []
    for g in levels:
        e = float(
            numerov_eigenvalues(p.potential, g, state + 1, mass=p.mass, hbar=p.hbar)[state]
        )
        rows.append(ConvergenceRow(g.n_points, g.h, e, abs(e - exact)))
    orders = []
    for a, b in zip(rows, rows[1:]):
        if a.error > 0 and b.error > 0:
            orders.append(math.log(a.error / b.error) / math.log(a.h / b.h))
        else:
            orders.append(float("nan"))
    return ConvergenceTable(state=state, exact=exact, rows=rows, orders=orders)
