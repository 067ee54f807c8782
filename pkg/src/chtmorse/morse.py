"""
Bound states of the generalized Morse potential

    V(x) = V1 exp(-alpha x) + V2 exp(-2 alpha x).

With ``xi = 2 sqrt(2 m V2) exp(-alpha x) / (hbar alpha)`` and
``psi = exp(-xi/2) xi**S Phi(xi)`` the Schrodinger equation becomes the
confluent hypergeometric equation with ``b = 2S + 1``. Quantizing
``a = -n`` gives ``S_n = K - n - 1/2`` where

    K = m |V1| / (hbar alpha sqrt(2 m V2))

is the well-strength parameter, and the eigenfunctions are generalized
Laguerre polynomials in ``xi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from scipy import integrate

from .laplace import CHTParams
from .special import LaguerrePoly, gamma_ratio, laguerre_coeffs, laguerre_eval


class OutOfRangeError(ValueError):
    """Requested quantum number has no bound state."""


@dataclass(frozen=True)
class MorseParams:
    """Physical inputs; ``hbar`` and ``mass`` default to natural units."""

    v1: float
    v2: float
    alpha: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "mass", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive, got {value}")
        for name in ("v1", "v2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def has_well(self) -> bool:
        return self.v1 < 0 and self.v2 > 0

    def potential(self, x):
        u = np.exp(-self.alpha * np.asarray(x, dtype=float))
        return self.v1 * u + self.v2 * u * u

    def xi_scale(self) -> float:
        """Value of xi at x = 0."""
        _require_v2(self)
        return 2.0 * math.sqrt(2.0 * self.mass * self.v2) / (self.hbar * self.alpha)

    def well_strength(self) -> float:
        """K = m|V1| / (hbar alpha sqrt(2 m V2))."""
        _require_v2(self)
        return self.mass * abs(self.v1) / (
            self.hbar * self.alpha * math.sqrt(2.0 * self.mass * self.v2)
        )

    def x_of_xi(self, xi):
        return -np.log(np.asarray(xi, dtype=float) / self.xi_scale()) / self.alpha


def _require_v2(p: MorseParams) -> None:
    if not p.v2 > 0:
        raise ValueError("V2 must be positive")


def _admits(p: MorseParams, n: int) -> bool:
    """Exact test of S_n = K - n - 1/2 > 0.

    Squared form ``(m V1)^2 > (n + 1/2)^2 hbar^2 alpha^2 2 m V2`` evaluated in
    rationals; every finite float is an exact rational, so the boundary
    S = 0 is decided without an epsilon.
    """
    if not p.has_well or n < 0:
        return False
    m, hb, al = Fraction(p.mass), Fraction(p.hbar), Fraction(p.alpha)
    v1, v2 = Fraction(p.v1), Fraction(p.v2)
    half = Fraction(2 * n + 1, 2)
    return (m * v1) ** 2 > half**2 * hb**2 * al**2 * 2 * m * v2


def bound_state_count(p: MorseParams) -> int:
    """Number of integers n >= 0 with n < K - 1/2 (zero without a well)."""
    if not p.has_well:
        return 0
    count = max(0, math.ceil(p.well_strength() - 0.5))
    while count > 0 and not _admits(p, count - 1):
        count -= 1
    while _admits(p, count):
        count += 1
    return count


def _check_n(p: MorseParams, n: int) -> None:
    if int(n) != n or not _admits(p, int(n)):
        raise OutOfRangeError(
            f"no bound state n={n}: {bound_state_count(p)} bound states exist"
        )


def xi_of_x(p: MorseParams, x):
    """xi = 2 sqrt(2 m V2) exp(-alpha x) / (hbar alpha)."""
    return p.xi_scale() * np.exp(-p.alpha * np.asarray(x, dtype=float))


class Reduction(NamedTuple):
    cht: CHTParams
    s: float


def s_exponent(p: MorseParams, n: int) -> float:
    _check_n(p, n)
    return p.well_strength() - n - 0.5


def reduced_params(p: MorseParams, n: int) -> Reduction:
    """CHT parameters of state ``n``: ``a = -n``, ``b = 2 S_n + 1``."""
    s = s_exponent(p, n)
    return Reduction(CHTParams(a=-int(n), b=2.0 * s + 1.0), s)


def energy(p: MorseParams, n: int) -> float:
    """E_n = -(V1^2 / 4 V2) [1 - (n + 1/2) / K]^2."""
    _check_n(p, n)
    ratio = p.hbar * p.alpha * math.sqrt(2.0 * p.mass * p.v2) / (p.mass * abs(p.v1))
    return -(p.v1**2) / (4.0 * p.v2) * (1.0 - ratio * (n + 0.5)) ** 2


def energy_from_s(p: MorseParams, s: float) -> float:
    """Invert S = sqrt(-2 m E) / (hbar alpha)."""
    return -((p.hbar * p.alpha * s) ** 2) / (2.0 * p.mass)


@dataclass(frozen=True)
class BoundState:
    """One normalized eigenstate. Calling it evaluates psi_n at x.

    ``log_norm`` is the logarithm of the normalization prefactor; for deep
    wells the prefactor itself underflows while ``xi**S`` overflows, so
    evaluation stays in log space.
    """

    n: int
    s_exponent: float
    energy: float
    log_norm: float
    poly: LaguerrePoly
    params: MorseParams

    @property
    def norm_const(self) -> float:
        return math.exp(self.log_norm)

    def psi_xi(self, xi):
        xi = np.asarray(xi, dtype=float)
        with np.errstate(divide="ignore", under="ignore"):
            envelope = np.exp(
                self.log_norm + self.s_exponent * np.log(xi) - xi / 2
            )
        out = envelope * laguerre_eval(self.n, 2.0 * self.s_exponent, xi)
        return out if out.ndim else float(out)

    def __call__(self, x):
        return self.psi_xi(xi_of_x(self.params, x))

    def window(self, xi_min: float = 1e-8) -> Tuple[float, float]:
        """x-interval with xi from ``xi_min`` up to 4 (2S + n + 1)."""
        xi_max = 4.0 * (2.0 * self.s_exponent + self.n + 1)
        lo, hi = self.params.x_of_xi([xi_max, xi_min])
        return float(lo), float(hi)


def log_norm_constant(alpha: float, s: float, n: int) -> float:
    """log of sqrt(2 alpha S n! / Gamma(2S + n + 1))."""
    log_sq = (
        math.log(2.0 * alpha * s)
        - math.lgamma(2.0 * s + 1.0)
        - math.log(gamma_ratio(2.0 * s + n + 1.0, n) / math.factorial(n))
    )
    return 0.5 * log_sq


def wavefunction(p: MorseParams, n: int) -> BoundState:
    s = s_exponent(p, n)
    return BoundState(
        n=int(n),
        s_exponent=s,
        energy=energy(p, n),
        log_norm=log_norm_constant(p.alpha, s, int(n)),
        poly=laguerre_coeffs(int(n), 2.0 * s),
        params=p,
    )


def spectrum(p: MorseParams) -> List[BoundState]:
    return [wavefunction(p, n) for n in range(bound_state_count(p))]


def spectrum_window(states: List[BoundState], xi_min: float = 1e-8) -> Tuple[float, float]:
    """Union of the per-state windows."""
    windows = [st.window(xi_min) for st in states]
    return min(w[0] for w in windows), max(w[1] for w in windows)


def second_derivative(f, x, h: float):
    """Five-point fourth-order central difference."""
    return (
        -f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)
    ) / (12 * h * h)


def schrodinger_residual(
    p: MorseParams,
    st: BoundState,
    xs,
    h: float = 1e-3,
    energy: Optional[float] = None,
) -> float:
    """
    Relative residual of psi'' + (2m/hbar^2)(E - V) psi on ``xs``.

    Normalized by ``max|psi| * (2m/hbar^2) * |E|``. ``energy`` overrides the
    state's eigenvalue, which is how sensitivity to a wrong E is probed.
    """
    xs = np.asarray(xs, dtype=float)
    e = st.energy if energy is None else energy
    c = 2.0 * p.mass / p.hbar**2
    psi = st(xs)
    res = second_derivative(st, xs, h) + c * (e - p.potential(xs)) * psi
    return float(np.max(np.abs(res)) / (np.max(np.abs(psi)) * c * abs(e)))


def sign_changes(values) -> int:
    """Sign changes in a sampled sequence, skipping exact zeros."""
    v = np.asarray(values, dtype=float)
    s = np.sign(v[v != 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def node_count(st: BoundState, samples: int = 20001) -> int:
    lo, hi = st.window()
    return sign_changes(st(np.linspace(lo, hi, samples)))


def overlap(a: BoundState, b: BoundState, xi_min: float = 1e-40) -> float:
    """int psi_a psi_b dx by adaptive quadrature over a window with negligible tails."""
    lo, hi = spectrum_window([a, b], xi_min)
    lo -= 2.0 / a.params.alpha
    # the envelope peaks near xi = 2S and narrows as S grows; hint quad there
    peaks = sorted({float(st.params.x_of_xi(2.0 * st.s_exponent + st.n)) for st in (a, b)})
    val, _ = integrate.quad(
        lambda x: a(x) * b(x), lo, hi, points=peaks, limit=1000, epsabs=1e-14, epsrel=1e-12
    )
    return val


def xi_measure_norm(st: BoundState) -> float:
    """int_0^inf psi(xi)^2 / xi dxi, which should equal alpha."""
    val, _ = integrate.quad(
        lambda z: st.psi_xi(z) ** 2 / z if z > 0 else 0.0,
        0.0,
        np.inf,
        limit=1000,
        epsabs=1e-14,
        epsrel=1e-12,
    )
    return val
