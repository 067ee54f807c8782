"""
Generalized Laguerre polynomials and the weighted integrals used for
normalization.

Every routine has two arithmetic paths. Integer and ``Fraction`` arguments are
kept exact (results are ``Fraction``); anything else is evaluated in floating
point. Gamma-function ratios are always formed as finite products so large
degrees do not overflow.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

Number = Union[int, float, Fraction]


class GammaPoleError(ValueError):
    """Raised when an argument lands on a pole of the gamma function."""


def is_exact(*values) -> bool:
    """True when every value is an int or Fraction (bools excluded)."""
    return all(
        isinstance(v, numbers.Rational) and not isinstance(v, bool) for v in values
    )


def _coerce(value, exact: bool):
    return Fraction(value) if exact else float(value)


def gamma_ratio(x: Number, k: int) -> Number:
    """
    Return Gamma(x) / Gamma(x - k) as the product (x-1)(x-2)...(x-k).

    Parameters
    ----------
    x : int, Fraction or float
        Upper argument.
    k : int
        Non-negative number of factors.

    Raises
    ------
    GammaPoleError
        If ``x - k <= 0``.
    """
    if k < 0 or int(k) != k:
        raise ValueError(f"k must be a non-negative integer, got {k!r}")
    if x - k <= 0:
        raise GammaPoleError(f"gamma_ratio requires x - k > 0, got x={x}, k={k}")
    exact = is_exact(x)
    out = Fraction(1) if exact else 1.0
    x = _coerce(x, exact)
    for i in range(1, int(k) + 1):
        out *= x - i
    return out


@dataclass(frozen=True)
class LaguerrePoly:
    """Degree-``n`` generalized Laguerre polynomial ``L_n^(mu)``.

    ``coeffs[j]`` is the coefficient of ``z**j``.
    """

    degree: int
    parameter: Number
    coeffs: tuple

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def __call__(self, z):
        """Horner evaluation; exact when both the coefficients and ``z`` are."""
        if self.exact and is_exact(z):
            z = Fraction(z)
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        z = np.asarray(z, dtype=float)
        acc = np.zeros_like(z)
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc if acc.ndim else float(acc)

    def value_at_zero(self) -> Number:
        return self.coeffs[0]


def _check_mu(mu) -> None:
    if not mu > -1:
        raise ValueError(f"Laguerre parameter must exceed -1, got {mu}")


def laguerre_coeffs(n: int, mu: Number) -> LaguerrePoly:
    """
    Expand ``L_n^(mu)`` into monomials.

    ``coeffs[j] = Gamma(n+mu+1)/Gamma(j+mu+1) * (-1)**j / (j! (n-j)!)``
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    _check_mu(mu)
    n = int(n)
    exact = is_exact(mu)
    mu = _coerce(mu, exact)
    coeffs = []
    for j in range(n + 1):
        ratio = gamma_ratio(n + mu + 1, n - j)
        denom = math.factorial(j) * math.factorial(n - j)
        sign = -1 if j % 2 else 1
        coeffs.append(sign * ratio / denom)
    return LaguerrePoly(degree=n, parameter=mu, coeffs=tuple(coeffs))


def laguerre_eval(n: int, mu: Number, z):
    """
    Evaluate ``L_n^(mu)(z)`` by the upward three-term recurrence

        (k+1) L_{k+1} = (2k+1+mu-z) L_k - (k+mu) L_{k-1}.

    ``z`` may be a scalar or an array. With exact ``mu`` and ``z`` the
    recurrence runs in rational arithmetic.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    _check_mu(mu)
    n = int(n)
    if is_exact(mu, z):
        mu, z = Fraction(mu), Fraction(z)
        prev, cur = Fraction(0), Fraction(1)
    else:
        mu = float(mu)
        z = np.asarray(z, dtype=float)
        prev, cur = np.zeros_like(z), np.ones_like(z)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + mu - z) * cur - (k + mu) * prev) / (k + 1)
    if isinstance(cur, np.ndarray) and cur.ndim == 0:
        return float(cur)
    return cur


def laguerre_weighted_integral(gamma: Number, n: int, mu: Number) -> Number:
    """
    Closed form of ``int_0^inf exp(-z) z**(gamma-1) L_n^(mu)(z) dz``.

    Equal to ``Gamma(gamma) Gamma(1+mu+n-gamma) / (n! Gamma(1+mu-gamma))``.
    The gamma quotient is taken as the finite product
    ``prod_{k=1..n} (mu + k - gamma)``, which is also the correct limit when
    ``1+mu-gamma`` sits on a gamma pole (orthogonality cases give zero).
    The result is exact when ``gamma`` is a positive integer and ``mu`` is
    rational.
    """
    if not gamma > 0:
        raise GammaPoleError(f"gamma must be positive, got {gamma}")
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    n = int(n)
    exact = is_exact(gamma, mu) and Fraction(gamma).denominator == 1
    if exact:
        mu, gamma = Fraction(mu), Fraction(gamma)
        prod = Fraction(1)
        for k in range(1, n + 1):
            prod *= mu + k - gamma
        return math.factorial(int(gamma) - 1) * prod / math.factorial(n)
    mu, gamma = float(mu), float(gamma)
    prod = 1.0
    for k in range(1, n + 1):
        prod *= mu + k - gamma
    if not math.isfinite(prod):
        raise GammaPoleError("product representation overflowed")
    return math.gamma(gamma) * prod / math.factorial(n)


def laguerre_norm_integral(n: int, mu: Number) -> Number:
    """
    Closed form of ``int_0^inf exp(-z) z**(mu-1) [L_n^(mu)(z)]**2 dz``,
    i.e. ``Gamma(mu+n+1) / (mu n!)``.

    Note the weight ``z**(mu-1)``: this is the norm that appears in the Morse
    eigenfunctions, not the orthogonality weight ``z**mu``.
    """
    if not mu > 0:
        raise ValueError(f"norm integral requires mu > 0, got {mu}")
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    n = int(n)
    # Gamma(mu+n+1)/mu = Gamma(mu) * prod_{k=1..n} (mu+k)
    ratio = gamma_ratio(mu + n + 1, n)
    if is_exact(mu) and Fraction(mu).denominator == 1:
        return math.factorial(int(mu) - 1) * ratio / math.factorial(n)
    return math.exp(math.lgamma(float(mu))) * float(ratio) / math.factorial(n)


def horner(coeffs: Sequence[Number], z):
    """Evaluate an ascending coefficient sequence at ``z``."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc
