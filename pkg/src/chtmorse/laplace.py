"""
Transform-space engine for the confluent hypergeometric equation

    xi Phi'' + (b - xi) Phi' - a Phi = 0.

Its Laplace transform F(s) obeys the first-order equation

    s (s - 1) F' + [(2 - b) s + a - 1] F = (1 - b) Phi(0).

For a = -n the polynomial solution has a transform that is a finite principal
part ``sum_j c_j s**(j - n - 1)``. This module builds that series from the
closed-form coefficients, checks the transformed ODE as an exact Laurent
polynomial identity and inverts it term by term. It is a constructor plus a
verifier, not an ODE solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .special import Number, gamma_ratio, is_exact, laguerre_coeffs


class NotQuantizedError(ValueError):
    """Raised when ``-a`` is not a non-negative integer."""


class IdentificationError(AssertionError):
    """Inverse transform and Laguerre expansion disagree."""

    def __init__(self, index: int, got, expected):
        super().__init__(
            f"coefficient of xi^{index} differs: {got!r} != {expected!r}"
        )
        self.index = index


def _exactify(*values):
    """Return values as Fractions when all are rational, else as floats."""
    if is_exact(*values):
        return tuple(Fraction(v) for v in values)
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class LaurentPoly:
    """Finite Laurent polynomial in ``s``: ``sum_i coeffs[i] * s**(low + i)``."""

    low: int
    coeffs: tuple

    @classmethod
    def from_terms(cls, terms: Dict[int, Number]) -> "LaurentPoly":
        if not terms:
            return cls(0, ())
        low, high = min(terms), max(terms)
        return cls(low, tuple(terms.get(k, 0) for k in range(low, high + 1)))

    def terms(self) -> Dict[int, Number]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c != 0}

    def trimmed(self) -> "LaurentPoly":
        return LaurentPoly.from_terms(self.terms())

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms())
        for k, c in other.terms().items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly.from_terms(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.low, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, factor) -> "LaurentPoly":
        return LaurentPoly(self.low, tuple(factor * c for c in self.coeffs))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``s**k``."""
        return LaurentPoly(self.low + k, self.coeffs)

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly.from_terms(
            {k - 1: k * c for k, c in self.terms().items() if k != 0}
        )

    def __call__(self, s):
        return sum(c * s ** (self.low + i) for i, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class CHTParams:
    """Parameters ``(a, b)`` of the confluent hypergeometric equation."""

    a: Number
    b: Number

    def __post_init__(self):
        if not self.b > 1:
            raise ValueError(f"b must exceed 1, got {self.b}")

    @property
    def quantized(self) -> bool:
        return is_quantized(self.a)

    @property
    def n(self) -> Optional[int]:
        return quantum_number(self.a)


@dataclass(frozen=True)
class TransformSeries:
    """
    Principal part ``F(s) = sum_j coeffs[j] * s**(j - pole_order)``.

    ``pole_order == len(coeffs)``, ``coeffs[0]`` is nonzero and the residue at
    ``s = 0`` is ``coeffs[-1]``.
    """

    pole_order: int
    coeffs: tuple
    c0: Number
    param_b: Number

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValueError("leading coefficient c_0 must be nonzero")
        if self.pole_order != len(self.coeffs):
            raise ValueError(
                f"pole order {self.pole_order} inconsistent with "
                f"{len(self.coeffs)} coefficients"
            )

    @property
    def n(self) -> int:
        return self.pole_order - 1

    @property
    def residue(self) -> Number:
        return self.coeffs[-1]

    def as_laurent(self) -> LaurentPoly:
        return LaurentPoly(-self.pole_order, tuple(self.coeffs))

    def __call__(self, s):
        return self.as_laurent()(s)


def singularity_exponent(a: Number) -> Number:
    """Order ``nu = 1 - a`` of the pole of F at ``s = 0``."""
    return 1 - a


def is_quantized(a: Number) -> bool:
    """True when ``1 - a`` is a positive integer, i.e. ``a = -n``."""
    nu = singularity_exponent(a)
    if is_exact(nu):
        return Fraction(nu).denominator == 1 and nu >= 1
    nu = float(nu)
    return nu.is_integer() and nu >= 1


def quantum_number(a: Number) -> Optional[int]:
    return int(-a) if is_quantized(a) else None


def _check(n: int, b, c0) -> None:
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if not b > 1:
        raise ValueError(f"b must exceed 1, got {b}")
    if c0 == 0:
        raise ValueError("c0 must be nonzero")


def coefficient_recursion(n: int, b: Number, c0: Number) -> list:
    """Iterate ``c_{j+1} = c_j (1 + j - n - b) / (j + 1)`` from ``c0``."""
    _check(n, b, c0)
    b, c0 = _exactify(b, c0)
    out = [c0]
    for j in range(int(n)):
        out.append(out[-1] * (1 + j - n - b) / (j + 1))
    return out


def coefficient_closed_form(n: int, b: Number, c0: Number, j: int) -> Number:
    """``c_j = c0 (-1)^j / j! * Gamma(n+b) / Gamma(n+b-j)``."""
    _check(n, b, c0)
    if not 0 <= j <= n:
        raise ValueError(f"j must lie in [0, {n}], got {j}")
    b, c0 = _exactify(b, c0)
    sign = -1 if j % 2 else 1
    return sign * c0 * gamma_ratio(n + b, j) / math.factorial(j)


def build_transform(n: int, b: Number, c0: Optional[Number] = None) -> TransformSeries:
    """
    Laplace transform of the degree-``n`` polynomial solution.

    ``c0`` defaults to ``(-1)**n`` so that the inverse is exactly
    ``L_n^(b-1)``.
    """
    if c0 is None:
        c0 = -1 if n % 2 else 1
    coeffs = tuple(coefficient_closed_form(n, b, c0, j) for j in range(int(n) + 1))
    return TransformSeries(pole_order=int(n) + 1, coeffs=coeffs, c0=coeffs[0], param_b=b)


def transform_for(params: CHTParams, c0: Optional[Number] = None) -> TransformSeries:
    """Build the transform for quantized ``params``; refuse otherwise."""
    if not params.quantized:
        raise NotQuantizedError(
            f"a = {params.a} is not a non-positive integer; "
            "no polynomial solution exists"
        )
    return build_transform(params.n, params.b, c0)


def ode_residual(F: TransformSeries, a: Number, b: Number, phi0: Number) -> LaurentPoly:
    """
    Left side minus right side of the transformed equation, collected as a
    trimmed Laurent polynomial. It is identically zero exactly when ``a = -n``
    and ``phi0`` is the residue of ``F``.
    """
    if is_exact(a, b, phi0, *F.coeffs):
        a, b, phi0 = Fraction(a), Fraction(b), Fraction(phi0)
    else:
        a, b, phi0 = float(a), float(b), float(phi0)
    f = F.as_laurent()
    fp = f.derivative()
    lhs = fp.shift(2) - fp.shift(1) + f.shift(1).scale(2 - b) + f.scale(a - 1)
    rhs = LaurentPoly(0, ((1 - b) * phi0,))
    return (lhs - rhs).trimmed()


def inverse_transform(F: TransformSeries) -> Tuple[Number, ...]:
    """
    Invert term by term with ``L^{-1}{s**-(k+1)} = xi**k / k!``.

    Returns the ascending coefficients of ``Phi(xi)``.
    """
    n = F.n
    phi = [0] * (n + 1)
    for j, c in enumerate(F.coeffs):
        k = n - j
        phi[k] = c / math.factorial(k)
    return tuple(phi)


def initial_value(F: TransformSeries) -> Number:
    """``lim_{s->inf} s F(s)``, i.e. the coefficient of ``1/s``."""
    return F.residue


def laguerre_identification(
    n: int, b: Number, c0: Optional[Number] = None, rel_tol: float = 1e-12
) -> Tuple[tuple, tuple]:
    """
    Compare ``inverse_transform(build_transform(n, b, c0))`` with
    ``c0 (-1)**n L_n^(b-1)`` coefficient by coefficient.

    Returns ``(phi, expected)``. Exact inputs must match exactly; float inputs
    to ``rel_tol``. Raises :class:`IdentificationError` at the first mismatch.
    """
    F = build_transform(n, b, c0)
    phi = inverse_transform(F)
    b_, = _exactify(b)
    sign = -1 if n % 2 else 1
    expected = tuple(sign * F.c0 * c for c in laguerre_coeffs(n, b_ - 1).coeffs)
    exact = is_exact(*phi, *expected)
    for k, (got, want) in enumerate(zip(phi, expected)):
        ok = got == want if exact else math.isclose(got, want, rel_tol=rel_tol, abs_tol=0.0)
        if not ok:
            raise IdentificationError(k, got, want)
    return phi, expected
