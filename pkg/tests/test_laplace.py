from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from chtmorse.laplace import (
    CHTParams,
    IdentificationError,
    LaurentPoly,
    NotQuantizedError,
    TransformSeries,
    build_transform,
    coefficient_closed_form,
    coefficient_recursion,
    initial_value,
    inverse_transform,
    is_quantized,
    laguerre_identification,
    ode_residual,
    quantum_number,
    singularity_exponent,
    transform_for,
)
from chtmorse.special import horner, laguerre_coeffs

B_VALUES = [Fraction(11, 10), Fraction(2), Fraction(7, 2), Fraction(7)]
C0_VALUES = [Fraction(1), Fraction(-3), Fraction(1, 2)]

S, XI = sp.symbols("s xi", positive=True)


def sympy_transform(phi_coeffs):
    """Laplace transform of an ascending polynomial, as {exponent: Fraction}."""
    phi = sum(sp.Rational(c.numerator, c.denominator) * XI**k for k, c in enumerate(phi_coeffs))
    F = sp.expand(sp.laplace_transform(phi, XI, S, noconds=True))
    out = {}
    for term in sp.Add.make_args(F):
        coeff, power = term.as_coeff_exponent(S)
        out[int(power)] = Fraction(int(coeff.p), int(coeff.q))
    return out


# -- coefficients --------------------------------------------------------------


def test_recursion_examples():
    assert coefficient_recursion(0, 3, 1) == [1]
    assert coefficient_recursion(2, 3, 1) == [1, -4, 6]
    assert coefficient_recursion(1, 2, 2) == [2, -4]


def test_closed_form_examples():
    assert coefficient_closed_form(2, 3, 1, 0) == 1
    assert coefficient_closed_form(2, 3, 1, 1) == -4
    assert coefficient_closed_form(2, 3, 1, 2) == 6


def test_closed_form_range_check():
    with pytest.raises(ValueError):
        coefficient_closed_form(2, 3, 1, 3)


@pytest.mark.parametrize("b", B_VALUES)
def test_recursion_equals_closed_form_exactly(b):
    for n in range(21):
        for c0 in C0_VALUES:
            rec = coefficient_recursion(n, b, c0)
            closed = [coefficient_closed_form(n, b, c0, j) for j in range(n + 1)]
            assert rec == closed
            assert all(isinstance(c, Fraction) for c in rec)


@pytest.mark.parametrize("b", [1.1, 2.0, 3.5, 7.0, 2.3456])
def test_recursion_equals_closed_form_float(b):
    for n in range(21):
        rec = coefficient_recursion(n, b, 1.0)
        closed = [coefficient_closed_form(n, b, 1.0, j) for j in range(n + 1)]
        np.testing.assert_allclose(rec, closed, rtol=1e-12)


@pytest.mark.parametrize("b", B_VALUES)
def test_coefficients_alternate_in_sign(b):
    for n in range(21):
        coeffs = coefficient_recursion(n, b, 1)
        assert all(n + b - j > 1 for j in range(n + 1))
        signs = [1 if c > 0 else -1 for c in coeffs]
        assert signs == [(-1) ** j for j in range(n + 1)]


# -- series --------------------------------------------------------------------


def test_build_transform_examples():
    F = build_transform(0, 2, 1)
    assert F.coeffs == (1,) and F.pole_order == 1
    assert F(Fraction(3)) == Fraction(1, 3)
    F = build_transform(2, 3, 1)
    assert F.coeffs == (1, -4, 6) and F.pole_order == 3
    F = build_transform(1, 2, 1)
    assert F.coeffs == (1, -2) and F.pole_order == 2


def test_build_transform_default_c0():
    assert build_transform(1, 2).coeffs == (-1, 2)
    assert build_transform(2, 3).coeffs == (1, -4, 6)


def test_series_invariants():
    F = build_transform(5, Fraction(7, 2), Fraction(-3))
    assert F.pole_order == len(F.coeffs) == 6
    assert F.c0 == F.coeffs[0] != 0
    assert F.residue == F.coeffs[-1]
    with pytest.raises(ValueError):
        TransformSeries(pole_order=2, coeffs=(0, 1), c0=0, param_b=2)
    with pytest.raises(ValueError):
        TransformSeries(pole_order=3, coeffs=(1, 1), c0=1, param_b=2)


@pytest.mark.parametrize("n,b", [(0, 2), (1, 2), (2, 3), (4, Fraction(7, 2)), (6, Fraction(11, 10))])
def test_series_is_laplace_transform_of_inverse(n, b):
    # sympy transforms Phi independently; it must give back our series
    F = build_transform(n, b)
    want = {j - F.pole_order: c for j, c in enumerate(F.coeffs) if c != 0}
    assert sympy_transform(inverse_transform(F)) == want


def test_power_law_pair_numerically():
    # L{xi^k / k!} = s^-(k+1), checked by quadrature at s = 1.7
    from scipy.integrate import quad
    from math import factorial, exp

    s = 1.7
    for k in range(5):
        val, _ = quad(lambda x: exp(-s * x) * x**k / factorial(k), 0, np.inf, epsabs=1e-14)
        assert val == pytest.approx(s ** -(k + 1), rel=1e-10)


# -- transformed ODE -------------------------------------------------------------


def test_ode_residual_constant_solution():
    F = build_transform(0, 2, 1)
    assert ode_residual(F, 0, 2, 1).is_zero()


def test_ode_residual_n2():
    F = build_transform(2, 3, 1)
    assert ode_residual(F, -2, 3, 6).is_zero()


def test_ode_residual_wrong_quantization():
    F = build_transform(2, 3, 1)
    r = ode_residual(F, -1, 3, 6)
    assert not r.is_zero()
    # changing a by +1 adds exactly F to the left side
    assert r.terms() == {-3: 1, -2: -4, -1: 6}


def test_ode_residual_wrong_phi0():
    F = build_transform(2, 3, 1)
    assert ode_residual(F, -2, 3, 5).terms() == {0: -2}


@pytest.mark.parametrize("b", B_VALUES)
def test_ode_identity_all_quantized_triples(b):
    for n in range(21):
        for c0 in C0_VALUES:
            F = build_transform(n, b, c0)
            assert ode_residual(F, -n, b, F.residue).is_zero()
            assert not ode_residual(F, -n + Fraction(1, 2), b, F.residue).is_zero()
            assert not ode_residual(F, -n - 1, b, F.residue).is_zero()


def test_ode_residual_float_path():
    F = build_transform(3, 2.5, 1.0)
    r = ode_residual(F, -3, 2.5, F.residue)
    assert max((abs(c) for c in r.coeffs), default=0.0) < 1e-12


def test_transformed_ode_matches_symbolic_derivation():
    # transform the confluent equation symbolically for a polynomial Phi
    a, b = sp.Integer(-3), sp.Rational(5, 2)
    F = build_transform(3, Fraction(5, 2))
    phi = sum(sp.Rational(c.numerator, c.denominator) * XI**k
              for k, c in enumerate(inverse_transform(F)))
    kummer = XI * sp.diff(phi, XI, 2) + (b - XI) * sp.diff(phi, XI) - a * phi
    assert sp.expand(kummer) == 0
    Fs = sp.laplace_transform(phi, XI, S, noconds=True)
    lhs = S * (S - 1) * sp.diff(Fs, S) + ((2 - b) * S + a - 1) * Fs
    assert sp.simplify(lhs - (1 - b) * phi.subs(XI, 0)) == 0


# -- inversion -------------------------------------------------------------------


def test_inverse_examples():
    assert inverse_transform(build_transform(0, 2, 1)) == (1,)
    assert inverse_transform(build_transform(2, 3, 1)) == (6, -4, Fraction(1, 2))
    assert inverse_transform(build_transform(1, 2, 1)) == (-2, 1)


def test_initial_value_examples():
    assert initial_value(build_transform(0, 2, 1)) == 1
    assert initial_value(build_transform(2, 3, 1)) == 6
    assert initial_value(build_transform(1, 2, 1)) == -2


def test_initial_value_is_limit_of_sF():
    F = build_transform(4, Fraction(7, 2), 1)
    s = Fraction(10) ** 30
    assert abs(float(s * F(s) - initial_value(F))) < 1e-20


@settings(max_examples=80, deadline=None)
@given(
    n=st.integers(0, 20),
    b=st.fractions(min_value=Fraction(51, 50), max_value=30, max_denominator=50),
    c0=st.fractions(min_value=-10, max_value=10, max_denominator=20).filter(lambda c: c != 0),
)
def test_round_trip_initial_value(n, b, c0):
    F = build_transform(n, b, c0)
    phi = inverse_transform(F)
    assert initial_value(F) == phi[0] == horner(phi, 0)
    assert ode_residual(F, -n, b, initial_value(F)).is_zero()


def test_laguerre_identification_examples():
    phi, want = laguerre_identification(0, 2, 1)
    assert phi == want == (1,)
    phi, want = laguerre_identification(2, 3, 1)
    assert phi == want == (6, -4, Fraction(1, 2))
    phi, want = laguerre_identification(1, 2, 1)
    assert phi == want == (-2, 1)


@pytest.mark.parametrize("b", B_VALUES + [Fraction(13, 7)])
def test_laguerre_identification_exact(b):
    for n in range(21):
        phi = inverse_transform(build_transform(n, b))
        assert phi == laguerre_coeffs(n, b - 1).coeffs
        laguerre_identification(n, b, Fraction(-3))


def test_laguerre_identification_float():
    phi, want = laguerre_identification(7, 2.37)
    np.testing.assert_allclose(phi, want, rtol=1e-12)


def test_identification_error_reports_index():
    err = IdentificationError(3, 1, 2)
    assert err.index == 3 and "xi^3" in str(err)


def test_asymptotic_leading_monomial():
    # pole of order n+1 at s=0  <->  Phi ~ c0 xi^n / n! for large xi.
    # The first correction is exactly -(n+b-1) n / xi, so the relative gap is
    # a few percent at xi = 1e3 and shrinks as 1/xi.
    from math import factorial

    for b in B_VALUES:
        for n in range(6):
            F = build_transform(n, b, 1)
            phi = inverse_transform(F)
            for x in (1e3, 1e5):
                lead = float(F.c0) * x**n / factorial(n)
                gap = horner([float(c) for c in phi], x) / lead - 1
                predicted = -float(n + b - 1) * n / x
                assert abs(gap - predicted) <= 2 * (float(n + b) * n / x) ** 2
            assert abs(gap) < 0.01


# -- quantization ----------------------------------------------------------------


def test_singularity_exponent_examples():
    assert singularity_exponent(0) == 1 and is_quantized(0) and quantum_number(0) == 0
    assert singularity_exponent(-2) == 3 and quantum_number(-2) == 2
    assert singularity_exponent(-0.5) == 1.5 and not is_quantized(-0.5)
    assert not is_quantized(1) and not is_quantized(Fraction(-5, 2))
    assert is_quantized(-4.0)


def test_cht_params():
    with pytest.raises(ValueError):
        CHTParams(a=0, b=1)
    p = CHTParams(a=-3, b=Fraction(5, 2))
    assert p.quantized and p.n == 3
    assert transform_for(p).coeffs == build_transform(3, Fraction(5, 2)).coeffs
    with pytest.raises(NotQuantizedError):
        transform_for(CHTParams(a=-0.5, b=2))


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        build_transform(2, 1)
    with pytest.raises(ValueError):
        build_transform(2, 3, 0)
    with pytest.raises(ValueError):
        coefficient_recursion(-1, 3, 1)


def test_laurent_poly_algebra():
    p = LaurentPoly.from_terms({-2: 3, 0: 1})
    q = LaurentPoly.from_terms({-2: -3, 1: 2})
    assert (p + q).trimmed().terms() == {0: 1, 1: 2}
    assert p.derivative().terms() == {-3: -6}
    assert p.shift(2).terms() == {0: 3, 2: 1}
    assert (p - p).is_zero()
    assert p(Fraction(2)) == Fraction(7, 4)
