import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chtmorse.morse import MorseParams, energy
from chtmorse.numerics import (
    GridSpec,
    NoBoundStateError,
    QuadratureError,
    QuadratureSpec,
    default_grid,
    grid_convergence_study,
    integrate_halfline,
    morse_numerov,
    numerov_eigenvalues,
)
from chtmorse.special import laguerre_eval, laguerre_norm_integral

K5 = MorseParams(-5.0, 0.5)


def harmonic(x):
    return 0.5 * x * x


# -- grid and quadrature specs ---------------------------------------------------


def test_grid_spec():
    g = GridSpec(-1.0, 1.0, 5)
    assert g.h == 0.5
    np.testing.assert_array_equal(g.points(), [-1, -0.5, 0, 0.5, 1])
    r = g.refined(2)
    assert r.n_points == 17 and r.h == 0.125
    for bad in [(1.0, 1.0, 5), (2.0, 1.0, 5), (0.0, 1.0, 2)]:
        with pytest.raises(ValueError):
            GridSpec(*bad)


def test_quadrature_spec_validation():
    for kw in [dict(scheme="simpson"), dict(order=0), dict(tol=0.0), dict(weight_power=-1.0)]:
        with pytest.raises(ValueError):
            QuadratureSpec(**kw)


# -- eigenvalues -----------------------------------------------------------------


def test_harmonic_ground_state():
    w = numerov_eigenvalues(harmonic, GridSpec(-10, 10, 2001), 1, negative_only=False)
    assert abs(w[0] - 0.5) < 1e-6


def test_harmonic_ladder():
    w = numerov_eigenvalues(harmonic, GridSpec(-12, 12, 4001), 6, negative_only=False)
    np.testing.assert_allclose(w, np.arange(6) + 0.5, atol=1e-6)


def test_harmonic_positive_levels_signal_by_default():
    with pytest.raises(NoBoundStateError):
        numerov_eigenvalues(harmonic, GridSpec(-10, 10, 401), 1)


def test_morse_ground_state_example():
    w = numerov_eigenvalues(K5.potential, GridSpec(-3, 25, 4000), 1)
    assert abs(w[0] - (-10.125)) < 1e-3


def test_morse_full_spectrum():
    w = morse_numerov(K5, GridSpec(-3, 25, 4001))
    exact = [energy(K5, n) for n in range(5)]
    np.testing.assert_allclose(w, exact, rtol=1e-4)


def test_no_bound_state():
    p = MorseParams(-0.4, 0.5)
    with pytest.raises(NoBoundStateError):
        morse_numerov(p, GridSpec(-3, 25, 801))
    with pytest.raises(NoBoundStateError):
        numerov_eigenvalues(p.potential, GridSpec(-3, 25, 801), 1)


def test_too_many_states_requested():
    with pytest.raises(NoBoundStateError):
        numerov_eigenvalues(K5.potential, GridSpec(-3, 25, 801), 6)


def test_bad_arguments():
    with pytest.raises(ValueError):
        numerov_eigenvalues(harmonic, GridSpec(-1, 1, 11), 0)
    with pytest.raises(ValueError):
        numerov_eigenvalues(lambda x: np.where(np.abs(x) < 0.5, np.inf, 0.0), GridSpec(-1, 1, 11), 1)
    with pytest.raises(ValueError):
        numerov_eigenvalues(harmonic, GridSpec(-1, 1, 11), 1, method="fem")


def test_matrix_and_shooting_agree():
    g = GridSpec(-3, 25, 1201)
    a = morse_numerov(K5, g, method="matrix")
    b = morse_numerov(K5, g, method="shooting")
    np.testing.assert_allclose(a, b, rtol=1e-10)


def test_sparse_and_dense_paths_agree():
    # <= 400 interior points takes the dense route
    w_dense = numerov_eigenvalues(harmonic, GridSpec(-8, 8, 401), 4, negative_only=False)
    w_sparse = numerov_eigenvalues(harmonic, GridSpec(-8, 8, 403), 4, negative_only=False)
    np.testing.assert_allclose(w_dense, w_sparse, rtol=1e-4)


def test_units_are_honoured():
    # same physics in other units: E scales with hbar^2 / m
    p = MorseParams(-5.0 * 4, 0.5 * 4, alpha=1.0, mass=0.25, hbar=1.0)
    assert p.well_strength() == pytest.approx(K5.well_strength())
    w = morse_numerov(p, GridSpec(-3, 25, 2001), 2)
    np.testing.assert_allclose(w, [energy(p, 0), energy(p, 1)], rtol=1e-4)


def test_deterministic():
    g = GridSpec(-3, 25, 3001)
    a = morse_numerov(K5, g)
    b = morse_numerov(K5, g)
    assert a.tobytes() == b.tobytes()


# -- default window --------------------------------------------------------------


@pytest.mark.parametrize(
    "p", [K5, MorseParams(-2.0, 0.5), MorseParams(-7.3, 0.9, alpha=1.7, mass=3.2, hbar=0.6)]
)
def test_default_grid_truncation(p):
    g = default_grid(p)
    e0 = energy(p, 0)
    assert p.potential(g.x_min) == pytest.approx(1e3 * abs(e0), rel=1e-9)
    states = [energy(p, n) for n in range(100) if n < math.ceil(p.well_strength() - 0.5)]
    assert abs(p.potential(g.x_max)) < 1e-3 * abs(states[-1])


def test_default_grid_requires_well():
    with pytest.raises(ValueError):
        default_grid(MorseParams(1.0, 0.5))


# -- quadrature ------------------------------------------------------------------


def test_adaptive_exponential():
    assert integrate_halfline(lambda z: np.exp(-z), QuadratureSpec("adaptive", tol=1e-12)) == (
        pytest.approx(1.0, rel=1e-12)
    )


def test_gauss_laguerre_degree_three():
    q = QuadratureSpec("gauss_laguerre", order=8)
    assert integrate_halfline(lambda z: z * (3 - z) ** 2, q, weighted=True) == pytest.approx(
        3.0, rel=1e-14
    )
    f = lambda z: np.exp(-z) * z * (3 - z) ** 2
    assert integrate_halfline(f, q) == pytest.approx(3.0, rel=1e-13)


def test_norm_integral_n5_mu8():
    want = laguerre_norm_integral(5, 8)
    assert want == math.factorial(13) // (8 * math.factorial(5)) == 6486480
    q = QuadratureSpec("gauss_laguerre", order=12, weight_power=7)
    got = integrate_halfline(lambda z: laguerre_eval(5, 8, z) ** 2, q, weighted=True)
    assert got == pytest.approx(float(want), rel=1e-12)
    f = lambda z: np.exp(-z) * z**7 * laguerre_eval(5, 8.0, z) ** 2
    assert integrate_halfline(f, QuadratureSpec(tol=1e-12)) == pytest.approx(float(want), rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(
    order=st.integers(1, 20),
    data=st.data(),
)
def test_gauss_laguerre_exactness(order, data):
    # oracle: int e^{-z} z^k dz = k!, summed in exact arithmetic;
    # positive coefficients keep the reference free of cancellation
    deg = data.draw(st.integers(0, 2 * order - 1))
    coeffs = data.draw(
        st.lists(st.fractions(min_value=Fraction(1, 100), max_value=10, max_denominator=100),
                 min_size=deg + 1, max_size=deg + 1)
    )
    want = float(sum(c * math.factorial(k) for k, c in enumerate(coeffs)))
    fc = [float(c) for c in coeffs]
    got = integrate_halfline(
        lambda z: np.polynomial.polynomial.polyval(z, fc),
        QuadratureSpec("gauss_laguerre", order=order),
        weighted=True,
    )
    assert abs(got - want) <= 1e-13 * want


def test_adaptive_reports_nonconvergence():
    with pytest.raises(QuadratureError):
        integrate_halfline(lambda z: np.sin(z) ** 2, QuadratureSpec(tol=1e-12))


def test_adaptive_weighted_mode():
    q = QuadratureSpec("adaptive", tol=1e-12, weight_power=2.0)
    assert integrate_halfline(lambda z: 1.0, q, weighted=True) == pytest.approx(2.0, rel=1e-12)


# -- convergence -----------------------------------------------------------------


def test_convergence_order():
    g = default_grid(K5, n_points=201)
    levels = [g.refined(k) for k in range(4)]
    table = grid_convergence_study(K5, levels)
    assert len(table.rows) == 4 and len(table.orders) == 3
    assert table.observed_order >= 3.5 and table.reliable
    ratios = [a.error / b.error for a, b in zip(table.rows, table.rows[1:])]
    assert all(12 < r < 20 for r in ratios)


def test_convergence_single_level():
    table = grid_convergence_study(K5, [GridSpec(-3, 25, 801)])
    assert len(table.rows) == 1
    assert table.observed_order is None and not table.reliable


def test_convergence_truncated_window_is_flagged():
    # x_max inside the shallowest state's tail: the error stalls at the wall error
    levels = [GridSpec(-3, 6, 201).refined(k) for k in range(4)]
    table = grid_convergence_study(K5, levels, state=4)
    assert not table.reliable
    assert table.observed_order < 3.5


def test_convergence_levels_must_refine():
    with pytest.raises(ValueError):
        grid_convergence_study(K5, [GridSpec(-3, 25, 801), GridSpec(-3, 25, 401)])
