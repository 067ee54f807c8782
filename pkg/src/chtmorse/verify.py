"""End-to-end invariant suite behind ``chtmorse verify``."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List

import numpy as np

from . import laplace, morse, numerics, special

REFERENCE = morse.MorseParams(v1=-5.0, v2=0.5)
B_VALUES = (Fraction(11, 10), Fraction(2), Fraction(7, 2), Fraction(7))
C0_VALUES = (Fraction(1), Fraction(-3), Fraction(1, 2))


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool


@dataclass
class GroupResult:
    name: str
    checks: List[Check] = field(default_factory=list)
    seconds: float = 0.0
    error: str = ""

    @property
    def passed(self) -> bool:
        return not self.error and all(c.passed for c in self.checks)

    def below(self, name: str, value: float, tol: float) -> None:
        self.checks.append(Check(name, float(value), tol, bool(value < tol)))

    def at_least(self, name: str, value: float, bound: float) -> None:
        self.checks.append(Check(name, float(value), bound, bool(value >= bound)))


@dataclass(frozen=True)
class SuiteConfig:
    params: morse.MorseParams = REFERENCE
    quick: bool = False
    perturb_energy: float = 0.0
    grid: numerics.GridSpec = numerics.GridSpec(-3.0, 25.0, 4001)

    @property
    def n_max(self) -> int:
        return 8 if self.quick else 20


def _special_fn(cfg: SuiteConfig, g: GroupResult) -> None:
    worst = 0.0
    for mu in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(11, 2)):
        zs = np.linspace(0.0, 50.0, 26 if cfg.quick else 101)
        for n in range(cfg.n_max + 1):
            poly = special.laguerre_coeffs(n, mu)
            rec = special.laguerre_eval(n, float(mu), zs)
            for z, r in zip(zs, rec):
                zf = Fraction(z)
                exact = float(poly(zf))
                scale = float(special.horner([abs(c) for c in poly.coeffs], zf))
                worst = max(worst, abs(r - exact) / scale)
    g.below("recurrence_vs_coefficients", worst, 1e-12)

    origin = 0.0
    for mu in (Fraction(1, 2), Fraction(3)):
        for n in range(cfg.n_max + 1):
            want = special.gamma_ratio(n + mu + 1, n) / math.factorial(n)
            origin += float(special.laguerre_eval(n, mu, 0) != want)
    g.below("value_at_origin_mismatches", origin, 0.5)

    worst = 0.0
    for mu in (1, 2, 4):
        q = numerics.QuadratureSpec("gauss_laguerre", order=20, weight_power=mu)
        for n in range(9):
            for m in range(n):
                val = numerics.integrate_halfline(
                    lambda z: special.laguerre_eval(n, mu, z) * special.laguerre_eval(m, mu, z),
                    q, weighted=True,
                )
                worst = max(worst, abs(val))
    g.below("orthogonality", worst, 1e-8)

    worst = 0.0
    for mu in (1, 2, 4, 7.5):
        q = numerics.QuadratureSpec("gauss_laguerre", order=24, weight_power=mu - 1)
        for n in range(11):
            closed = float(special.laguerre_norm_integral(n, mu))
            quad = numerics.integrate_halfline(
                lambda z: special.laguerre_eval(n, mu, z) ** 2, q, weighted=True
            )
            worst = max(worst, abs(quad - closed) / abs(closed))
    g.below("norm_integral_vs_quadrature", worst, 1e-10)

    worst = 0.0
    for gamma in (1, 2, 3.5):
        q = numerics.QuadratureSpec("gauss_laguerre", order=24, weight_power=gamma - 1)
        for mu in (1, 2, 4, 7.5):
            for n in range(11):
                closed = float(special.laguerre_weighted_integral(gamma, n, mu))
                quad = numerics.integrate_halfline(
                    lambda z: special.laguerre_eval(n, mu, z), q, weighted=True
                )
                scale = max(abs(closed), 1.0)
                worst = max(worst, abs(quad - closed) / scale)
    g.below("weighted_integral_vs_quadrature", worst, 1e-10)


def _transform_identity(cfg: SuiteConfig, g: GroupResult) -> None:
    bad_zero = bad_nonzero = bad_rec = bad_ident = bad_ivt = 0
    for b in B_VALUES:
        for n in range(cfg.n_max + 1):
            for c0 in C0_VALUES:
                F = laplace.build_transform(n, b, c0)
                if not laplace.ode_residual(F, -n, b, F.residue).is_zero():
                    bad_zero += 1
                if laplace.ode_residual(F, -n + 1, b, F.residue).is_zero():
                    bad_nonzero += 1
                if list(F.coeffs) != laplace.coefficient_recursion(n, b, c0):
                    bad_rec += 1
                if laplace.initial_value(F) != laplace.inverse_transform(F)[0]:
                    bad_ivt += 1
            try:
                laplace.laguerre_identification(n, b)
            except laplace.IdentificationError:
                bad_ident += 1
    g.below("ode_residual_nonzero_when_quantized", bad_zero, 0.5)
    g.below("ode_residual_zero_when_not_quantized", bad_nonzero, 0.5)
    g.below("recursion_vs_closed_form_mismatches", bad_rec, 0.5)
    g.below("laguerre_identification_mismatches", bad_ident, 0.5)
    g.below("initial_value_mismatches", bad_ivt, 0.5)


def _spectrum_oracle(cfg: SuiteConfig, g: GroupResult) -> None:
    states = morse.spectrum(cfg.params)
    w = numerics.morse_numerov(cfg.params, cfg.grid, len(states))
    rel = max(abs(wi - st.energy) / abs(st.energy) for wi, st in zip(w, states))
    g.below("numerov_vs_closed_form", rel, 1e-4)
    form = max(
        abs(st.energy - morse.energy_from_s(cfg.params, st.s_exponent)) / abs(st.energy)
        for st in states
    )
    g.below("energy_forms_agree", form, 1e-14)


def _residual(cfg: SuiteConfig, g: GroupResult) -> None:
    xs = np.linspace(-2.0, 8.0, 2001)
    for st in morse.spectrum(cfg.params):
        e = st.energy * (1.0 + cfg.perturb_energy)
        r = morse.schrodinger_residual(cfg.params, st, xs, energy=e)
        g.below(f"residual_n{st.n}", r, 1e-4)


def _orthonormality(cfg: SuiteConfig, g: GroupResult) -> None:
    states = morse.spectrum(cfg.params)
    worst = 0.0
    for i, a in enumerate(states):
        for b in states[i:]:
            want = 1.0 if a.n == b.n else 0.0
            worst = max(worst, abs(morse.overlap(a, b) - want))
    g.below("gram_minus_identity", worst, 1e-8)


def _nodes(cfg: SuiteConfig, g: GroupResult) -> None:
    wrong = sum(morse.node_count(st) != st.n for st in morse.spectrum(cfg.params))
    g.below("node_count_mismatches", wrong, 0.5)


def _threshold(cfg: SuiteConfig, g: GroupResult) -> None:
    rng = np.random.default_rng(20240611)
    wrong = 0
    for _ in range(100):
        alpha, mass, hbar = rng.uniform(0.5, 2.0, 3)
        v2 = rng.uniform(0.1, 3.0)
        k = rng.uniform(0.0, 1.5)
        v1 = -k * hbar * alpha * math.sqrt(2 * mass * v2) / mass
        p = morse.MorseParams(v1, v2, alpha, mass, hbar)
        k_true = p.well_strength()
        if abs(k_true - 0.5) < 1e-12:
            continue
        want = 1 if k_true > 0.5 else 0
        wrong += morse.bound_state_count(p) != want
        wrong += morse.bound_state_count(morse.MorseParams(-v1, v2, alpha, mass, hbar)) != 0
        wrong += morse.bound_state_count(morse.MorseParams(v1, -v2, alpha, mass, hbar)) != 0
    g.below("threshold_mismatches", wrong, 0.5)


def _convergence(cfg: SuiteConfig, g: GroupResult) -> None:
    base = numerics.default_grid(cfg.params, 201)
    table = numerics.grid_convergence_study(cfg.params, [base.refined(k) for k in range(4)])
    g.at_least("observed_order", table.observed_order, 3.5)


GROUPS: List[tuple] = [
    ("special_fn", _special_fn),
    ("transform_identity", _transform_identity),
    ("spectrum_oracle", _spectrum_oracle),
    ("schrodinger_residual", _residual),
    ("orthonormality", _orthonormality),
    ("node_counts", _nodes),
    ("existence_threshold", _threshold),
    ("convergence_order", _convergence),
]


def _run(name: str, fn: Callable, cfg: SuiteConfig) -> GroupResult:
    g = GroupResult(name)
    t = time.perf_counter()
    try:
        fn(cfg, g)
    except Exception as exc:  # a crashing group is a failed group
        g.error = f"{type(exc).__name__}: {exc}"
    g.seconds = time.perf_counter() - t
    return g


def run_suite(cfg: SuiteConfig = SuiteConfig(), workers: int = 4) -> List[GroupResult]:
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run, name, fn, cfg) for name, fn in GROUPS]
        return [f.result() for f in futures]
