"""
Command-line front end.

    chtmorse spectrum     --v1 -5 --v2 0.5 [--verify]
    chtmorse wavefunction --v1 -5 --v2 0.5 --n 1 [--samples 1000]
    chtmorse transform    --n 2 --b 3
    chtmorse verify       [--quick] [--perturb-energy 0.01]

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import laplace, morse, numerics, report, verify


class ParamError(ValueError):
    """Invalid user input; reported with exit code 2."""


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _physics_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("potential")
    g.add_argument("--v1", type=float, default=-5.0, help="V1 (default -5)")
    g.add_argument("--v2", type=float, default=0.5, help="V2 (default 0.5)")
    g.add_argument("--alpha", type=float, default=1.0)
    g.add_argument("--mass", type=float, default=1.0)
    g.add_argument("--hbar", type=float, default=1.0)
    return p


def _grid_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("grid")
    g.add_argument("--x-min", type=float, default=None)
    g.add_argument("--x-max", type=float, default=None)
    g.add_argument("--grid-points", type=int, default=None)
    return p


def _output_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--output", "-o", default=None, metavar="PATH",
                   help="write here instead of standard output")
    return p


def build_parser() -> argparse.ArgumentParser:
    physics, grid, output = _physics_parent(), _grid_parent(), _output_parent()
    parser = argparse.ArgumentParser(
        prog="chtmorse",
        description="Generalized Morse bound states via the Laplace-transformed "
        "confluent hypergeometric equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[physics, grid, output],
                        help="closed-form energies")
    sp.add_argument("--verify", action="store_true",
                    help="also report matrix-Numerov energies")

    wf = sub.add_parser("wavefunction", parents=[physics, grid, output],
                        help="sample a normalized eigenfunction")
    wf.add_argument("--n", type=int, default=0)
    wf.add_argument("--samples", type=int, default=1000)

    tr = sub.add_parser("transform", parents=[output],
                        help="Laplace-space series of the polynomial solution")
    tr.add_argument("--n", type=int, required=True)
    tr.add_argument("--b", type=_fraction, required=True)
    tr.add_argument("--c0", type=_fraction, default=None,
                    help="leading coefficient (default (-1)^n); write negative "
                    "fractions as --c0=-1/2")
    tr.add_argument("--a", type=_fraction, default=None,
                    help="confluent parameter checked in the ODE residual (default -n)")

    vf = sub.add_parser("verify", parents=[physics, grid, output],
                        help="run the invariant suite")
    vf.add_argument("--quick", action="store_true", help="degrees n <= 8 only")
    vf.add_argument("--perturb-energy", type=float, default=0.0, metavar="F",
                    help="scale every E_n by (1 + F) in the residual check")
    return parser


def _params(args) -> morse.MorseParams:
    if not args.v2 > 0:
        raise ParamError("V2 must be positive")
    try:
        return morse.MorseParams(args.v1, args.v2, args.alpha, args.mass, args.hbar)
    except ValueError as exc:
        raise ParamError(str(exc)) from None


def _params_dict(p: morse.MorseParams) -> dict:
    return {"v1": p.v1, "v2": p.v2, "alpha": p.alpha, "mass": p.mass, "hbar": p.hbar}


def _grid(args, default: Optional[numerics.GridSpec]) -> Optional[numerics.GridSpec]:
    if default is None and None in (args.x_min, args.x_max):
        return None
    x_min = args.x_min if args.x_min is not None else default.x_min
    x_max = args.x_max if args.x_max is not None else default.x_max
    n = args.grid_points if args.grid_points is not None else (
        default.n_points if default is not None else 4001)
    try:
        return numerics.GridSpec(x_min, x_max, n)
    except ValueError as exc:
        raise ParamError(str(exc)) from None


def _grid_dict(g: numerics.GridSpec) -> dict:
    return {"x_min": g.x_min, "x_max": g.x_max, "n_points": g.n_points}


def cmd_spectrum(args) -> tuple:
    p = _params(args)
    states = morse.spectrum(p)
    rows = [{"n": st.n, "S": st.s_exponent, "energy": st.energy} for st in states]
    grid = None
    if args.verify and states:
        grid = _grid(args, numerics.default_grid(p))
        w = numerics.morse_numerov(p, grid, len(states))
        for row, e in zip(rows, w):
            row["energy_numerov"] = float(e)
            row["rel_err"] = abs(float(e) - row["energy"]) / abs(row["energy"])
    data = {
        "schema_version": report.SCHEMA_VERSION,
        "command": "spectrum",
        "params": _params_dict(p),
        "K": p.well_strength(),
        "n_max": len(states),
        "verified": bool(args.verify and states),
        "grid": _grid_dict(grid) if grid else None,
        "states": rows,
    }
    if args.format == "csv":
        header = ["n", "S", "energy"] + (["energy_numerov", "rel_err"] if grid else [])
        text = report.to_csv(header, [[r[k] for k in header] for r in rows],
                             footer=[("K", data["K"]), ("n_max", data["n_max"])])
        return text, 0
    return report.to_json(data), 0


def cmd_wavefunction(args) -> tuple:
    p = _params(args)
    if args.samples < 2:
        raise ParamError("--samples must be at least 2")
    try:
        st = morse.wavefunction(p, args.n)
    except morse.OutOfRangeError as exc:
        raise ParamError(str(exc)) from None
    lo, hi = st.window()
    lo = args.x_min if args.x_min is not None else lo
    hi = args.x_max if args.x_max is not None else hi
    if not lo < hi:
        raise ParamError("x-min must be below x-max")
    xs = np.linspace(lo, hi, args.samples)
    xis = morse.xi_of_x(p, xs)
    psi = st(xs)
    norm = morse.overlap(st, st)
    changes = morse.sign_changes(psi)
    table = [[float(a), float(b), float(c)] for a, b, c in zip(xs, xis, psi)]
    if args.format == "csv":
        footer = [("n", st.n), ("S", st.s_exponent), ("energy", st.energy),
                  ("norm", norm), ("sign_changes", changes)]
        return report.to_csv(["x", "xi", "psi"], table, footer=footer), 0
    data = {
        "schema_version": report.SCHEMA_VERSION,
        "command": "wavefunction",
        "params": _params_dict(p),
        "n": st.n,
        "S": st.s_exponent,
        "energy": st.energy,
        "norm_const": st.norm_const,
        "window": {"x_min": float(lo), "x_max": float(hi)},
        "norm_check": norm,
        "sign_changes": changes,
        "columns": ["x", "xi", "psi"],
        "data": table,
    }
    return report.to_json(data), 0


def cmd_transform(args) -> tuple:
    n, b = args.n, args.b
    if n < 0:
        raise ParamError("n must be non-negative")
    if not b > 1:
        raise ParamError("b must exceed 1")
    if args.c0 is not None and args.c0 == 0:
        raise ParamError("c0 must be nonzero")
    F = laplace.build_transform(n, b, args.c0)
    a = Fraction(-n) if args.a is None else args.a
    residual = laplace.ode_residual(F, a, b, laplace.initial_value(F))
    phi = laplace.inverse_transform(F)
    status = "pass" if residual.is_zero() else "fail"
    if args.format == "csv":
        rows = [[j, j - F.pole_order, c] for j, c in enumerate(F.coeffs)]
        footer = [("pole_order", F.pole_order), ("residue", F.residue),
                  ("phi0", phi[0]), ("ode_residual", status)]
        text = report.to_csv(["j", "exponent", "coefficient"], rows, footer=footer)
    else:
        data = {
            "schema_version": report.SCHEMA_VERSION,
            "command": "transform",
            "n": n,
            "a": report.rational(a),
            "b": report.rational(b),
            "c0": report.rational(F.c0),
            "pole_order": F.pole_order,
            "coeffs": [report.rational(c) for c in F.coeffs],
            "residue": report.rational(F.residue),
            "phi0": report.rational(phi[0]),
            "phi_coeffs": [report.rational(c) for c in phi],
            "laguerre_parameter": report.rational(b - 1),
            "ode_residual": {
                "status": status,
                "terms": {str(k): report.rational(v) for k, v in residual.terms().items()},
            },
        }
        text = report.to_json(data)
    return text, 0 if status == "pass" else 1


def cmd_verify(args) -> tuple:
    p = _params(args)
    grid = _grid(args, numerics.GridSpec(-3.0, 25.0, 4001))
    cfg = verify.SuiteConfig(params=p, quick=args.quick,
                             perturb_energy=args.perturb_energy, grid=grid)
    groups = verify.run_suite(cfg)
    passed = all(g.passed for g in groups)
    if args.format == "csv":
        rows = []
        for g in groups:
            for c in g.checks:
                rows.append([g.name, c.name, c.value, c.tolerance, c.passed])
            if g.error:
                rows.append([g.name, "error", float("nan"), float("nan"), False])
        text = report.to_csv(["group", "check", "value", "tolerance", "passed"], rows,
                             footer=[("passed", passed)])
    else:
        data = {
            "schema_version": report.SCHEMA_VERSION,
            "command": "verify",
            "quick": bool(args.quick),
            "perturb_energy": args.perturb_energy,
            "passed": passed,
            "groups": [
                {
                    "name": g.name,
                    "passed": g.passed,
                    "error": g.error,
                    "checks": [
                        {"name": c.name,
                         "value": c.value if math.isfinite(c.value) else None,
                         "tolerance": c.tolerance,
                         "passed": c.passed}
                        for c in g.checks
                    ],
                }
                for g in groups
            ],
        }
        text = report.to_json(data)
    return text, 0 if passed else 1


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "transform": cmd_transform,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except ParamError as exc:
        print(f"chtmorse {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
