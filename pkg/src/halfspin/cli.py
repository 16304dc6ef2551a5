"""
Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 golden
mismatch.  Every error is reported as one line on stderr,
``error: <Code>: <message>``.  Floats are printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import numeric, spectrum
from .core import Constants, HalfInteger, SpinError, iter_valid, validate
from .matrix_oracle import CutoffTooSmall
from .series import eval_psi, eval_radial, laguerre_oracle, recursion_coefficients
from .verify import FD_TOL, Check, matrix_checks, radial_checks

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_GOLDEN = 3


class UsageError(SpinError):
    code = "UsageError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message.replace("\n", " "))


def fmt(x) -> str:
    return f"{float(x):.12g}"


def _num(x) -> float:
    # JSON numbers carry the same 12 significant digits as CSV
    return float(fmt(x))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **doc}, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _constants(args) -> Constants:
    return Constants(hbar=args.hbar, gamma=args.gamma, omega=getattr(args, "omega", 1.0))


def _grid(args) -> numeric.RadialGrid:
    return numeric.RadialGrid(rho_max=args.rho_max, npoints=args.npoints)


def cmd_table(args) -> int:
    rows = [row.to_json() for row in spectrum.enumerate_table(args.lambda_max)]
    if args.format == "json":
        text = _json({"rows": rows})
    else:
        keys = ["lambda", "ell_times2", "absM_times2", "bigN", "multiplicity"]
        text = _csv(keys, [["" if r[k] is None else r[k] for k in keys] for r in rows])
    _emit(text, args.output)
    if args.golden_check and rows != spectrum.load_golden():
        print("error: GoldenMismatch: table differs from the bundled golden file", file=sys.stderr)
        return EXIT_GOLDEN
    return EXIT_OK


def cmd_eigfn(args) -> int:
    constants = _constants(args)
    qn = validate(args.lam, HalfInteger(args.m2))
    eig = numeric.normalized_eigenfunction(qn, constants)
    grid = _grid(args)
    rho = grid.points
    r = rho * constants.length_scale
    psi = eval_psi(eig, r, args.theta)
    xcol = "rho" if args.dimensionless else "r"
    xs = rho if args.dimensionless else r
    if args.format == "json":
        text = _json({
            "lambda": qn.lam, "m_times2": qn.m.twice, "bigN": qn.big_n, "s": eig.series.s,
            "coefficients": [str(c) for c in eig.series.coeffs],
            "norm_constant": _num(eig.norm_constant), "theta": _num(args.theta),
            xcol: [_num(v) for v in xs],
            "psi_re": [_num(v) for v in psi.real], "psi_im": [_num(v) for v in psi.imag],
        })
    else:
        text = _csv([xcol, "psi_re", "psi_im"],
                    [[fmt(a), fmt(b), fmt(c)] for a, b, c in zip(xs, psi.real, psi.imag)])
    _emit(text, args.output)
    return EXIT_OK


def cmd_density(args) -> int:
    constants = Constants() if args.dimensionless else _constants(args)
    qn = validate(args.lam, HalfInteger(args.m2))
    profile = numeric.density_profile(qn, constants, _grid(args))
    xcol = "rho" if args.dimensionless else "r"
    xs = profile.rho if args.dimensionless else profile.r
    peaks = profile.peak_rho if args.dimensionless else profile.peak_radii
    meta = {
        "lambda": qn.lam, "m_times2": qn.m.twice,
        "ring_count": profile.ring_count,
        "peak_radii": [_num(p) for p in peaks],
        "norm_constant": _num(profile.norm_constant),
        "units": "dimensionless" if args.dimensionless else "physical",
    }
    if args.format == "json":
        text = _json({**meta, xcol: [_num(v) for v in xs],
                      "density": [_num(v) for v in profile.density]})
    else:
        text = _csv([xcol, "density"], [[fmt(a), fmt(b)] for a, b in zip(xs, profile.density)])
        if args.sidecar:
            _emit(_json(meta), args.sidecar)
    _emit(text, args.output)
    return EXIT_OK


def closed_form_radius(lam: int, abs_m2: int, constants: Constants):
    """3 sqrt(pi hbar)/4 * gamma^(-1/2) for the lowest state; None otherwise."""
    if (lam, abs_m2) != (2, 1):
        return None
    return 3 * math.sqrt(math.pi * constants.hbar) / 4 / math.sqrt(constants.gamma)


def cmd_radius(args) -> int:
    constants = _constants(args)
    qn = validate(args.lam, HalfInteger(args.m2))
    value = numeric.mean_radius(qn, constants)
    exact = closed_form_radius(qn.lam, qn.s, constants)
    deviation = None if exact is None else abs(value - exact) / exact
    if args.format == "json":
        text = _json({"lambda": qn.lam, "m_times2": qn.m.twice, "gamma": _num(constants.gamma),
                      "hbar": _num(constants.hbar), "mean_radius": _num(value),
                      "closed_form": None if exact is None else _num(exact),
                      "rel_deviation": None if deviation is None else _num(deviation)})
    else:
        text = _csv(["lambda", "m_times2", "gamma", "hbar", "mean_radius", "closed_form", "rel_deviation"],
                    [[qn.lam, qn.m.twice, fmt(constants.gamma), fmt(constants.hbar), fmt(value),
                      "" if exact is None else fmt(exact),
                      "" if deviation is None else fmt(deviation)]])
    _emit(text, args.output)
    return EXIT_OK


def _report(checks, fmt_name, output) -> int:
    if fmt_name == "json":
        text = _json({"checks": [{"name": c.name,
                                  "gamma": None if c.gamma is None else _num(c.gamma),
                                  "value": _num(c.value), "tolerance": _num(c.tolerance),
                                  "status": "pass" if c.passed else "fail"} for c in checks],
                      "all_passed": all(c.passed for c in checks)})
    else:
        text = _csv(["check", "gamma", "value", "tolerance", "status"],
                    [[c.name, "" if c.gamma is None else fmt(c.gamma), fmt(c.value),
                      fmt(c.tolerance), "pass" if c.passed else "fail"] for c in checks])
    _emit(text, output)
    failed = [c for c in checks if not c.passed]
    for c in failed:
        print(f"error: CheckFailed: {c.name} gamma={'' if c.gamma is None else fmt(c.gamma)} "
              f"norm={fmt(c.value)} tolerance={fmt(c.tolerance)}", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


def _gamma_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad --gamma list {text!r}") from None
    if not values:
        raise UsageError("empty --gamma list")
    return values


def cmd_verify(args) -> int:
    if args.nmax < 4:
        raise CutoffTooSmall(f"verify needs nmax >= 4, got {args.nmax}")
    checks = []
    for gamma in _gamma_list(args.gamma):
        checks.extend(matrix_checks(args.nmax, Constants(hbar=args.hbar, gamma=gamma)))
    if not args.skip_radial:
        checks.extend(radial_checks(10, _grid(args)))
    return _report(checks, args.format, args.output)


LAGUERRE_TOL = 1e-12


def laguerre_deviation(qn, rhos) -> float:
    """Max |R - c L| / max|R| with c = 1 / L_k^(s)(0) = 1 / binom(k + s, k)."""
    k = qn.big_n // 2
    c = 1.0 / math.comb(k + qn.s, k)
    r = eval_radial(recursion_coefficients(qn), rhos)
    return float(np.max(np.abs(r - c * laguerre_oracle(qn, rhos))) / np.max(np.abs(r)))


def cmd_oracle(args) -> int:
    grid = _grid(args)
    rhos = grid.points[1:]
    checks = []
    for qn in iter_valid(args.lambda_max):
        tag = f"lam{qn.lam}_m2{qn.m.twice}"
        checks.append(Check(f"laguerre_{tag}", None, laguerre_deviation(qn, rhos), LAGUERRE_TOL))
        checks.append(Check(f"series_vs_fd_{tag}", None, numeric.compare_series_vs_fd(qn, grid), FD_TOL))
    return _report(checks, args.format, args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="halfspin", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, qn=False, consts=False, grid=False):
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--output", default=None, help="output path (default: stdout)")
        if qn:
            p.add_argument("--lambda", dest="lam", type=int, required=True)
            p.add_argument("--m2", type=int, required=True, help="twice the magnetic number")
        if consts:
            p.add_argument("--gamma", type=float, default=1.0)
            p.add_argument("--hbar", type=float, default=1.0)
        if grid:
            p.add_argument("--rho-max", type=float, default=12.0)
            p.add_argument("--npoints", type=int, default=2000)

    p = sub.add_parser("table", help="enumerate admissible quantum numbers")
    common(p)
    p.add_argument("--lambda-max", type=int, default=10)
    p.add_argument("--golden-check", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("eigfn", help="sample psi(r, theta) at fixed theta")
    common(p, qn=True, consts=True, grid=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--dimensionless", action="store_true")
    p.set_defaults(func=cmd_eigfn)

    p = sub.add_parser("density", help="density profile and ring structure")
    common(p, qn=True, consts=True, grid=True)
    p.add_argument("--dimensionless", action="store_true")
    p.add_argument("--sidecar", default=None, help="JSON metadata path for CSV output")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("radius", help="mean radius")
    common(p, qn=True, consts=True)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("verify", help="operator-algebra and radial cross-checks")
    common(p, grid=True)
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--gamma", default="1")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--skip-radial", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="series against the Laguerre and finite-difference oracles")
    common(p, grid=True)
    p.add_argument("--lambda-max", type=int, default=10)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SpinError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
