"""Command-line front end.

Exit codes: 0 success, 1 a verification property failed, 2 bad usage, bad input
or a numerical failure (density underflow, quadrature, integrator).
Inputs are in eV and nm; every output is SI.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import units
from .fieldcalc import DEFAULT_STEPS, PolarPoint
from .gridio import GridSpec, grid_filename, sample_field, write_figure_set, write_grid
from .physics import ELECTRON_MASS, ELECTRON_VOLT, OscillatorParams, params_from_energy
from .pipeline import (
    GENERATOR_OF,
    SOURCE_OF,
    CatalogId,
    catalog_eval,
    forward_derive,
    parse_catalog_id,
    relative_error,
    reverse_derive,
)
from .trajectories import TrajectoryConfig, integrate
from .verification import NM, run_verification

FORMULAS = {
    CatalogId.BORN_SCALAR: "phi = lambda^2 exp(-2 beta r^2)",
    CatalogId.STANDARD_PHI: "phi = lambda^2 exp(-2 beta r^2) / (4 beta t)",
    CatalogId.DUAL_RIGHT_PHI: "phi = lambda^2 exp(-2 beta r^2) / (2 beta t)",
    CatalogId.DUAL_LEFT_PHI: "phi = lambda^2 exp(-2 beta r^2) r^2 / t",
    CatalogId.DUAL_PHI: "phi = lambda^2 exp(-2 beta r^2) (r^2 + 1/(2 beta)) / t",
    CatalogId.INVALID_RAW: "v_theta = -4 beta r = -2 m omega r / hbar",
    CatalogId.CORRECTED: "v_theta = -4 beta r^3 / t",
    CatalogId.STANDARD: "v_theta = -r / t",
    CatalogId.RIGHT_DUAL: "v_theta = -2 r / t",
    CatalogId.LEFT_DUAL: "v_theta = (2 r - 4 beta r^3) / t",
}


class UsageError(Exception):
    pass


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be positive and finite, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text!r}")
    return value


def _mass(text: str) -> float:
    if text.strip().lower() == "electron":
        return ELECTRON_MASS
    return _positive(text)


def _time(text: str):
    if text.strip().lower() == "period":
        return "period"
    return _positive(text)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("oscillator")
    g.add_argument("--energy-ev", type=_positive, default=1.0,
                   help="ground-state energy in eV (default 1)")
    g.add_argument("--mass", type=_mass, default=ELECTRON_MASS,
                   help="'electron' or a mass in kg (default electron)")
    g.add_argument("--time", type=_time, default="period",
                   help="'period' or a time in seconds at which fields are evaluated "
                        "(default: one period, pi hbar / E)")
    g.add_argument("--range-nm", type=_positive, default=1.0,
                   help="half-width of the sampling window in nm (default 1)")
    g.add_argument("--resolution", type=_positive_int, default=201,
                   help="samples per axis or radial samples (default 201)")
    return common


def _params(args) -> OscillatorParams:
    return params_from_energy(args.energy_ev * ELECTRON_VOLT, args.mass)


def _time_value(args, p: OscillatorParams) -> float:
    return p.period if args.time == "period" else args.time


def _radii(args) -> np.ndarray:
    return np.linspace(0.05 * args.range_nm * NM, args.range_nm * NM, max(args.resolution, 2))


def _emit(obj, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_params(args) -> int:
    p = _params(args)
    _emit(p.as_dict(), args.out)
    return 0


def _dimension_report(dim: units.Dimension) -> dict:
    return {"dimension": str(dim), "dimension_valid": dim == units.VELOCITY}


def cmd_derive(args) -> int:
    cid = parse_catalog_id(args.field, "scalar")
    p = _params(args)
    t = _time_value(args, p)
    r = _radii(args)
    rec = forward_derive(cid, p)
    target = GENERATOR_OF[cid]
    v = rec.velocity(r, 0.0, t).v_theta
    ref = catalog_eval(target, r, t, p).v_theta
    report = {
        "source": cid.value,
        "source_form": FORMULAS[cid],
        "velocity": target.value,
        "velocity_form": FORMULAS[target],
        "time_s": t,
        "samples": int(r.size),
        "max_relative_error": relative_error(v, ref, normwise=True),
        "max_radial_component": float(np.max(np.abs(rec.velocity(r, 0.0, t).v_r))),
        **_dimension_report(rec.dimension),
    }
    _emit(report, args.out)
    return 0


def cmd_reverse(args) -> int:
    cid = parse_catalog_id(args.velocity, "velocity")
    p = _params(args)
    t = _time_value(args, p)
    r = _radii(args)
    if r.size > args.max_samples:
        r = r[np.unique(np.linspace(0, r.size - 1, args.max_samples).round().astype(int))]
    phi = reverse_derive(cid, p, probe_t=t)
    target = SOURCE_OF[cid]
    values = phi(r, 0.0, t)
    back = forward_derive(phi, p).velocity(r, 0.0, t).v_theta
    report = {
        "velocity": cid.value,
        "velocity_form": FORMULAS[cid],
        "scalar_field": target.value,
        "scalar_form": FORMULAS[target],
        "time_s": t,
        "samples": int(r.size),
        "max_relative_error": relative_error(values, catalog_eval(target, r, t, p)),
        "round_trip_max_relative_error": relative_error(
            back, catalog_eval(cid, r, t, p).v_theta, normwise=True),
        "scalar_dimension": str(phi.dimension),
        **_dimension_report(units.dim_of_catalog(cid)),
    }
    _emit(report, args.out)
    return 0


def cmd_verify(args) -> int:
    p = _params(args)
    t = _time_value(args, p)
    report = run_verification(p, resolution=max(args.resolution, 2), range_nm=args.range_nm,
                              times=(t, 2.0 * t, 5.0 * t), n_random=args.n_random,
                              n_divergence_points=args.points, seed=args.seed)
    for line in report.lines():
        print(line)
    print("ALL PASS" if report.passed else "FAILURES")
    return 0 if report.passed else 1


def cmd_grid(args) -> int:
    p = _params(args)
    spec = GridSpec(time=_time_value(args, p), half_width=args.range_nm * NM,
                    resolution=args.resolution, mask_radius=args.mask_radius)
    if args.all:
        written = write_figure_set(args.out_dir, spec, p, args.format)
        for number, path in written.items():
            print(f"fig{number}\t{path}")
        return 0
    if not args.field:
        raise UsageError("grid needs --field or --all")
    cid = parse_catalog_id(args.field)
    out = args.out or str(Path(args.out_dir) / grid_filename(cid, p.energy_ev, spec.resolution,
                                                              args.format))
    path = write_grid(sample_field(cid, spec, p), out, args.format)
    print(path)
    return 0


def cmd_trajectory(args) -> int:
    cid = parse_catalog_id(args.velocity, "velocity")
    p = _params(args)
    t0 = _time_value(args, p)
    t_end = args.t_end if args.t_end is not None else args.periods * t0
    cfg = TrajectoryConfig(t0, t_end, (t_end - t0) / args.steps, args.method)
    traj = integrate(cid, PolarPoint.of(args.r0_nm * NM, args.theta0), cfg, p)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            traj.to_csv(fh)
    else:
        sys.stdout.write(traj.to_csv())
    return 0


def cmd_dims(args) -> int:
    print(units.dim_of_catalog(parse_catalog_id(args.item)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pilotwave",
        description="Divergence-free currents, scalar fields and velocities for the "
                    "ground-state 2D harmonic oscillator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    ids = ", ".join(c.value for c in CatalogId)

    p = sub.add_parser("params", parents=[common], help="derived oscillator parameters",
                       description="Print omega = 2E/hbar, period = pi hbar/E, "
                                   "beta = m omega/(2 hbar) and lambda = (m omega/(pi hbar))^(1/4) "
                                   "as JSON (SI units).")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("derive", parents=[common], help="scalar field -> velocity",
                       description="Forward derivation J = S grad(phi) = (-(1/r) dphi/dtheta, dphi/dr), "
                                   "v = J / (lambda^2 exp(-2 beta r^2)); reports the match to the "
                                   "closed-form velocity and the dimension verdict.")
    p.add_argument("--field", required=True,
                   help="scalar catalog id: born, standard, dual, dual-left, dual-right "
                        "(a trailing -phi is optional)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("reverse", parents=[common], help="velocity -> scalar field",
                       description="Reverse derivation phi(r) = -integral_r^inf v_theta rho dr' "
                                   "by adaptive Gauss-Kronrod quadrature; reports the match to the "
                                   "closed-form scalar field and the round-trip error.")
    p.add_argument("--velocity", required=True,
                   help="velocity catalog id: standard, corrected, right-dual, left-dual")
    p.add_argument("--max-samples", type=_positive_int, default=50,
                   help="cap on quadrature sample radii (default 50)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reverse)

    p = sub.add_parser("verify", parents=[common], help="run the identity and divergence suite",
                       description="Check div(S grad phi) = 0, the continuity equation for the "
                                   "stationary state, the dual-field identities "
                                   "(phi_right = 2 phi_standard, v_left + v_right = v_corrected) "
                                   "and the reverse/forward round trip. Exit 1 on any failure.")
    p.add_argument("--n-random", type=int, default=100, help="random test fields (default 100)")
    p.add_argument("--points", type=_positive_int, default=10_000,
                   help="divergence sample points per field (default 10000)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("grid", parents=[common], help="sample fields on the figure window",
                       description="Sample a catalog field on the square window "
                                   "[-range, range]^2 nm. Velocities are written as "
                                   "(v_x, v_y) = v_theta (-sin theta, cos theta) with |v|. "
                                   f"Catalog ids: {ids}.")
    p.add_argument("--field", help="catalog id to sample")
    p.add_argument("--all", action="store_true", help="write all eight figure grids")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output file for a single field")
    p.add_argument("--out-dir", default=".", help="directory for --all or default file names")
    p.add_argument("--mask-radius", type=float, default=DEFAULT_STEPS.h_r,
                   help="radius in m of the excluded disk around the origin (default 1e-12)")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("trajectory", parents=[common], help="integrate a particle path",
                       description="Integrate dr/dt = v_r, dtheta/dt = v_theta / r with a fixed-step "
                                   "stepper from t = --time. Writes CSV t_s,r_m,theta_rad,x_m,y_m,speed_mps.")
    p.add_argument("--velocity", required=True, help="velocity catalog id")
    p.add_argument("--r0-nm", type=_positive, default=0.5, help="start radius in nm (default 0.5)")
    p.add_argument("--theta0", type=float, default=0.0, help="start angle in rad (default 0)")
    p.add_argument("--t-end", type=_positive, default=None, help="end time in s")
    p.add_argument("--periods", type=_positive, default=10.0,
                   help="end time as a multiple of the start time when --t-end is absent (default 10)")
    p.add_argument("--steps", type=_positive_int, default=1000)
    p.add_argument("--method", choices=("rk4", "euler"), default="rk4")
    p.add_argument("--out")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("dims", help="dimension of a catalog item",
                       description="Print the (M, L, T) dimension of a catalog closed form, "
                                   "treating lambda^2 and the Gaussian factor as dimensionless. "
                                   "Velocities need L T^-1, scalar fields L^2 T^-1.")
    p.add_argument("--item", required=True, help=f"catalog id: {ids}")
    p.set_defaults(func=cmd_dims)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (UsageError, KeyError, ValueError, OSError, ArithmeticError, RuntimeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"pilotwave {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
