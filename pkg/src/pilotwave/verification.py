"""Property suites shared by the ``verify`` command and the acceptance tests."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .fieldcalc import (
    DEFAULT_STEPS,
    PolarPoint,
    ScalarFieldDescriptor,
    Steps,
    continuity_residual,
    divergence_polar,
    rotated_gradient,
    rotated_gradient_field,
)
from .physics import OscillatorParams
from .pipeline import (
    SCALAR_IDS,
    IdentityReport,
    PointSet,
    catalog_scalar_field,
    check_identities,
)

__all__ = [
    "NM",
    "NM_STEPS",
    "DIVERGENCE_TOL",
    "trig_polynomial_field",
    "random_smooth_field",
    "divergence_error",
    "divergence_suite",
    "sample_points",
    "run_verification",
]

NM = 1e-9
# default steps re-expressed for coordinates measured in nanometres
NM_STEPS = Steps(h_r=DEFAULT_STEPS.h_r / NM, h_theta=DEFAULT_STEPS.h_theta)
DIVERGENCE_TOL = 1e-8


def trig_polynomial_field(coeffs, cos_amp, sin_amp, name: str = "trig-poly") -> ScalarFieldDescriptor:
    """``phi = sum_km c[k,m] r^k (a[k,m] cos(m theta) + b[k,m] sin(m theta))``.

    Comes with analytic partial derivatives in ``r`` and ``theta``.
    """
    c = np.asarray(coeffs, dtype=float)
    a = np.asarray(cos_amp, dtype=float)
    b = np.asarray(sin_amp, dtype=float)
    k = np.arange(c.shape[0], dtype=float)
    m = np.arange(c.shape[1], dtype=float)

    def parts(r, theta):
        r = np.asarray(r, dtype=float)[..., None]
        theta = np.asarray(theta, dtype=float)[..., None]
        pw = r ** k
        dpw = k * r ** np.maximum(k - 1, 0)
        trig = a * np.cos(m * theta)[..., None, :] + b * np.sin(m * theta)[..., None, :]
        dtrig = m * (b * np.cos(m * theta)[..., None, :] - a * np.sin(m * theta)[..., None, :])
        return pw[..., :, None], dpw[..., :, None], trig, dtrig

    def evaluate(r, theta, t):
        r, theta = np.broadcast_arrays(r, theta)
        pw, _, trig, _ = parts(r, theta)
        return np.sum(c * pw * trig, axis=(-2, -1))

    def d_dr(r, theta, t):
        r, theta = np.broadcast_arrays(r, theta)
        _, dpw, trig, _ = parts(r, theta)
        return np.sum(c * dpw * trig, axis=(-2, -1))

    def d_dtheta(r, theta, t):
        r, theta = np.broadcast_arrays(r, theta)
        pw, _, _, dtrig = parts(r, theta)
        return np.sum(c * pw * dtrig, axis=(-2, -1))

    return ScalarFieldDescriptor(name, evaluate, d_dr=d_dr, d_dtheta=d_dtheta)


def random_smooth_field(rng: np.random.Generator, degree: int = 3, harmonics: int = 3,
                        name: Optional[str] = None) -> ScalarFieldDescriptor:
    shape = (degree + 1, harmonics + 1)
    return trig_polynomial_field(rng.normal(size=shape), rng.normal(size=shape),
                                 rng.normal(size=shape), name or "random-trig-poly")


def divergence_error(phi: ScalarFieldDescriptor, r, theta, t, steps: Steps = DEFAULT_STEPS) -> float:
    """``max|div(S grad phi)| / (1 + max|S grad phi|)`` over the given points."""
    pts = PolarPoint.of(r, theta)
    J = rotated_gradient(phi, pts, t, steps)
    div = divergence_polar(rotated_gradient_field(phi, steps), pts, t, steps)
    return float(np.max(np.abs(div)) / (1.0 + np.max(J.norm())))


def sample_points(rng: np.random.Generator, n: int, r_min: float, r_max: float):
    return rng.uniform(r_min, r_max, n), rng.uniform(0.0, 2.0 * np.pi, n)


def divergence_suite(p: OscillatorParams, n_points: int = 10_000, n_random: int = 100,
                     seed: int = 0, t: Optional[float] = None,
                     report: Optional[IdentityReport] = None) -> IdentityReport:
    """Divergence-free and continuity checks for catalog and random fields.

    Catalog fields are checked in SI units on ``r in [0.05, 1] nm``. The
    random trig-polynomial fields are defined on a plane measured in
    nanometres, where the absolute floor of the tolerance is meaningful.
    """
    report = report if report is not None else IdentityReport()
    rng = np.random.default_rng(seed)
    t = p.period if t is None else t

    r, theta = sample_points(rng, n_points, 0.05 * NM, 1.0 * NM)
    for cid in SCALAR_IDS:
        phi = catalog_scalar_field(cid, p)
        report.add(f"div S grad {cid.value}", divergence_error(phi, r, theta, t), DIVERGENCE_TOL)
        # stationary ground state: d rho/dt = 0
        res = continuity_residual(0.0, rotated_gradient_field(phi), PolarPoint(r, theta), t)
        J = rotated_gradient(phi, PolarPoint(r, theta), t)
        report.add(f"continuity {cid.value}",
                   float(np.max(np.abs(res)) / (1.0 + np.max(J.norm()))), DIVERGENCE_TOL)

    worst = 0.0
    for i in range(n_random):
        phi = random_smooth_field(rng, name=f"random-{i}")
        rr, th = sample_points(rng, n_points, 0.05, 1.0)
        worst = max(worst, divergence_error(phi, rr, th, 0.0, NM_STEPS))
    report.add(f"div S grad, {n_random} random trig-polynomial fields", worst, DIVERGENCE_TOL)
    return report


def run_verification(p: OscillatorParams, resolution: int = 201, range_nm: float = 1.0,
                     times: Optional[Sequence[float]] = None, round_trip_points: int = 40,
                     n_divergence_points: int = 10_000, n_random: int = 100,
                     seed: int = 0) -> IdentityReport:
    """Identity checks on ``resolution`` radii in ``[0.05, range_nm]`` nm plus the divergence suite."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if times is None:
        times = (p.period, 2.0 * p.period, 5.0 * p.period)
    radii = np.linspace(0.05 * range_nm * NM, range_nm * NM, resolution)
    report = check_identities(p, PointSet.grid(radii, times), round_trip_points=round_trip_points)
    return divergence_suite(p, n_points=n_divergence_points, n_random=n_random, seed=seed,
                            report=report)
