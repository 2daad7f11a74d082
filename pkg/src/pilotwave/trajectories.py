"""Particle paths under azimuthal velocity fields, and the light-speed radius."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from .fieldcalc import PolarPoint, VectorFieldDescriptor
from .physics import LIGHT_SPEED, OscillatorParams
from .pipeline import CatalogId, catalog_eval, catalog_velocity_field, parse_catalog_id

__all__ = [
    "TrajectoryConfig",
    "Trajectory",
    "TrajectoryError",
    "NoCrossingError",
    "integrate",
    "superluminal_radius",
]

METHODS = ("rk4", "euler")


class TrajectoryError(RuntimeError):
    pass


class NoCrossingError(ValueError):
    pass


@dataclass(frozen=True)
class TrajectoryConfig:
    t_start: float
    t_end: float
    dt: float
    method: str = "rk4"

    def __post_init__(self) -> None:
        if not self.t_start > 0:
            raise ValueError("t_start must be > 0: catalog fields are singular at t = 0")
        if not self.t_end > self.t_start:
            raise ValueError("t_end must exceed t_start")
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")

    @classmethod
    def from_period(cls, p: OscillatorParams, periods: float = 10.0, steps: int = 1000,
                    method: str = "rk4") -> "TrajectoryConfig":
        """Start at one period and run to ``periods`` periods in fixed steps."""
        t0 = p.period
        return cls(t0, periods * t0, (periods - 1.0) * t0 / steps, method)

    @property
    def n_steps(self) -> int:
        n = (self.t_end - self.t_start) / self.dt
        return max(1, int(math.ceil(n - 1e-9)))


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    r: np.ndarray
    theta: np.ndarray
    speed: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    @property
    def x(self) -> np.ndarray:
        return self.r * np.cos(self.theta)

    @property
    def y(self) -> np.ndarray:
        return self.r * np.sin(self.theta)

    def to_csv(self, stream=None) -> Optional[str]:
        """Write rows ``t_s,r_m,theta_rad,x_m,y_m,speed_mps``."""
        own = stream is None
        buf = io.StringIO() if own else stream
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t_s", "r_m", "theta_rad", "x_m", "y_m", "speed_mps"])
        for row in zip(self.t, self.r, self.theta, self.x, self.y, self.speed):
            writer.writerow([f"{v:.17g}" for v in row])
        return buf.getvalue() if own else None


def _rates(v: VectorFieldDescriptor, t: float, r: float, theta: float):
    vec = v(r, theta, t)
    vr, vth = float(vec.v_r), float(vec.v_theta)
    if not (math.isfinite(vr) and math.isfinite(vth)):
        raise TrajectoryError(f"non-finite velocity at t={t:g}, r={r:g}")
    return vr, vth / r, math.hypot(vr, vth)


def integrate(v, start: PolarPoint, cfg: TrajectoryConfig,
              p: Optional[OscillatorParams] = None) -> Trajectory:
    """Fixed-step integration of ``dr/dt = v_r``, ``d theta/dt = v_theta / r``.

    ``v`` is a vector field descriptor, or a velocity catalog id together
    with ``p``. The final step is shortened to land exactly on ``t_end``.
    """
    if not isinstance(v, VectorFieldDescriptor):
        if p is None:
            raise ValueError("oscillator parameters are required for a catalog velocity")
        v = catalog_velocity_field(v, p)
    r, theta = float(start.r), float(start.theta)
    if not r > 0:
        raise ValueError("start radius must be > 0")

    n = cfg.n_steps
    ts = cfg.t_start + cfg.dt * np.arange(n + 1)
    ts[-1] = cfg.t_end
    rs = np.empty(n + 1)
    ths = np.empty(n + 1)
    speeds = np.empty(n + 1)
    rs[0], ths[0] = r, theta
    speeds[0] = _rates(v, ts[0], r, theta)[2]

    for k in range(n):
        t, h = ts[k], ts[k + 1] - ts[k]
        if cfg.method == "euler":
            dr, dth, _ = _rates(v, t, r, theta)
            r, theta = r + h * dr, theta + h * dth
        else:
            k1r, k1t, _ = _rates(v, t, r, theta)
            k2r, k2t, _ = _rates(v, t + h / 2, r + h / 2 * k1r, theta + h / 2 * k1t)
            k3r, k3t, _ = _rates(v, t + h / 2, r + h / 2 * k2r, theta + h / 2 * k2t)
            k4r, k4t, _ = _rates(v, t + h, r + h * k3r, theta + h * k3t)
            r = r + h / 6 * (k1r + 2 * k2r + 2 * k3r + k4r)
            theta = theta + h / 6 * (k1t + 2 * k2t + 2 * k3t + k4t)
        if not r > 0:
            raise TrajectoryError(f"step to t={ts[k + 1]:g} left the punctured plane (r={r:g})")
        rs[k + 1], ths[k + 1] = r, theta
        speeds[k + 1] = _rates(v, ts[k + 1], r, theta)[2]
    return Trajectory(ts, rs, ths, speeds)


def superluminal_radius(v, t: float, p: OscillatorParams, c: float = LIGHT_SPEED,
                        r_hi_limit: float = 1.0, xtol: float = 1e-300) -> float:
    """Radius where ``|v_theta(r, t)|`` first reaches ``c``, by bisection.

    The upper bracket is found by doubling from one oscillator width; speeds
    above ``c`` are not corrected relativistically.
    """
    cid = parse_catalog_id(v, "velocity")
    if cid is CatalogId.INVALID_RAW:
        raise ValueError("invalid-raw does not carry velocity dimensions; "
                         "comparing it with c is meaningless")

    def excess(r):
        return abs(float(catalog_eval(cid, r, t, p).v_theta)) - c

    lo = 0.0
    hi = p.width
    while excess(hi) < 0:
        lo = hi
        hi *= 2.0
        if hi > r_hi_limit:
            raise NoCrossingError(f"|{cid.value}| stays below c up to r = {r_hi_limit:g} m")
    return optimize.bisect(excess, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=2000)
