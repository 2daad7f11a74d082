"""Forward and reverse derivations between scalar fields and velocities.

Forward: a scalar field ``phi`` generates the divergence-free current
``J = S grad(phi)``; dividing by the Born density gives a velocity.
Reverse: an azimuthal velocity times the Born density is a current whose
azimuthal component must equal ``d phi/dr``; integrating inward from
infinity (where ``phi`` vanishes) recovers ``phi``.

The closed-form catalog lists the fields this construction produces for
the oscillator ground state, with ``rho = lambda^2 exp(-2 beta r^2)``:

==================  ==========================================
``born``            ``rho``
``standard-phi``    ``rho / (4 beta t)``
``dual-right-phi``  ``rho / (2 beta t)``
``dual-left-phi``   ``rho r^2 / t``
``dual-phi``        ``rho (r^2 + 1/(2 beta)) / t``
``invalid-raw``     ``v_theta = -4 beta r``
``corrected``       ``v_theta = -4 beta r^3 / t``
``standard``        ``v_theta = -r / t``
``right-dual``      ``v_theta = -2 r / t``
``left-dual``       ``v_theta = (2 r - 4 beta r^3) / t``
==================  ==========================================
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Union

import numpy as np
from scipy import integrate

from . import units
from .fieldcalc import (
    DEFAULT_STEPS,
    PolarPoint,
    PolarVector,
    ScalarFieldDescriptor,
    Steps,
    VectorFieldDescriptor,
    rotated_gradient,
)
from .physics import OscillatorParams, born_density

__all__ = [
    "CatalogId",
    "SCALAR_IDS",
    "VELOCITY_IDS",
    "VALID_VELOCITY_IDS",
    "GENERATOR_OF",
    "SOURCE_OF",
    "parse_catalog_id",
    "catalog_eval",
    "catalog_scalar_field",
    "catalog_velocity_field",
    "DensityUnderflowError",
    "NonAzimuthalFieldError",
    "QuadratureError",
    "DerivationRecord",
    "forward_derive",
    "QuadratureConfig",
    "reverse_derive",
    "PointSet",
    "CheckResult",
    "IdentityReport",
    "relative_error",
    "check_identities",
]


class CatalogId(str, Enum):
    BORN_SCALAR = "born"
    STANDARD_PHI = "standard-phi"
    DUAL_PHI = "dual-phi"
    DUAL_LEFT_PHI = "dual-left-phi"
    DUAL_RIGHT_PHI = "dual-right-phi"
    INVALID_RAW = "invalid-raw"
    CORRECTED = "corrected"
    STANDARD = "standard"
    RIGHT_DUAL = "right-dual"
    LEFT_DUAL = "left-dual"

    @property
    def is_scalar(self) -> bool:
        return self in SCALAR_IDS

    @property
    def is_velocity(self) -> bool:
        return self in VELOCITY_IDS

    @property
    def time_dependent(self) -> bool:
        return self not in (CatalogId.BORN_SCALAR, CatalogId.INVALID_RAW)

    def __str__(self) -> str:
        return self.value


SCALAR_IDS = (CatalogId.BORN_SCALAR, CatalogId.STANDARD_PHI, CatalogId.DUAL_PHI,
              CatalogId.DUAL_LEFT_PHI, CatalogId.DUAL_RIGHT_PHI)
VELOCITY_IDS = (CatalogId.INVALID_RAW, CatalogId.CORRECTED, CatalogId.STANDARD,
                CatalogId.RIGHT_DUAL, CatalogId.LEFT_DUAL)
VALID_VELOCITY_IDS = (CatalogId.STANDARD, CatalogId.CORRECTED, CatalogId.RIGHT_DUAL,
                      CatalogId.LEFT_DUAL)

# scalar field -> the velocity it generates
GENERATOR_OF = {
    CatalogId.BORN_SCALAR: CatalogId.INVALID_RAW,
    CatalogId.STANDARD_PHI: CatalogId.STANDARD,
    CatalogId.DUAL_PHI: CatalogId.CORRECTED,
    CatalogId.DUAL_LEFT_PHI: CatalogId.LEFT_DUAL,
    CatalogId.DUAL_RIGHT_PHI: CatalogId.RIGHT_DUAL,
}
SOURCE_OF = {v: k for k, v in GENERATOR_OF.items()}


def parse_catalog_id(text: Union[str, CatalogId], kind: Optional[str] = None) -> CatalogId:
    """Parse a catalog id, tolerating ``_``/case and a missing ``-phi`` suffix.

    ``kind`` may be ``"scalar"`` or ``"velocity"`` to restrict the result.
    """
    if isinstance(text, CatalogId):
        cid = text
    else:
        key = str(text).strip().lower().replace("_", "-")
        candidates = [key]
        if kind == "scalar" and not key.endswith("-phi") and key != "born":
            candidates.insert(0, key + "-phi")
        cid = None
        for c in candidates:
            try:
                cid = CatalogId(c)
                break
            except ValueError:
                continue
        if cid is None:
            raise KeyError(f"unknown catalog id {text!r}; choose from "
                           f"{', '.join(c.value for c in CatalogId)}")
    if kind == "scalar" and not cid.is_scalar:
        raise KeyError(f"{cid.value!r} is not a scalar field")
    if kind == "velocity" and not cid.is_velocity:
        raise KeyError(f"{cid.value!r} is not a velocity field")
    return cid


def _check_time(cid: CatalogId, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if cid.time_dependent and np.any(~(t > 0)):
        raise ValueError(f"{cid.value} carries a 1/t factor; t must be > 0")
    return t


def _scalar_closed(cid: CatalogId, r, t, p: OscillatorParams):
    rho = born_density(r, p)
    b = p.beta
    if cid is CatalogId.BORN_SCALAR:
        return rho
    if cid is CatalogId.STANDARD_PHI:
        return rho / (4.0 * b * t)
    if cid is CatalogId.DUAL_RIGHT_PHI:
        return rho / (2.0 * b * t)
    if cid is CatalogId.DUAL_LEFT_PHI:
        return rho * r * r / t
    if cid is CatalogId.DUAL_PHI:
        return rho * (r * r + 1.0 / (2.0 * b)) / t
    raise KeyError(cid)


def _scalar_radial_derivative(cid: CatalogId, r, t, p: OscillatorParams):
    rho = born_density(r, p)
    b = p.beta
    if cid is CatalogId.BORN_SCALAR:
        return -4.0 * b * r * rho
    if cid is CatalogId.STANDARD_PHI:
        return -rho * r / t
    if cid is CatalogId.DUAL_RIGHT_PHI:
        return -2.0 * rho * r / t
    if cid is CatalogId.DUAL_LEFT_PHI:
        return rho * (2.0 * r - 4.0 * b * r ** 3) / t
    if cid is CatalogId.DUAL_PHI:
        return -4.0 * b * rho * r ** 3 / t
    raise KeyError(cid)


def _velocity_closed(cid: CatalogId, r, t, p: OscillatorParams):
    b = p.beta
    if cid is CatalogId.INVALID_RAW:
        return -4.0 * b * r
    if cid is CatalogId.CORRECTED:
        return -4.0 * b * r ** 3 / t
    if cid is CatalogId.STANDARD:
        return -r / t
    if cid is CatalogId.RIGHT_DUAL:
        return -2.0 * r / t
    if cid is CatalogId.LEFT_DUAL:
        return (2.0 * r - 4.0 * b * r ** 3) / t
    raise KeyError(cid)


def catalog_eval(cid, r, t, p: OscillatorParams):
    """Closed-form value of a catalog item.

    Scalar ids return an array; velocity ids return a :class:`PolarVector`
    with zero radial component.
    """
    cid = parse_catalog_id(cid)
    r = np.asarray(r, dtype=float)
    t = _check_time(cid, t)
    r, t = np.broadcast_arrays(r, t)
    if cid.is_scalar:
        return _scalar_closed(cid, r, t, p)
    v_theta = _velocity_closed(cid, r, t, p)
    return PolarVector(np.zeros_like(v_theta), v_theta)


def catalog_scalar_field(cid, p: OscillatorParams) -> ScalarFieldDescriptor:
    cid = parse_catalog_id(cid, "scalar")

    def evaluate(r, theta, t):
        t = _check_time(cid, t)
        r, theta, t = np.broadcast_arrays(r, theta, t)
        return _scalar_closed(cid, r, t, p)

    def d_dr(r, theta, t):
        t = _check_time(cid, t)
        r, theta, t = np.broadcast_arrays(r, theta, t)
        return _scalar_radial_derivative(cid, r, t, p)

    return ScalarFieldDescriptor(
        name=cid.value,
        evaluate=evaluate,
        dimension=units.dim_of_catalog(cid),
        d_dr=d_dr,
        d_dtheta=lambda r, theta, t: np.zeros(np.broadcast(r, theta, t).shape),
    )


def catalog_velocity_field(cid, p: OscillatorParams) -> VectorFieldDescriptor:
    cid = parse_catalog_id(cid, "velocity")

    def evaluate(r, theta, t):
        t = _check_time(cid, t)
        r, theta, t = np.broadcast_arrays(r, theta, t)
        v_theta = _velocity_closed(cid, r, t, p)
        return PolarVector(np.zeros_like(v_theta), v_theta)

    return VectorFieldDescriptor(name=cid.value, evaluate=evaluate,
                                 dimension=units.dim_of_catalog(cid))


class DensityUnderflowError(FloatingPointError):
    """The Born density underflowed where a velocity was requested."""


class NonAzimuthalFieldError(ValueError):
    """Reverse derivation only handles theta-independent azimuthal velocities."""


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class DerivationRecord:
    source: str
    current: VectorFieldDescriptor
    velocity: VectorFieldDescriptor
    dimension: units.Dimension

    @property
    def dimension_valid(self) -> bool:
        return self.dimension == units.VELOCITY


def _as_scalar_field(phi, p) -> ScalarFieldDescriptor:
    if isinstance(phi, ScalarFieldDescriptor):
        return phi
    return catalog_scalar_field(phi, p)


def _as_velocity_field(v, p) -> VectorFieldDescriptor:
    if isinstance(v, VectorFieldDescriptor):
        return v
    return catalog_velocity_field(v, p)


def forward_derive(phi, p: OscillatorParams, steps: Steps = DEFAULT_STEPS) -> DerivationRecord:
    """Current ``S grad(phi)`` and velocity ``J / rho`` for a scalar field.

    ``phi`` is a :class:`ScalarFieldDescriptor` or a scalar catalog id. The
    velocity raises :class:`DensityUnderflowError` where ``rho`` is not a
    normal float, rather than dividing by zero.
    """
    phi = _as_scalar_field(phi, p)

    def current(r, theta, t):
        return rotated_gradient(phi, PolarPoint(r, theta), t, steps)

    def velocity(r, theta, t):
        j = current(r, theta, t)
        rho = born_density(r, p)
        if np.any(rho < np.finfo(float).tiny):
            bad = np.max(np.where(rho < np.finfo(float).tiny, r, -np.inf))
            raise DensityUnderflowError(f"Born density underflows at r = {bad:g} m")
        return PolarVector(j.v_r / rho, j.v_theta / rho)

    current_dim = units.dim_div(phi.dimension, units.LENGTH)
    # the Born density is dimensionless under the structural convention
    return DerivationRecord(
        source=phi.name,
        current=VectorFieldDescriptor(f"J[{phi.name}]", current, current_dim),
        velocity=VectorFieldDescriptor(f"v[{phi.name}]", velocity, current_dim),
        dimension=current_dim,
    )


@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive Gauss-Kronrod settings for the reverse derivation.

    Integration runs from ``r`` to ``R_max``, where ``lambda^2 exp(-2 beta
    R_max^2)`` drops below ``weight_floor``.
    """

    epsrel: float = 1e-12
    abs_fraction: float = 1e-12
    limit: int = 200
    weight_floor: float = 1e-300
    probe_rtol: float = 1e-12

    def r_max(self, p: OscillatorParams) -> float:
        return math.sqrt((2.0 * math.log(p.lambda_norm) - math.log(self.weight_floor)) / (2.0 * p.beta))


def _require_azimuthal(v: VectorFieldDescriptor, p: OscillatorParams, t: float, rtol: float) -> None:
    r = p.width * np.array([0.05, 0.3, 1.0, 2.0, 4.0])[:, None]
    theta = np.array([0.0, 0.7, 1.9, 3.3, 5.1])[None, :]
    vec = v(r, theta, t)
    scale = np.max(np.abs(vec.v_theta))
    if not np.all(np.isfinite(vec.v_r)) or not np.all(np.isfinite(vec.v_theta)):
        raise ValueError(f"velocity {v.name!r} is not finite on the probe set")
    if np.max(np.abs(vec.v_r)) > rtol * scale:
        raise NonAzimuthalFieldError(
            f"velocity {v.name!r} has a radial component; only azimuthal fields can be reversed")
    spread = np.max(np.abs(vec.v_theta - vec.v_theta[:, :1]))
    if spread > rtol * scale:
        raise NonAzimuthalFieldError(f"velocity {v.name!r} depends on theta")


def reverse_derive(v, p: OscillatorParams, quad: QuadratureConfig = QuadratureConfig(),
                   probe_t: Optional[float] = None) -> ScalarFieldDescriptor:
    """Scalar field whose rotated gradient carries the current ``v * rho``.

    ``phi(r) = -integral_r^inf v_theta(r') rho(r') dr'``, so ``d phi/dr``
    equals the azimuthal current and ``phi`` vanishes at infinity. The
    returned descriptor has no analytic radial derivative: downstream
    gradients are taken numerically from the quadrature values.
    """
    v = _as_velocity_field(v, p)
    t_probe = p.period if probe_t is None else probe_t
    _require_azimuthal(v, p, t_probe, quad.probe_rtol)
    r_max = quad.r_max(p)

    def integrand(x, theta, t):
        return float(v(x, theta, t).v_theta) * float(born_density(x, p))

    def tail(r0, theta, t, epsabs):
        if r0 >= r_max:
            return 0.0
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                value, _ = integrate.quad(integrand, r0, r_max, args=(theta, t),
                                          epsabs=epsabs, epsrel=quad.epsrel, limit=quad.limit)
            except integrate.IntegrationWarning as exc:
                raise QuadratureError(f"quadrature of {v.name!r} did not converge at "
                                      f"r = {r0:g}: {exc}") from None
        return -value

    peak_cache: dict[tuple[float, float], float] = {}

    def epsabs_for(theta, t):
        key = (theta, t)
        if key not in peak_cache:
            # scale of the field: integral of |v rho| over the whole half-line
            mag, _ = integrate.quad(lambda x: abs(integrand(x, theta, t)), 0.0, r_max,
                                    epsrel=1e-6, epsabs=0.0, limit=quad.limit)
            peak_cache[key] = quad.abs_fraction * mag
        return peak_cache[key]

    def evaluate(r, theta, t):
        r, theta, t = np.broadcast_arrays(np.asarray(r, dtype=float),
                                          np.asarray(theta, dtype=float),
                                          np.asarray(t, dtype=float))
        if np.any(~(r >= 0)):
            raise ValueError("radius must be non-negative")
        out = np.empty(r.shape)
        for idx in np.ndindex(r.shape):
            th, tt = float(theta[idx]), float(t[idx])
            out[idx] = tail(float(r[idx]), th, tt, epsabs_for(th, tt))
        return out

    return ScalarFieldDescriptor(
        name=f"phi[{v.name}]",
        evaluate=evaluate,
        dimension=units.dim_mul(v.dimension, units.LENGTH),
        d_dtheta=lambda r, theta, t: np.zeros(np.broadcast(r, theta, t).shape),
    )


@dataclass(frozen=True)
class PointSet:
    r: np.ndarray
    t: np.ndarray

    def __post_init__(self) -> None:
        r, t = np.broadcast_arrays(np.asarray(self.r, dtype=float), np.asarray(self.t, dtype=float))
        object.__setattr__(self, "r", r.ravel())
        object.__setattr__(self, "t", t.ravel())

    @classmethod
    def grid(cls, radii: Iterable[float], times: Iterable[float]) -> "PointSet":
        rr, tt = np.meshgrid(np.asarray(list(radii), float), np.asarray(list(times), float))
        return cls(rr, tt)

    def subsample(self, n: int) -> "PointSet":
        if n >= len(self.r):
            return self
        idx = np.unique(np.linspace(0, len(self.r) - 1, n).round().astype(int))
        return PointSet(self.r[idx], self.t[idx])


@dataclass(frozen=True)
class CheckResult:
    name: str
    error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.error) and self.error <= self.tolerance)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name}: error {self.error:.3e} (tol {self.tolerance:.0e})"


@dataclass
class IdentityReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, error: float, tolerance: float) -> CheckResult:
        result = CheckResult(name, float(error), tolerance)
        self.checks.append(result)
        return result

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def relative_error(value, reference, normwise: bool = False) -> float:
    """Largest relative deviation of ``value`` from ``reference``.

    Pointwise by default; ``normwise`` divides by ``max|reference|`` instead,
    which is the meaningful measure for fields with interior zeros.
    """
    value = np.asarray(value, dtype=float)
    reference = np.asarray(reference, dtype=float)
    diff = np.abs(value - reference)
    if normwise:
        scale = np.max(np.abs(reference))
        return float(np.max(diff) / scale) if scale > 0 else float(np.max(diff))
    scale = np.abs(reference)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(scale > 0, diff / scale, diff)
    return float(np.max(rel))


IDENTITY_RTOL = 1e-12
ROUND_TRIP_RTOL = 1e-6


def check_identities(p: OscillatorParams, samples: PointSet, round_trip_points: int = 40,
                     quad: QuadratureConfig = QuadratureConfig(),
                     steps: Steps = DEFAULT_STEPS) -> IdentityReport:
    """Check the catalog's mutual identities and the forward/reverse round trip.

    Failures are recorded in the returned report rather than raised.
    """
    report = IdentityReport()
    r, t = samples.r, samples.t

    def s(cid):
        return catalog_eval(cid, r, t, p)

    def vt(cid):
        return catalog_eval(cid, r, t, p).v_theta

    C = CatalogId
    report.add("dual-right-phi = 2 standard-phi",
               relative_error(s(C.DUAL_RIGHT_PHI), 2.0 * s(C.STANDARD_PHI)), IDENTITY_RTOL)
    report.add("right-dual = 2 standard",
               relative_error(vt(C.RIGHT_DUAL), 2.0 * vt(C.STANDARD)), IDENTITY_RTOL)
    report.add("dual-phi = dual-left-phi + dual-right-phi",
               relative_error(s(C.DUAL_LEFT_PHI) + s(C.DUAL_RIGHT_PHI), s(C.DUAL_PHI)), IDENTITY_RTOL)
    report.add("left-dual + right-dual = corrected",
               relative_error(vt(C.LEFT_DUAL) + vt(C.RIGHT_DUAL), vt(C.CORRECTED)), IDENTITY_RTOL)

    theta = np.zeros_like(r)
    for phi_id, v_id in GENERATOR_OF.items():
        rec = forward_derive(phi_id, p, steps)
        report.add(f"forward {phi_id.value} -> {v_id.value}",
                   relative_error(rec.velocity(r, theta, t).v_theta, vt(v_id), normwise=True),
                   IDENTITY_RTOL)

    sub = samples.subsample(round_trip_points)
    for v_id in VALID_VELOCITY_IDS:
        phi = reverse_derive(v_id, p, quad)
        th = np.zeros_like(sub.r)
        phi_vals = phi(sub.r, th, sub.t)
        report.add(f"reverse {v_id.value} -> {SOURCE_OF[v_id].value}",
                   relative_error(phi_vals, catalog_eval(SOURCE_OF[v_id], sub.r, sub.t, p)),
                   ROUND_TRIP_RTOL)
        back = forward_derive(phi, p, steps).velocity(sub.r, th, sub.t).v_theta
        report.add(f"round trip {v_id.value}",
                   relative_error(back, catalog_eval(v_id, sub.r, sub.t, p).v_theta, normwise=True),
                   ROUND_TRIP_RTOL)
    return report
