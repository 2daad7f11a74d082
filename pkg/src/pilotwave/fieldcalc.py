"""Polar vector calculus on the punctured plane.

All operators are vectorised: ``r``, ``theta`` and ``t`` may be scalars or
broadcastable numpy arrays. Derivatives that are not supplied analytically
are taken with five-point (fourth-order) central differences; the default
steps suit SI lengths on the nanometre scale of the oscillator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .units import Dimension, DIMENSIONLESS, LENGTH, dim_div

__all__ = [
    "Steps",
    "DEFAULT_STEPS",
    "PolarPoint",
    "PolarVector",
    "ScalarFieldDescriptor",
    "VectorFieldDescriptor",
    "OriginError",
    "central_difference",
    "gradient_polar",
    "rotated_gradient",
    "rotated_gradient_field",
    "divergence_polar",
    "continuity_residual",
    "to_cartesian",
]


class Steps(NamedTuple):
    h_r: float = 1e-12
    h_theta: float = 1e-6


DEFAULT_STEPS = Steps()


class PolarPoint(NamedTuple):
    r: np.ndarray
    theta: np.ndarray

    @classmethod
    def of(cls, r, theta=0.0) -> "PolarPoint":
        r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
        return cls(r, theta)


class PolarVector(NamedTuple):
    v_r: np.ndarray
    v_theta: np.ndarray

    def __add__(self, other):
        return PolarVector(self.v_r + other.v_r, self.v_theta + other.v_theta)

    def __sub__(self, other):
        return PolarVector(self.v_r - other.v_r, self.v_theta - other.v_theta)

    def scale(self, a) -> "PolarVector":
        return PolarVector(a * self.v_r, a * self.v_theta)

    def norm(self):
        return np.hypot(self.v_r, self.v_theta)


class OriginError(ValueError):
    """Raised when an operator is asked to evaluate too close to r = 0."""


ScalarFn = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ScalarFieldDescriptor:
    """A named scalar field ``phi(r, theta, t)`` with an attached dimension.

    ``d_dr`` and ``d_dtheta`` are optional analytic partial derivatives; when
    absent the operators fall back to finite differences.
    """

    name: str
    evaluate: ScalarFn
    dimension: Dimension = DIMENSIONLESS
    d_dr: Optional[ScalarFn] = field(default=None, compare=False)
    d_dtheta: Optional[ScalarFn] = field(default=None, compare=False)

    @property
    def analytic_radial_derivative(self) -> Optional[ScalarFn]:
        return self.d_dr

    def __call__(self, r, theta=0.0, t=0.0):
        return self.evaluate(np.asarray(r, dtype=float), np.asarray(theta, dtype=float),
                             np.asarray(t, dtype=float))

    def combine(self, other: "ScalarFieldDescriptor", a: float = 1.0, b: float = 1.0,
                name: Optional[str] = None) -> "ScalarFieldDescriptor":
        """The linear combination ``a*self + b*other``."""
        def lin(f, g):
            if f is None or g is None:
                return None
            return lambda r, th, t: a * f(r, th, t) + b * g(r, th, t)

        return ScalarFieldDescriptor(
            name=name or f"{a}*{self.name}+{b}*{other.name}",
            evaluate=lin(self.evaluate, other.evaluate),
            dimension=self.dimension,
            d_dr=lin(self.d_dr, other.d_dr),
            d_dtheta=lin(self.d_dtheta, other.d_dtheta),
        )


@dataclass(frozen=True)
class VectorFieldDescriptor:
    """A named vector field returning :class:`PolarVector` components."""

    name: str
    evaluate: Callable[[np.ndarray, np.ndarray, np.ndarray], PolarVector]
    dimension: Dimension = DIMENSIONLESS

    def __call__(self, r, theta=0.0, t=0.0) -> PolarVector:
        r, theta, t = np.broadcast_arrays(np.asarray(r, dtype=float),
                                          np.asarray(theta, dtype=float),
                                          np.asarray(t, dtype=float))
        vr, vth = self.evaluate(r, theta, t)
        return PolarVector(np.broadcast_to(vr, r.shape) * 1.0, np.broadcast_to(vth, r.shape) * 1.0)


def central_difference(f: Callable[[np.ndarray], np.ndarray], x, h: float):
    """Fourth-order five-point central difference of ``f`` at ``x``."""
    x = np.asarray(x, dtype=float)
    # pairwise differences first, so a locally constant f gives exactly 0
    near = f(x + h) - f(x - h)
    far = f(x + 2 * h) - f(x - 2 * h)
    return (8.0 * near - far) / (12.0 * h)


def _check_radius(r: np.ndarray, h_r: float) -> None:
    if np.any(~np.isfinite(r)):
        raise ValueError("radius must be finite")
    # the five-point stencil reaches r - 2 h_r
    if np.any(r <= 2.0 * h_r):
        raise OriginError(f"radius must exceed the stencil reach 2*h_r = {2 * h_r:g}; "
                          f"min r = {np.min(r):g}")


def _partials(phi: ScalarFieldDescriptor, r, theta, t, steps: Steps):
    if phi.d_dr is not None:
        dphi_dr = phi.d_dr(r, theta, t)
    else:
        dphi_dr = central_difference(lambda x: phi.evaluate(x, theta, t), r, steps.h_r)
    if phi.d_dtheta is not None:
        dphi_dth = phi.d_dtheta(r, theta, t)
    else:
        dphi_dth = central_difference(lambda a: phi.evaluate(r, a, t), theta, steps.h_theta)
    dphi_dr = np.broadcast_to(dphi_dr, r.shape) * 1.0
    dphi_dth = np.broadcast_to(dphi_dth, r.shape) * 1.0
    if not (np.all(np.isfinite(dphi_dr)) and np.all(np.isfinite(dphi_dth))):
        raise FloatingPointError(f"non-finite derivative of {phi.name!r}")
    return dphi_dr, dphi_dth


def _point(p, t):
    r, theta, t = np.broadcast_arrays(np.asarray(p.r, dtype=float), np.asarray(p.theta, dtype=float),
                                      np.asarray(t, dtype=float))
    return r, theta, t


def gradient_polar(phi: ScalarFieldDescriptor, p: PolarPoint, t=0.0,
                   steps: Steps = DEFAULT_STEPS) -> PolarVector:
    """Polar gradient ``(d phi/dr, (1/r) d phi/d theta)``."""
    r, theta, t = _point(p, t)
    _check_radius(r, steps.h_r)
    dr, dth = _partials(phi, r, theta, t, steps)
    return PolarVector(dr, dth / r)


def rotated_gradient(phi: ScalarFieldDescriptor, p: PolarPoint, t=0.0,
                     steps: Steps = DEFAULT_STEPS) -> PolarVector:
    """Gradient rotated a quarter turn: ``(-(1/r) d phi/d theta, d phi/dr)``.

    This is the curl of the out-of-plane potential ``A_z = -phi`` and is
    therefore divergence free.
    """
    g = gradient_polar(phi, p, t, steps)
    return PolarVector(-g.v_theta, g.v_r)


def rotated_gradient_field(phi: ScalarFieldDescriptor, steps: Steps = DEFAULT_STEPS,
                           name: Optional[str] = None) -> VectorFieldDescriptor:
    """Wrap :func:`rotated_gradient` of ``phi`` as a vector field."""
    return VectorFieldDescriptor(
        name=name or f"rot_grad({phi.name})",
        evaluate=lambda r, th, t: rotated_gradient(phi, PolarPoint(r, th), t, steps),
        dimension=dim_div(phi.dimension, LENGTH),
    )


def divergence_polar(F: VectorFieldDescriptor, p: PolarPoint, t=0.0,
                     steps: Steps = DEFAULT_STEPS):
    """``(1/r) d(r F_r)/dr + (1/r) d F_theta/d theta`` by central differences."""
    r, theta, t = _point(p, t)
    _check_radius(r, steps.h_r)
    radial = central_difference(lambda x: x * F(x, theta, t).v_r, r, steps.h_r)
    angular = central_difference(lambda a: F(r, a, t).v_theta, theta, steps.h_theta)
    return (radial + angular) / r


def continuity_residual(density_rate, F: VectorFieldDescriptor, p: PolarPoint, t=0.0,
                        steps: Steps = DEFAULT_STEPS):
    """``d rho/dt + div F`` at the given points.

    ``density_rate`` is either an array of ``d rho/dt`` values or a callable
    ``(r, theta, t) -> d rho/dt``.
    """
    r, theta, t = _point(p, t)
    rate = density_rate(r, theta, t) if callable(density_rate) else density_rate
    return np.asarray(rate, dtype=float) + divergence_polar(F, PolarPoint(r, theta), t, steps)


def to_cartesian(p: PolarPoint, v: PolarVector):
    """Cartesian components ``(v_x, v_y)`` of a polar vector at ``p``."""
    c, s = np.cos(p.theta), np.sin(p.theta)
    return v.v_r * c - v.v_theta * s, v.v_r * s + v.v_theta * c
