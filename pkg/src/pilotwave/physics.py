"""Constants and the ground-state two-dimensional harmonic oscillator."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PhysicalConstants",
    "CODATA2018",
    "HBAR",
    "ELECTRON_MASS",
    "LIGHT_SPEED",
    "ELECTRON_VOLT",
    "OscillatorParams",
    "params_from_energy",
    "psi_ground",
    "born_density",
    "phase_action",
    "phase_gradient",
    "group_velocity",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    electron_mass: float
    light_speed: float
    electron_volt: float

    def __post_init__(self) -> None:
        for name, value in vars(self).items():
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")


# CODATA 2018, pinned so example values reproduce exactly.
CODATA2018 = PhysicalConstants(
    hbar=1.054571817e-34,
    electron_mass=9.1093837015e-31,
    light_speed=2.99792458e8,
    electron_volt=1.602176634e-19,
)

HBAR = CODATA2018.hbar
ELECTRON_MASS = CODATA2018.electron_mass
LIGHT_SPEED = CODATA2018.light_speed
ELECTRON_VOLT = CODATA2018.electron_volt


@dataclass(frozen=True)
class OscillatorParams:
    """Ground-state oscillator parameters, all in SI units.

    ``lambda_norm`` is the Gaussian amplitude ``(m omega / (pi hbar))**(1/4)``
    and ``beta`` the inverse area ``m omega / (2 hbar)``. Build instances with
    :func:`params_from_energy`.
    """

    mass: float
    energy: float
    omega: float
    period: float
    lambda_norm: float
    beta: float
    quantum_n: int = 0
    hbar: float = HBAR

    def __post_init__(self) -> None:
        if self.quantum_n != 0:
            raise ValueError("only the ground state (quantum_n = 0) is supported")

    @property
    def energy_ev(self) -> float:
        return self.energy / ELECTRON_VOLT

    @property
    def width(self) -> float:
        """Length scale 1/sqrt(2 beta) of the Born density."""
        return 1.0 / math.sqrt(2.0 * self.beta)

    def as_dict(self) -> dict:
        return {
            "mass_kg": self.mass,
            "energy_J": self.energy,
            "energy_eV": self.energy_ev,
            "omega_rad_per_s": self.omega,
            "period_s": self.period,
            "lambda_norm": self.lambda_norm,
            "beta_per_m2": self.beta,
            "quantum_n": self.quantum_n,
            "hbar_J_s": self.hbar,
        }


def params_from_energy(energy: float, mass: float = ELECTRON_MASS,
                       hbar: float = HBAR) -> OscillatorParams:
    """Oscillator parameters for ground-state energy ``energy`` (J).

    omega = 2E/hbar and period = pi hbar / E.
    """
    if not (math.isfinite(energy) and energy > 0):
        raise ValueError(f"energy must be positive and finite, got {energy!r}")
    if not (math.isfinite(mass) and mass > 0):
        raise ValueError(f"mass must be positive and finite, got {mass!r}")
    omega = 2.0 * energy / hbar
    period = math.pi * hbar / energy
    beta = mass * omega / (2.0 * hbar)
    lambda_norm = (mass * omega / (math.pi * hbar)) ** 0.25
    return OscillatorParams(mass=mass, energy=energy, omega=omega, period=period,
                            lambda_norm=lambda_norm, beta=beta, hbar=hbar)


def psi_ground(r, p: OscillatorParams):
    """Real ground-state amplitude ``lambda * exp(-beta r^2)``."""
    r = np.asarray(r, dtype=float)
    return p.lambda_norm * np.exp(-p.beta * r * r)


def born_density(r, p: OscillatorParams):
    """Born density ``lambda^2 * exp(-2 beta r^2)``."""
    r = np.asarray(r, dtype=float)
    return p.lambda_norm ** 2 * np.exp(-2.0 * p.beta * r * r)


def phase_action(t, p: OscillatorParams):
    """Phase action ``(n + 1/2) omega t``; constant in space."""
    t = np.asarray(t, dtype=float)
    return (p.quantum_n + 0.5) * p.omega * t


def phase_gradient(r, t, p: OscillatorParams):
    """Radial derivative of :func:`phase_action`, which has no r-dependence."""
    return np.zeros(np.broadcast(np.asarray(r, dtype=float), np.asarray(t, dtype=float)).shape)


def group_velocity(p: OscillatorParams, r=0.0, t=None):
    """Velocity ``grad(S)/m`` of the unentangled ground state: identically zero."""
    if t is None:
        t = p.period
    return phase_gradient(r, t, p) / p.mass
