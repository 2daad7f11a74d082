"""Circular orbits, their log-time phase, and where they outrun light."""
import numpy as np

from pilotwave.fieldcalc import PolarPoint
from pilotwave.physics import ELECTRON_VOLT, params_from_energy
from pilotwave.trajectories import TrajectoryConfig, integrate, superluminal_radius

p = params_from_energy(ELECTRON_VOLT)
t0 = p.period
r0 = 0.5e-9
cfg = TrajectoryConfig(t0, 10 * t0, t0 / 1000)

# v_theta / r is independent of theta, so r stays put and theta winds like -k ln(t/t0)
for name, k in [("standard", 1.0), ("corrected", 4 * p.beta * r0 ** 2)]:
    tr = integrate(name, PolarPoint(r0, 0.0), cfg, p)
    exact = -k * np.log(tr.t[-1] / t0)
    print(f"{name:>9s}: theta(10 t0) = {tr.theta[-1]:.12f}  exact {exact:.12f}  "
          f"radius drift {abs(tr.r[-1] - r0):.1e} m")

# RK4 error shrinks 16x per halving of dt
errs = []
for div in (10, 20, 40, 80):
    tr = integrate("standard", PolarPoint(r0, 0.0), TrajectoryConfig(t0, 10 * t0, t0 / div), p)
    errs.append(abs(tr.theta[-1] + np.log(10.0)))
print("observed orders:", np.round(np.log2(np.array(errs[:-1]) / errs[1:]), 3))

for name in ("standard", "corrected"):
    print(f"|{name}| = c at r = {superluminal_radius(name, t0, p) * 1e9:.4f} nm")

print(integrate("corrected", PolarPoint(r0, 0.0), TrajectoryConfig(t0, 2 * t0, t0 / 4), p).to_csv())
