"""The rotated gradient is divergence free, and the dual fields add up."""
import numpy as np

from pilotwave.fieldcalc import PolarPoint, divergence_polar, rotated_gradient_field
from pilotwave.physics import ELECTRON_VOLT, params_from_energy
from pilotwave.pipeline import PointSet, catalog_scalar_field, check_identities
from pilotwave.verification import NM_STEPS, divergence_error, random_smooth_field

p = params_from_energy(ELECTRON_VOLT)
rng = np.random.default_rng(1)

pts = PolarPoint.of(rng.uniform(0.05e-9, 1e-9, 5), rng.uniform(0, 2 * np.pi, 5))
J = rotated_gradient_field(catalog_scalar_field("dual-phi", p))
print("div J for dual-phi:", divergence_polar(J, pts, p.period))

# an arbitrary smooth field with angular dependence, on a plane measured in nm
phi = random_smooth_field(rng)
r, th = rng.uniform(0.05, 1.0, 2000), rng.uniform(0, 2 * np.pi, 2000)
print("random field, max|div| / (1 + max|J|) =", divergence_error(phi, r, th, 0.0, NM_STEPS))

samples = PointSet.grid(np.linspace(0.05e-9, 1e-9, 21), [p.period, 3 * p.period])
report = check_identities(p, samples, round_trip_points=8)
print("\n".join(report.lines()))
