"""Scalar field -> velocity and back again."""
import numpy as np

from pilotwave.physics import ELECTRON_VOLT, params_from_energy
from pilotwave.pipeline import (
    CatalogId,
    catalog_eval,
    forward_derive,
    relative_error,
    reverse_derive,
)

p = params_from_energy(ELECTRON_VOLT)
t = p.period
r = np.linspace(0.05e-9, 1e-9, 30)

# forward: rotate the gradient a quarter turn and divide by the Born density
rec = forward_derive(CatalogId.STANDARD_PHI, p)
v = rec.velocity(r, 0.0, t)
print("standard-phi ->", rec.dimension, "max |v_r| =", np.max(np.abs(v.v_r)))
print("  matches -r/t to", relative_error(v.v_theta, -r / t))

# the Born density itself gives an inverse length, not a velocity
born = forward_derive(CatalogId.BORN_SCALAR, p)
print("born ->", born.dimension, "valid:", born.dimension_valid)

# reverse: integrate v_theta * rho inwards from where rho is negligible
phi = reverse_derive(CatalogId.CORRECTED, p)
got = phi(r, 0.0, t)
ref = catalog_eval(CatalogId.DUAL_PHI, r, t, p)
print("corrected -> dual-phi, relative error", relative_error(got, ref))

# and forward again
back = forward_derive(phi, p).velocity(r, 0.0, t).v_theta
print("round trip error", relative_error(back, catalog_eval(CatalogId.CORRECTED, r, t, p).v_theta,
                                         normwise=True))
