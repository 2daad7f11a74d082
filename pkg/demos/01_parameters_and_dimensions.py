"""Oscillator parameters for a 1 eV electron, and dimension bookkeeping."""
from pilotwave import units
from pilotwave.physics import ELECTRON_VOLT, params_from_energy
from pilotwave.pipeline import CatalogId

p = params_from_energy(1.0 * ELECTRON_VOLT)

# omega = 2E/hbar and the period pi*hbar/E follow from the ground-state energy
for key, value in p.as_dict().items():
    print(f"{key:>16s}  {value:.10g}")

# the Gaussian width 1/sqrt(2 beta) sets the length scale of every field
print(f"width = {p.width * 1e9:.4f} nm")

# A velocity needs L T^-1. The raw Born-derived velocity does not have it.
for cid in CatalogId:
    dim = units.dim_of_catalog(cid)
    tag = "" if not cid.is_velocity else ("ok" if dim == units.VELOCITY else "NOT a velocity")
    print(f"{cid.value:>15s}  {str(dim):>9s}  {tag}")
