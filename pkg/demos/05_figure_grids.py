"""The eight figure grids as CSV files on the [-1, 1] nm window."""
import tempfile
from pathlib import Path

from pilotwave.gridio import FIGURES, GridSpec, read_grid, sample_field, write_figure_set
from pilotwave.physics import ELECTRON_VOLT, params_from_energy

p = params_from_energy(ELECTRON_VOLT)
spec = GridSpec(time=p.period, resolution=201)

out = Path(tempfile.mkdtemp(prefix="pilotwave-grids-"))
for number, path in write_figure_set(out, spec, p).items():
    print(f"figure {number}: {path.name}")

g = sample_field(FIGURES[1], spec, p)
print("standard-phi peak", g.values.max(), "at the centre:", g.values[100, 100] == g.values.max())

g = sample_field(FIGURES[8], spec, p)
print("corrected speed at the window corner", g.values[0, 0, 2], "m/s")

# the centre node is withheld from the export
rows = read_grid(out / "standard_1eV_201.csv")["rows"]
print("masked centre row:", rows[100 * 201 + 100])
print("rows written:", len(rows))
