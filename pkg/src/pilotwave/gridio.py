"""Cartesian field grids for the figure window and their CSV/JSON exports.

Scalar CSV columns are ``x_m,y_m,value``; velocity columns are
``x_m,y_m,vx_mps,vy_mps,speed_mps``. Rows run over ``y`` (outer) then ``x``.
Masked nodes (inside the excluded disk around the origin) are written as
empty cells in CSV and ``null`` in JSON. CSV numbers carry 17 significant
digits; JSON floats use the shortest exact round-trip form.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .fieldcalc import DEFAULT_STEPS, PolarPoint, to_cartesian
from .physics import ELECTRON_VOLT, OscillatorParams
from .pipeline import CatalogId, catalog_eval, parse_catalog_id

__all__ = [
    "GridSpec",
    "FieldGrid",
    "FIGURES",
    "sample_scalar",
    "sample_velocity",
    "sample_field",
    "write_grid",
    "read_grid",
    "grid_filename",
    "write_figure_set",
]

# figure number -> catalog field
FIGURES = {
    1: CatalogId.STANDARD_PHI,
    2: CatalogId.DUAL_RIGHT_PHI,
    3: CatalogId.DUAL_LEFT_PHI,
    4: CatalogId.DUAL_PHI,
    5: CatalogId.STANDARD,
    6: CatalogId.RIGHT_DUAL,
    7: CatalogId.LEFT_DUAL,
    8: CatalogId.CORRECTED,
}

SCALAR_COLUMNS = ("x_m", "y_m", "value")
VELOCITY_COLUMNS = ("x_m", "y_m", "vx_mps", "vy_mps", "speed_mps")


@dataclass(frozen=True)
class GridSpec:
    time: float
    half_width: float = 1e-9
    resolution: int = 201
    mask_radius: float = DEFAULT_STEPS.h_r

    def __post_init__(self) -> None:
        if self.resolution < 2 or self.resolution % 2 == 0:
            raise ValueError("resolution must be odd and >= 3 so the axes pass through 0")
        if not self.mask_radius >= 0:
            raise ValueError("mask_radius must be >= 0")
        if not self.half_width > self.mask_radius:
            raise ValueError("half_width must exceed mask_radius")
        if not (math.isfinite(self.time) and self.time > 0):
            raise ValueError("grid time must be positive and finite")

    @property
    def axis(self) -> np.ndarray:
        # integer offsets keep the axis exactly antisymmetric about 0
        half = self.resolution // 2
        return np.arange(-half, half + 1) * (self.half_width / half)


@dataclass
class FieldGrid:
    """Sampled field on a square Cartesian window.

    ``values`` has shape ``(ny, nx)`` for scalars and ``(ny, nx, 3)`` holding
    ``(v_x, v_y, |v|)`` for velocities. Values are computed at every node;
    ``mask`` only marks which nodes are withheld from exports.
    """

    spec: GridSpec
    field: CatalogId
    values: np.ndarray
    mask: np.ndarray
    energy: float
    mass: float

    @property
    def kind(self) -> str:
        return "scalar" if self.values.ndim == 2 else "velocity"

    @property
    def x(self) -> np.ndarray:
        return self.spec.axis

    @property
    def y(self) -> np.ndarray:
        return self.spec.axis

    @property
    def columns(self) -> tuple[str, ...]:
        return SCALAR_COLUMNS if self.kind == "scalar" else VELOCITY_COLUMNS

    def node(self, x_index: int, y_index: int):
        return self.values[y_index, x_index]

    def rows(self):
        """Yield ``[x, y, *values]`` per node, ``None`` for masked values."""
        xs, ys = self.x, self.y
        for j, y in enumerate(ys):
            for i, x in enumerate(xs):
                if self.mask[j, i]:
                    vals = [None] * (len(self.columns) - 2)
                else:
                    vals = np.atleast_1d(self.values[j, i]).tolist()
                yield [float(x), float(y), *vals]

    def metadata(self) -> dict:
        return {
            "field": self.field.value,
            "kind": self.kind,
            "energy_eV": self.energy / ELECTRON_VOLT,
            "energy_J": self.energy,
            "mass_kg": self.mass,
            "time_s": self.spec.time,
            "resolution": self.spec.resolution,
            "half_width_m": self.spec.half_width,
            "mask_radius_m": self.spec.mask_radius,
        }


def _mesh(spec: GridSpec):
    xx, yy = np.meshgrid(spec.axis, spec.axis)
    r = np.hypot(xx, yy)
    theta = np.arctan2(yy, xx)
    return r, theta, r < spec.mask_radius


def sample_scalar(field, spec: GridSpec, p: OscillatorParams) -> FieldGrid:
    cid = parse_catalog_id(field, "scalar")
    r, _, mask = _mesh(spec)
    values = catalog_eval(cid, r, spec.time, p)
    return FieldGrid(spec, cid, np.asarray(values, dtype=float), mask, p.energy, p.mass)


def sample_velocity(field, spec: GridSpec, p: OscillatorParams) -> FieldGrid:
    cid = parse_catalog_id(field, "velocity")
    r, theta, mask = _mesh(spec)
    v = catalog_eval(cid, r, spec.time, p)
    vx, vy = to_cartesian(PolarPoint(r, theta), v)
    values = np.stack([vx, vy, v.norm()], axis=-1)
    return FieldGrid(spec, cid, values, mask, p.energy, p.mass)


def sample_field(field, spec: GridSpec, p: OscillatorParams) -> FieldGrid:
    cid = parse_catalog_id(field)
    return sample_scalar(cid, spec, p) if cid.is_scalar else sample_velocity(cid, spec, p)


def _fmt(v) -> str:
    return "" if v is None else f"{v:.17g}"


def write_grid(g: FieldGrid, path: Union[str, Path], format: Optional[str] = None) -> Path:
    """Write a grid as CSV or JSON; the format defaults to the file suffix."""
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".") or "csv").lower()
    if fmt == "csv":
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(g.columns)
            for row in g.rows():
                writer.writerow([_fmt(v) for v in row])
    elif fmt == "json":
        doc = dict(g.metadata(), columns=list(g.columns), rows=list(g.rows()))
        with path.open("w") as fh:
            json.dump(doc, fh, allow_nan=False)
            fh.write("\n")
    else:
        raise ValueError(f"unsupported grid format {fmt!r}; use csv or json")
    return path


def read_grid(path: Union[str, Path]) -> dict:
    """Read a grid file back as ``{"columns", "rows", ...metadata}``.

    Empty CSV cells and JSON nulls come back as ``None``.
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        with path.open() as fh:
            return json.load(fh)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        columns = next(reader)
        rows = [[float(v) if v != "" else None for v in row] for row in reader]
    return {"columns": columns, "rows": rows}


def grid_filename(field, energy_ev: float, resolution: int, format: str = "csv") -> str:
    cid = parse_catalog_id(field)
    return f"{cid.value}_{energy_ev:g}eV_{resolution}.{format}"


def write_figure_set(out_dir: Union[str, Path], spec: GridSpec, p: OscillatorParams,
                     format: str = "csv") -> dict[int, Path]:
    """Write the eight figure grids into ``out_dir``; returns figure -> path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = {}
    for number, cid in FIGURES.items():
        g = sample_field(cid, spec, p)
        name = grid_filename(cid, p.energy_ev, spec.resolution, format)
        written[number] = write_grid(g, out_dir / name, format)
    return written
