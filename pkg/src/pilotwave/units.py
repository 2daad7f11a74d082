"""Dimensional bookkeeping over (mass, length, time) exponents.

Exponents are exact rationals so that dimension algebra never drifts.
Catalog items are described by the structural factors of their closed
forms (``r``, ``t``, ``m``, ``omega``, ``hbar``); the Gaussian factor and
the squared normalization amplitude are treated as dimensionless, which is
the convention the velocity-validity checks rely on.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

Exponent = Union[int, Fraction, str]

__all__ = [
    "Dimension",
    "DIMENSIONLESS",
    "MASS",
    "LENGTH",
    "TIME",
    "VELOCITY",
    "SCALAR_FIELD",
    "SYMBOL_DIMENSIONS",
    "dim_mul",
    "dim_div",
    "dim_pow",
    "dim_of_factors",
    "dim_of_catalog",
]


@dataclass(frozen=True)
class Dimension:
    mass_exp: Fraction = Fraction(0)
    length_exp: Fraction = Fraction(0)
    time_exp: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("mass_exp", "length_exp", "time_exp"):
            value = getattr(self, name)
            if isinstance(value, float):
                raise TypeError(f"{name} must be an exact rational, got float {value!r}")
            object.__setattr__(self, name, Fraction(value))

    def __mul__(self, other: "Dimension") -> "Dimension":
        return dim_mul(self, other)

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return dim_div(self, other)

    def __pow__(self, power: Exponent) -> "Dimension":
        return dim_pow(self, power)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.mass_exp, self.length_exp, self.time_exp)

    @property
    def is_dimensionless(self) -> bool:
        return self.as_tuple() == (0, 0, 0)

    def __str__(self) -> str:
        parts = []
        for symbol, exp in zip("MLT", self.as_tuple()):
            if exp == 0:
                continue
            parts.append(symbol if exp == 1 else f"{symbol}^{exp}")
        return " ".join(parts) if parts else "1"


def dim_mul(a: Dimension, b: Dimension) -> Dimension:
    return Dimension(a.mass_exp + b.mass_exp, a.length_exp + b.length_exp, a.time_exp + b.time_exp)


def dim_div(a: Dimension, b: Dimension) -> Dimension:
    return Dimension(a.mass_exp - b.mass_exp, a.length_exp - b.length_exp, a.time_exp - b.time_exp)


def dim_pow(a: Dimension, power: Exponent) -> Dimension:
    p = Fraction(power)
    return Dimension(a.mass_exp * p, a.length_exp * p, a.time_exp * p)


DIMENSIONLESS = Dimension()
MASS = Dimension(1, 0, 0)
LENGTH = Dimension(0, 1, 0)
TIME = Dimension(0, 0, 1)
VELOCITY = Dimension(0, 1, -1)
SCALAR_FIELD = Dimension(0, 2, -1)

SYMBOL_DIMENSIONS: dict[str, Dimension] = {
    "r": LENGTH,
    "t": TIME,
    "m": MASS,
    "omega": Dimension(0, 0, -1),
    "hbar": Dimension(1, 2, -1),
}


def dim_of_factors(factors: Mapping[str, Exponent]) -> Dimension:
    """Dimension of a monomial given as ``{symbol: exponent}``."""
    out = DIMENSIONLESS
    for symbol, exp in factors.items():
        try:
            base = SYMBOL_DIMENSIONS[symbol]
        except KeyError:
            raise KeyError(f"unknown symbol {symbol!r}") from None
        out = dim_mul(out, dim_pow(base, exp))
    return out


# Each catalog closed form as a sum of monomials in the structural symbols.
# beta = m*omega/(2*hbar) is expanded; lambda^2 and exp(-2 beta r^2) drop out.
_CATALOG_TERMS: dict[str, tuple[dict[str, int], ...]] = {
    # scalar fields
    "born": ({},),
    "standard-phi": ({"hbar": 1, "m": -1, "omega": -1, "t": -1},),
    "dual-right-phi": ({"hbar": 1, "m": -1, "omega": -1, "t": -1},),
    "dual-left-phi": ({"r": 2, "t": -1},),
    "dual-phi": ({"r": 2, "t": -1}, {"hbar": 1, "m": -1, "omega": -1, "t": -1}),
    # azimuthal velocities
    "invalid-raw": ({"m": 1, "omega": 1, "r": 1, "hbar": -1},),
    "corrected": ({"m": 1, "omega": 1, "r": 3, "hbar": -1, "t": -1},),
    "standard": ({"r": 1, "t": -1},),
    "right-dual": ({"r": 1, "t": -1},),
    "left-dual": ({"r": 1, "t": -1}, {"m": 1, "omega": 1, "r": 3, "hbar": -1, "t": -1}),
}


def dim_of_catalog(item) -> Dimension:
    """Structural dimension of a catalog closed form.

    ``item`` may be a :class:`pilotwave.pipeline.CatalogId` or its string
    value. Raises ``KeyError`` for unknown ids and ``ValueError`` if the
    terms of a sum disagree.
    """
    key = getattr(item, "value", item)
    try:
        terms = _CATALOG_TERMS[key]
    except KeyError:
        raise KeyError(f"unknown catalog id {item!r}") from None
    dims = {dim_of_factors(term) for term in terms}
    if len(dims) != 1:
        raise ValueError(f"terms of {key!r} carry mismatched dimensions: {sorted(map(str, dims))}")
    return dims.pop()
