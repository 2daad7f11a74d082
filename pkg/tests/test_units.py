from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pilotwave.pipeline import SCALAR_IDS, VELOCITY_IDS, GENERATOR_OF, CatalogId
from pilotwave.units import (
    DIMENSIONLESS,
    LENGTH,
    SCALAR_FIELD,
    VELOCITY,
    Dimension,
    dim_div,
    dim_mul,
    dim_of_catalog,
    dim_of_factors,
)

fractions = st.fractions(min_value=-6, max_value=6, max_denominator=8)
dims = st.builds(Dimension, fractions, fractions, fractions)


def test_mul_examples():
    assert dim_mul(Dimension(1, 1, -1), Dimension(-1, -2, 1)) == Dimension(0, -1, 0)
    assert dim_mul(Dimension(0, 0, 0), Dimension(0, 1, -1)) == Dimension(0, 1, -1)
    assert dim_mul(Dimension(0, 2, -1), Dimension(0, -1, 0)) == Dimension(0, 1, -1)


def test_div_examples():
    # momentum-like numerator over hbar-like denominator
    assert dim_div(Dimension(1, 1, -1), Dimension(1, 2, -1)) == Dimension(0, -1, 0)
    assert dim_div(Dimension(0, 2, -1), Dimension(0, 1, 0)) == Dimension(0, 1, -1)


def test_exponents_are_exact():
    d = Dimension(0, Fraction(1, 3), 0) * Dimension(0, Fraction(1, 3), 0) * Dimension(0, Fraction(1, 3), 0)
    assert d == LENGTH
    with pytest.raises(TypeError):
        Dimension(0.5, 0, 0)
    assert Dimension("1/4", 0, 0).mass_exp == Fraction(1, 4)


@given(dims, dims)
def test_mul_commutes(a, b):
    assert a * b == b * a


@given(dims, dims, dims)
def test_mul_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(dims)
def test_identity_and_self_division(a):
    assert a * DIMENSIONLESS == a
    assert a / a == DIMENSIONLESS


def test_formatting():
    assert str(Dimension(0, -1, 0)) == "L^-1"
    assert str(SCALAR_FIELD) == "L^2 T^-1"
    assert str(VELOCITY) == "L T^-1"
    assert str(DIMENSIONLESS) == "1"
    assert str(Dimension(0, Fraction(1, 2), 0)) == "L^1/2"


def test_symbol_dimensions():
    # beta = m omega / (2 hbar) is an inverse area
    assert dim_of_factors({"m": 1, "omega": 1, "hbar": -1}) == Dimension(0, -2, 0)
    with pytest.raises(KeyError):
        dim_of_factors({"q": 1})


def test_catalog_examples():
    assert dim_of_catalog(CatalogId.INVALID_RAW) == Dimension(0, -1, 0)
    assert dim_of_catalog("corrected") == Dimension(0, 1, -1)
    assert dim_of_catalog(CatalogId.STANDARD_PHI) == Dimension(0, 2, -1)
    with pytest.raises(KeyError):
        dim_of_catalog("nonsense")


def test_only_invalid_raw_lacks_velocity_dimensions():
    bad = [v for v in VELOCITY_IDS if dim_of_catalog(v) != VELOCITY]
    assert bad == [CatalogId.INVALID_RAW]


def test_generated_scalar_fields_have_field_dimensions():
    for cid in SCALAR_IDS:
        if cid is CatalogId.BORN_SCALAR:
            # the Born density is dimensionless by the structural convention
            assert dim_of_catalog(cid) == DIMENSIONLESS
        else:
            assert dim_of_catalog(cid) == SCALAR_FIELD


def test_rotated_gradient_removes_one_length():
    for phi, v in GENERATOR_OF.items():
        assert dim_of_catalog(v) == dim_div(dim_of_catalog(phi), LENGTH)
