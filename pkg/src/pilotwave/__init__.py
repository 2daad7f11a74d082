"""Ambiguous pilot-wave velocities for the ground-state 2D harmonic oscillator.

Scalar fields generate divergence-free currents through the rotated
gradient ``J = S grad(phi)``; dividing by the Born density turns each into a
candidate particle velocity. The package builds these fields, reverses a
velocity back into its scalar field, checks dimensions, integrates paths,
and samples the field grids on the nanometre window.
"""
from .units import Dimension, dim_div, dim_mul, dim_of_catalog
from .physics import (
    ELECTRON_MASS,
    ELECTRON_VOLT,
    HBAR,
    LIGHT_SPEED,
    OscillatorParams,
    born_density,
    group_velocity,
    params_from_energy,
    phase_action,
    psi_ground,
)
from .fieldcalc import (
    DEFAULT_STEPS,
    PolarPoint,
    PolarVector,
    ScalarFieldDescriptor,
    Steps,
    VectorFieldDescriptor,
    divergence_polar,
    gradient_polar,
    rotated_gradient,
)
from .pipeline import (
    CatalogId,
    DerivationRecord,
    PointSet,
    QuadratureConfig,
    catalog_eval,
    catalog_scalar_field,
    catalog_velocity_field,
    check_identities,
    forward_derive,
    reverse_derive,
)
from .trajectories import Trajectory, TrajectoryConfig, integrate, superluminal_radius
from .gridio import FieldGrid, GridSpec, sample_scalar, sample_velocity, write_grid

__version__ = "0.1.0"
