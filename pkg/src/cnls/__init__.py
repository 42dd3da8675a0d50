"""Coupled cubic Schrodinger collisions: spectral evolution and analysis.

A small toolkit for two-component cubic Schrodinger systems on a periodic
interval: a Strang split-step Fourier propagator, a normalized gradient
flow for coupled ground states, conserved-quantity diagnostics, closed-form
elastic-collision predictions for the integrable case, and post-collision
analysis, all driven by the ``cnls`` command-line harness.
"""

from .analysis import (
    AmbiguousPeakWarning,
    CollisionReport,
    PeakTrack,
    compare_to_ground_state,
    l2_masses,
    peak_track,
    refine_peak,
    split_at_origin,
)
from .diagnostics import (
    DiagnosticsRecord,
    cutoff_chi,
    energy,
    error_norms,
    localized_momentum,
    mass,
    measure_diagnostics,
    momentum,
    observed_order,
)
from .errors import (
    ConfigError,
    DomainError,
    IntegrationDivergedError,
    NonConvergenceError,
    SingularSystemError,
    StepFailureError,
)
from .gradientflow import (
    GroundStateResult,
    befd_step,
    compute_omega,
    default_flow_domain,
    equation_residual,
    flow_energy,
    solve_ground_state,
    tridiagonal_solve,
)
from .grid import (
    GridSpec,
    make_grid,
    periodic_shift,
    quadrature,
    spectral_derivative,
    spectral_transform,
    trig_interpolate,
)
from .manakov import ManakovShift, collision_shift, elastic_error, predicted_outgoing
from .profiles import (
    CoupledParams,
    FieldPair,
    SolitonSpec,
    ground_profile,
    initial_data,
    sech,
    soliton_field,
)
from .splitstep import (
    EvolveConfig,
    evolve,
    linear_full_step,
    nonlinear_half_step,
    strang_step,
)
from .cli import GroundStateBlock, RunConfig, parse_config, run_experiment

__version__ = "0.1.0"

__all__ = [
    "AmbiguousPeakWarning",
    "CollisionReport",
    "ConfigError",
    "CoupledParams",
    "DiagnosticsRecord",
    "DomainError",
    "EvolveConfig",
    "FieldPair",
    "GridSpec",
    "GroundStateBlock",
    "GroundStateResult",
    "IntegrationDivergedError",
    "ManakovShift",
    "NonConvergenceError",
    "PeakTrack",
    "RunConfig",
    "SingularSystemError",
    "SolitonSpec",
    "StepFailureError",
    "befd_step",
    "collision_shift",
    "compare_to_ground_state",
    "compute_omega",
    "cutoff_chi",
    "default_flow_domain",
    "elastic_error",
    "energy",
    "equation_residual",
    "error_norms",
    "evolve",
    "flow_energy",
    "ground_profile",
    "initial_data",
    "l2_masses",
    "linear_full_step",
    "localized_momentum",
    "make_grid",
    "mass",
    "measure_diagnostics",
    "momentum",
    "nonlinear_half_step",
    "observed_order",
    "parse_config",
    "peak_track",
    "periodic_shift",
    "predicted_outgoing",
    "quadrature",
    "refine_peak",
    "run_experiment",
    "sech",
    "solve_ground_state",
    "soliton_field",
    "spectral_derivative",
    "spectral_transform",
    "split_at_origin",
    "strang_step",
    "tridiagonal_solve",
    "trig_interpolate",
]
