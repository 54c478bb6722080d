"""Entanglement dynamics of a mixed qubit coupled to a thermal field mode.

Closed-form time evolution under the resonant rotating-wave (Jaynes-Cummings)
coupling, analytic partial-transpose block spectra, logarithmic negativity
with closed-form upper bounds, classification of parameter points into
dynamical regimes, and an independent brute-force verification path.
"""

from .bruteforce import (
    ProjectedState,
    evolve_density_matrix,
    evolve_numeric,
    full_partial_transpose,
    full_pt_spectrum,
    nppt_witness,
    project_2x3,
)
from .model import (
    NEG_EIGENVALUE_TOL,
    ModelParams,
    TrigFactors,
    TruncatedDensityMatrix,
    Truncation,
    auto_truncation,
    basis_index,
    build_state,
    rho_block,
    thermal_weight,
    trig_factors,
)
from .ptspec import (
    NegativitySeries,
    PTBlock,
    PTSpectrum,
    envelope_upper_bound,
    envelope_upper_bound_at,
    log_negativity,
    log_negativity_grid,
    max_log_negativity,
    min_block_eigenvalue_grid,
    negativity_tail_bound,
    pt_block,
    pt_spectrum,
    standalone_eigenvalue,
)
from .regimes import (
    BoundaryKind,
    BoundaryPoint,
    Regime,
    RegimeResult,
    boundary_curve,
    classify,
    cond_delayed,
    cond_immediate,
    delayed_margin,
    f_min,
    first_nppt_time,
    immediate_margin,
)
from .sweep import SweepConfig, SweepRecord, run_sweep, verify_cases

__version__ = "0.1.0"

__all__ = [
    "NEG_EIGENVALUE_TOL",
    "BoundaryKind",
    "BoundaryPoint",
    "ModelParams",
    "NegativitySeries",
    "PTBlock",
    "PTSpectrum",
    "ProjectedState",
    "Regime",
    "RegimeResult",
    "SweepConfig",
    "SweepRecord",
    "TrigFactors",
    "TruncatedDensityMatrix",
    "Truncation",
    "auto_truncation",
    "basis_index",
    "boundary_curve",
    "build_state",
    "classify",
    "cond_delayed",
    "cond_immediate",
    "delayed_margin",
    "envelope_upper_bound",
    "envelope_upper_bound_at",
    "evolve_density_matrix",
    "evolve_numeric",
    "f_min",
    "first_nppt_time",
    "full_partial_transpose",
    "full_pt_spectrum",
    "immediate_margin",
    "log_negativity",
    "log_negativity_grid",
    "max_log_negativity",
    "min_block_eigenvalue_grid",
    "negativity_tail_bound",
    "nppt_witness",
    "project_2x3",
    "pt_block",
    "pt_spectrum",
    "rho_block",
    "run_sweep",
    "standalone_eigenvalue",
    "thermal_weight",
    "trig_factors",
    "verify_cases",
]
