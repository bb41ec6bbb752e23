"""Finite-volume workbench for the 1D/2D arterial cross-section flow system.

Layers, bottom up: `model` (pressure law, characteristic fields, stiffness
profiles), `riemann` (exact two-state solver), `grp` (interface
time-derivative resolution), `grid1d`/`grid2d` (second-order drivers),
`cases`/`metrics` (benchmark registry and convergence studies), `cli`.
"""

from .cases import (
    CaseSpec,
    build_grid,
    build_grid2d,
    case_registry,
    fine_grid_reference,
    manufactured_fields,
    reference_evaluator,
    run_case,
    run_case2d,
)
from .grid1d import Grid1D, StepReport, cfl_dt, minmod_slope, write_snapshot
from .grid2d import (
    Grid2D,
    cfl_dt_2d,
    four_quadrant_init,
    strang_step,
    sweep_x,
    sweep_y,
    write_snapshot_2d,
)
from .grp import GrpInput, InterfaceRates, grp_interface, grp_rates_arrays
from .metrics import ErrorReport, convergence_study, error_norm
from .model import (
    ConstantProfile,
    LinearProfile,
    ModelParams,
    SineRampProfile,
    SinusoidalProfile,
    StiffnessProfile,
    pressure,
    wave_speed,
)
from .riemann import StarSolution, WaveKind, sample, solve_star

__version__ = "1.0.0"

__all__ = [
    "CaseSpec",
    "ConstantProfile",
    "ErrorReport",
    "Grid1D",
    "Grid2D",
    "GrpInput",
    "InterfaceRates",
    "LinearProfile",
    "ModelParams",
    "SineRampProfile",
    "SinusoidalProfile",
    "StarSolution",
    "StepReport",
    "StiffnessProfile",
    "WaveKind",
    "build_grid",
    "build_grid2d",
    "case_registry",
    "cfl_dt",
    "cfl_dt_2d",
    "convergence_study",
    "error_norm",
    "fine_grid_reference",
    "four_quadrant_init",
    "grp_interface",
    "grp_rates_arrays",
    "manufactured_fields",
    "minmod_slope",
    "pressure",
    "reference_evaluator",
    "run_case",
    "run_case2d",
    "sample",
    "solve_star",
    "strang_step",
    "sweep_x",
    "sweep_y",
    "wave_speed",
    "write_snapshot",
    "write_snapshot_2d",
]
