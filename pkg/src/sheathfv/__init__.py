"""sheathfv: finite-volume simulation of the 1D two-fluid plasma-sheath transition.

Isothermal electron/ion Euler equations coupled to the Poisson equation
between two grounded absorbing walls, with first-order Lie, modified Lie
(controlled numerical diffusion), and Strang/MUSCL-Hancock time stepping.
"""

from .config import PRESET_NAMES, RunConfig, load_preset, parse_config
from .diagnostics import Diagnostics, ambipolarity_error, compute_diagnostics
from .errors import (
    ConfigError,
    DegenerateBoundaryWarning,
    DegenerateStateError,
    InstabilityError,
    ParameterDomainError,
)
from .integrators import (
    RunResult,
    SchemeConfig,
    TimeStepBudget,
    choose_dt,
    run,
    step,
    step_lie_classical,
    step_lie_modified,
    step_strang,
)
from .mesh import Mesh, PlasmaState, SpeciesState, init_uniform, mirror_state
from .params import (
    NondimParams,
    PhysicalSetup,
    TheoreticalTargets,
    derive_nondim,
    theoretical_targets,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Diagnostics",
    "DegenerateBoundaryWarning",
    "DegenerateStateError",
    "InstabilityError",
    "Mesh",
    "NondimParams",
    "ParameterDomainError",
    "PhysicalSetup",
    "PlasmaState",
    "PRESET_NAMES",
    "RunConfig",
    "RunResult",
    "SchemeConfig",
    "SpeciesState",
    "TheoreticalTargets",
    "TimeStepBudget",
    "ambipolarity_error",
    "choose_dt",
    "compute_diagnostics",
    "derive_nondim",
    "init_uniform",
    "load_preset",
    "mirror_state",
    "parse_config",
    "run",
    "step",
    "step_lie_classical",
    "step_lie_modified",
    "step_strang",
    "theoretical_targets",
]
