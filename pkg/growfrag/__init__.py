"""
growfrag: explicit solution of a growth-fragmentation equation with a
constant dislocation kernel, and tools to verify it numerically.
"""

__version__ = "0.1.0"

# Import key functionality to make it available at the top level
from growfrag.model import ProblemParams, make_params, phi, existence_condition
from growfrag.closedform import (
    AtomComponent,
    SolutionSnapshot,
    atom_state,
    u_regular,
    omega,
    moment,
    blowup_constant,
    scaled_moment,
    profile_limit,
)
from growfrag.grid import RadialGrid, GridFunction
from growfrag.mellin import ContourSpec, forward_mellin, inverse_mellin_regular
from growfrag.pdesolver import solve_regular, weak_residual
from growfrag.specfun import hyp2f1, gamma
from growfrag.config import RunConfig, load_config

__all__ = [
    "ProblemParams",
    "make_params",
    "phi",
    "existence_condition",
    "AtomComponent",
    "SolutionSnapshot",
    "atom_state",
    "u_regular",
    "omega",
    "moment",
    "blowup_constant",
    "scaled_moment",
    "profile_limit",
    "RadialGrid",
    "GridFunction",
    "ContourSpec",
    "forward_mellin",
    "inverse_mellin_regular",
    "solve_regular",
    "weak_residual",
    "hyp2f1",
    "gamma",
    "RunConfig",
    "load_config",
]
