"""curvmhd: a 2D ideal-MHD solver on curvilinear meshes.

High-order finite-difference WENO scheme in alternative flux form with
HLL-family Riemann solvers, unstaggered constrained transport through a
scalar potential, a positivity-preserving flux limiter, and conducting-
wall compatibility boundary conditions.  Ships a benchmark registry, a
convergence harness, binary field dumps, and a batch CLI.
"""

from .assembly import SolverConfig
from .gridgen import Grid, Mapping, identity_mapping
from .harness import (RunConfig, RunResult, convergence, run,
                      solution_errors)
from .problems import (ProblemSetup, build_grid, get_problem,
                       register_problems)
from .states import (GAMMA_DEFAULT, conserved_from_primitive,
                     primitive_from_conserved)

__version__ = "1.0.0"

__all__ = [
    "GAMMA_DEFAULT", "Grid", "Mapping", "ProblemSetup", "RunConfig",
    "RunResult", "SolverConfig", "build_grid", "conserved_from_primitive",
    "convergence", "get_problem", "identity_mapping",
    "primitive_from_conserved", "register_problems", "run",
    "solution_errors", "__version__",
]
