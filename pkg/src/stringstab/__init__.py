"""Stability certification of an ODE coupled with a damped string equation.

The toolkit assembles a hierarchy of Lyapunov-based LMI conditions indexed
by a Legendre projection order N, decides their feasibility with a small
dense interior-point solver, and cross-validates every certificate by
finite-difference simulation and direct evaluation of the Lyapunov
functional.
"""

__version__ = "0.1.0"

from .analysis import (HierarchyReport, StabilityChart, certify,
                       hierarchy_check, min_speed, stability_chart)
from .legendre import (MAX_ORDER, LegendreBasis, bessel_bound,
                       build_block_matrices, ell_coefficient, legendre_eval,
                       project_grid)
from .lmi import (AffineLmiSystem, LmiBlocks, SystemDescription, assemble_psi,
                  boundary_reflection_radius, build_affine_system,
                  build_blocks, check_equilibrium)
from .lyapunov import (LyapunovSeries, check_decay,
                       check_projection_derivative, evaluate_V, evaluate_calV)
from .sdp import (Certificate, SolveReport, SolverOptions, export_sdpa,
                  read_sdpa, solve_feasibility, verify_certificate)
from .wavesim import (CompatibilityError, DivergenceError, FieldState,
                       InitialCondition, Trajectory, hnorm, init_state,
                       lemma1_gap, riemann_chi, simulate, step)

__all__ = [
    "AffineLmiSystem", "Certificate", "CompatibilityError", "DivergenceError",
    "FieldState", "HierarchyReport", "InitialCondition", "LegendreBasis",
    "LmiBlocks", "LyapunovSeries", "MAX_ORDER", "SolveReport",
    "SolverOptions", "StabilityChart", "SystemDescription", "Trajectory",
    "assemble_psi", "bessel_bound", "boundary_reflection_radius",
    "build_affine_system", "build_block_matrices", "build_blocks", "certify",
    "check_decay", "check_equilibrium", "check_projection_derivative",
    "ell_coefficient", "evaluate_V", "evaluate_calV", "export_sdpa", "hnorm",
    "hierarchy_check", "init_state", "legendre_eval", "lemma1_gap",
    "min_speed", "project_grid", "read_sdpa", "riemann_chi", "simulate",
    "solve_feasibility", "stability_chart", "step", "verify_certificate",
]
