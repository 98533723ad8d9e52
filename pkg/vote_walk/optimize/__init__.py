"""
Claim-threshold optimization.
Provides the closed-form group-2 optima, the universal root y0 and the
society-optimal threshold system solver.
"""

from .models import Objective, OptimumResult, SystemSolution
from .thresholds import (
    claim_anchor,
    evaluate_objective,
    objective_derivative,
    stationarity_check,
    t2_plus,
    t2_society,
    optimum,
    t2_plus_from_samples,
)
from .system import (
    ConvergenceError,
    solve_y0,
    system_residual,
    solve_society_system,
    scan_society_fixed_points,
)

__all__ = [
    "Objective",
    "OptimumResult",
    "SystemSolution",
    "claim_anchor",
    "evaluate_objective",
    "objective_derivative",
    "stationarity_check",
    "t2_plus",
    "t2_society",
    "optimum",
    "t2_plus_from_samples",
    "ConvergenceError",
    "solve_y0",
    "system_residual",
    "solve_society_system",
    "scan_society_fixed_points",
]
