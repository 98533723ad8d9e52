"""
Numerical solution of the society-optimal threshold system.

Jointly optimal thresholds satisfy t1 = R1(t2), t2 = R2(t1) where each
right-hand side is the other group's society-optimal response:

    unanimous acceptance:  R1(t2) = -(g2/g1) (mu + sigma_2 f_2 / F_2)
    unanimous rejection:   R1(t2) = -(g2/g1) (mu - sigma_2 f_2 / Fbar_2)

and symmetrically for R2. Each response is decreasing with slope of
magnitude below g_j / g_i, so R1(R2(t1)) is increasing with slope in (0, 1)
and t1 - R1(R2(t1)) has exactly one root.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, List, Optional, Tuple

from scipy import optimize

from ..consts import (
    BRACKET_MAX_EXPANSIONS,
    SOLUTION_MERGE_TOL,
    SOLVER_DAMPING,
    SOLVER_MAX_ITERATIONS,
    SOLVER_RESIDUAL_TOL,
    SOLVER_STEP_TOL,
    Y0_BRACKET,
)
from ..gaussian import DomainError, mills_ratio, truncated_mean_above, truncated_mean_below
from ..model import EnvironmentParams, GroupSpec, VotingRule, society_increment
from ..utils import logger
from .models import SystemSolution

__all__ = [
    "ConvergenceError",
    "solve_y0",
    "system_residual",
    "solve_society_system",
    "scan_society_fixed_points",
]

Response = Callable[[float], float]


class ConvergenceError(RuntimeError):
    """Raised when the threshold system cannot be solved to tolerance"""

    def __init__(self, message: str, solution: Optional[SystemSolution] = None):
        super().__init__(message)
        self.solution = solution

    @property
    def residual(self) -> float:
        return self.solution.residual if self.solution is not None else math.inf


def solve_y0() -> float:
    """Unique root of y = f(y)/F(y); about 0.506."""
    return float(
        optimize.brentq(lambda y: y - mills_ratio(y), *Y0_BRACKET, xtol=1e-15, maxiter=200)
    )


def _responses(
    env: EnvironmentParams,
    g1_size: int,
    g2_size: int,
    rule: VotingRule,
) -> Tuple[Response, Response]:
    sigma_1 = env.sigma / math.sqrt(g1_size)
    sigma_2 = env.sigma / math.sqrt(g2_size)
    anchor = truncated_mean_above if rule is VotingRule.UNANIMOUS_ACCEPTANCE else truncated_mean_below

    def r1(t2: float) -> float:
        return -(g2_size / g1_size) * anchor(env.mu, sigma_2, t2)

    def r2(t1: float) -> float:
        return -(g1_size / g2_size) * anchor(env.mu, sigma_1, t1)

    return r1, r2


def system_residual(
    env: EnvironmentParams,
    g1_size: int,
    g2_size: int,
    rule: VotingRule,
    t1: float,
    t2: float,
) -> float:
    """Largest coordinate-wise defect of the system at (t1, t2)."""
    r1, r2 = _responses(env, g1_size, g2_size, VotingRule.parse(rule))
    return max(abs(t1 - r1(t2)), abs(t2 - r2(t1)))


def _bracket_increasing(func: Response, x0: float, step: float) -> Tuple[float, float]:
    lo, hi = x0 - step, x0 + step
    f_lo, f_hi = func(lo), func(hi)
    for _ in range(BRACKET_MAX_EXPANSIONS):
        if f_lo <= 0.0 <= f_hi:
            return lo, hi
        step *= 2.0
        if f_lo > 0.0:
            lo -= step
            f_lo = func(lo)
        if f_hi < 0.0:
            hi += step
            f_hi = func(hi)
    raise ConvergenceError(f"could not bracket a root around {x0!r}")


def _brent(func: Response, x0: float, step: float) -> Tuple[float, int]:
    lo, hi = _bracket_increasing(func, x0, step)
    root, info = optimize.brentq(
        func, lo, hi, xtol=1e-14, maxiter=SOLVER_MAX_ITERATIONS, full_output=True, disp=False
    )
    if not info.converged:
        raise ConvergenceError(f"brentq stopped: {info.flag}")
    return float(root), int(info.iterations)


def _damped_iteration(
    r1: Response,
    r2: Response,
    start: Tuple[float, float],
    max_iterations: int,
) -> Tuple[float, float, int, float, bool]:
    t1, t2 = start
    best = (t1, t2, 0, math.inf)
    for iteration in range(1, max_iterations + 1):
        new_t1 = (1.0 - SOLVER_DAMPING) * t1 + SOLVER_DAMPING * r1(t2)
        new_t2 = (1.0 - SOLVER_DAMPING) * t2 + SOLVER_DAMPING * r2(t1)
        step = max(abs(new_t1 - t1), abs(new_t2 - t2))
        t1, t2 = new_t1, new_t2
        residual = max(abs(t1 - r1(t2)), abs(t2 - r2(t1)))
        if residual < best[3]:
            best = (t1, t2, iteration, residual)
        if step <= SOLVER_STEP_TOL and residual <= SOLVER_RESIDUAL_TOL:
            return t1, t2, iteration, residual, True
    return best[0], best[1], best[2], best[3], False


def _solution(
    env: EnvironmentParams,
    g1_size: int,
    g2_size: int,
    rule: VotingRule,
    t1: float,
    t2: float,
    iterations: int,
    method: str,
) -> SystemSolution:
    residual = system_residual(env, g1_size, g2_size, rule, t1, t2)
    return SystemSolution(
        t1=t1,
        t2=t2,
        society_value=society_increment(env, GroupSpec(g1_size, t1), GroupSpec(g2_size, t2), rule),
        iterations=iterations,
        residual=residual,
        method=method,
        converged=residual <= SOLVER_RESIDUAL_TOL,
    )


def _composed_bisection(
    env: EnvironmentParams,
    g1_size: int,
    g2_size: int,
    rule: VotingRule,
    r1: Response,
    r2: Response,
    x0: float,
) -> SystemSolution:
    step = max(1.0, env.sigma / math.sqrt(min(g1_size, g2_size)))
    t1, iterations = _brent(lambda t: t - r1(r2(t)), x0, step)
    return _solution(env, g1_size, g2_size, rule, t1, r2(t1), iterations, "composed-bisection")


def _check_sizes(g1_size: int, g2_size: int) -> None:
    for name, size in (("g1_size", g1_size), ("g2_size", g2_size)):
        if isinstance(size, bool) or int(size) != size or size < 1:
            raise DomainError(f"{name} must be a positive integer, got {size!r}")


def solve_society_system(
    env: EnvironmentParams,
    g1_size: int,
    g2_size: int,
    rule: VotingRule,
    *,
    start: Optional[Tuple[float, float]] = None,
    max_iterations: int = SOLVER_MAX_ITERATIONS,
) -> SystemSolution:
    """
    Claim thresholds (t1, t2) that jointly maximize the society total.

    Equal group sizes reduce the system to one scalar equation solved by a
    bracketed root search. Otherwise a damped fixed-point iteration runs from
    ``start`` (default t1 = t2 = -mu) and, if it stalls, the composed scalar
    map is solved by a bracketed root search instead.

    Raises:
        ConvergenceError: If no candidate meets the residual tolerance; the
            best candidate is attached as ``.solution``.
    """
    rule = VotingRule.parse(rule)
    _check_sizes(g1_size, g2_size)
    r1, r2 = _responses(env, g1_size, g2_size, rule)
    x0 = -env.mu

    if g1_size == g2_size and start is None:
        step = max(1.0, env.sigma / math.sqrt(g1_size))
        t, iterations = _brent(lambda x: x - r2(x), x0, step)
        solution = _solution(env, g1_size, g2_size, rule, t, t, iterations, "bisection")
    else:
        begin = start if start is not None else (x0, x0)
        t1, t2, iterations, residual, converged = _damped_iteration(r1, r2, begin, max_iterations)
        if converged:
            solution = _solution(env, g1_size, g2_size, rule, t1, t2, iterations, "fixed-point")
        else:
            logger.info(
                f"Fixed-point iteration stalled after {iterations} steps "
                f"(residual {residual:.3g}); switching to composed bisection"
            )
            solution = _composed_bisection(env, g1_size, g2_size, rule, r1, r2, t1)

    if not solution.converged:
        logger.warning(
            f"Society system not solved for mu={env.mu}, sigma={env.sigma}, "
            f"g=({g1_size}, {g2_size}), rule={rule.value}: residual {solution.residual:.3g}"
        )
        raise ConvergenceError(
            f"residual {solution.residual:.3g} exceeds {SOLVER_RESIDUAL_TOL:g}",
            solution=solution,
        )
    return solution


def scan_society_fixed_points(
    env: EnvironmentParams,
    g1_size: int,
    g2_size: int,
    rule: VotingRule,
    starts: Iterable[Tuple[float, float]],
) -> List[SystemSolution]:
    """Solve the system from several starting points and return the distinct solutions."""
    found: List[SystemSolution] = []
    for start in starts:
        try:
            solution = solve_society_system(env, g1_size, g2_size, rule, start=start)
        except ConvergenceError as exc:
            logger.warning(f"Start {start} did not converge: {exc}")
            continue
        duplicate = any(
            abs(solution.t1 - other.t1) <= SOLUTION_MERGE_TOL
            and abs(solution.t2 - other.t2) <= SOLUTION_MERGE_TOL
            for other in found
        )
        if not duplicate:
            found.append(solution)
    return found
