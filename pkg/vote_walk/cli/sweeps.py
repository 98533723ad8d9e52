"""
Parameter sweeps over t2 and mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Tuple

import numpy as np

from ..gaussian import DomainError
from ..model import EnvironmentParams, GroupSpec, VotingRule, full_report
from ..optimize import ConvergenceError, solve_society_system
from ..utils import logger

__all__ = [
    "SweepError",
    "SweepVariable",
    "SweepSpec",
    "T2_COLUMNS",
    "MU_COLUMNS",
    "t2_sweep_rows",
    "mu_sweep_rows",
]

T2_COLUMNS = ("t2", "m1", "m2", "diff", "society", "accept_prob")
MU_COLUMNS = ("mu", "t1", "t2", "society_value", "residual", "converged")


class SweepError(DomainError):
    """Raised for an invalid sweep grid"""


class SweepVariable(str, Enum):
    T2 = "t2"
    MU = "mu"


@dataclass(frozen=True)
class SweepSpec:
    """Uniform grid of ``points`` values from ``start`` to ``stop`` inclusive"""
    variable: SweepVariable
    start: float
    stop: float
    points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise SweepError(f"sweep bounds must be finite, got [{self.start}, {self.stop}]")
        if not self.start < self.stop:
            raise SweepError(f"sweep start {self.start} must be below stop {self.stop}")
        if isinstance(self.points, bool) or int(self.points) != self.points or self.points < 2:
            raise SweepError(f"sweep needs at least 2 points, got {self.points!r}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


def t2_sweep_rows(
    spec: SweepSpec,
    env: EnvironmentParams,
    g1: GroupSpec,
    g2: GroupSpec,
    rule: VotingRule,
) -> Iterator[Tuple[float, ...]]:
    """Analytic report at each group-2 threshold of the grid."""
    for t2 in spec.grid():
        t2 = float(t2)
        report = full_report(env, g1, g2.with_threshold(t2), rule)
        yield (t2, report.m1, report.m2, report.diff, report.society, report.accept_prob)


def mu_sweep_rows(
    spec: SweepSpec,
    sigma: float,
    g1_size: int,
    g2_size: int,
    rule: VotingRule,
) -> Iterator[Tuple[float, float, float, float, float, bool]]:
    """Society-optimal thresholds at each environment mean of the grid.

    Rows that fail to converge carry the best candidate and ``converged=False``.
    """
    for mu in spec.grid():
        mu = float(mu)
        env = EnvironmentParams(mu, sigma)
        try:
            solution = solve_society_system(env, g1_size, g2_size, rule)
        except ConvergenceError as exc:
            logger.warning(f"Sweep point mu={mu:g} did not converge: {exc}")
            if exc.solution is None:
                yield (mu, math.nan, math.nan, math.nan, math.inf, False)
                continue
            solution = exc.solution
        yield (mu, solution.t1, solution.t2, solution.society_value, solution.residual, solution.converged)
