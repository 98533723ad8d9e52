"""
Result types for claim-threshold optimization.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict

from ..gaussian import DomainError
from ..model import VotingRule


class Objective(str, Enum):
    """Quantity group 2 maximizes through its claim threshold"""
    ADVANTAGE = "advantage"
    SOCIETY = "society"

    @classmethod
    def parse(cls, token: "str | Objective") -> "Objective":
        if isinstance(token, Objective):
            return token
        lowered = str(token).strip().lower()
        for objective in cls:
            if lowered in (objective.value, objective.name.lower()):
                return objective
        raise DomainError(
            f"Unknown objective: {token!r} (expected 'advantage' or 'society')"
        )


@dataclass(frozen=True)
class OptimumResult:
    """Optimal group-2 claim threshold for a fixed group 1"""
    threshold: float
    objective_value: float
    objective: Objective
    rule: VotingRule

    def to_dict(self) -> Dict[str, Any]:
        return {
            "threshold": self.threshold,
            "objective_value": self.objective_value,
            "objective": self.objective.value,
            "rule": self.rule.value,
        }


@dataclass(frozen=True)
class SystemSolution:
    """Pair of claim thresholds jointly maximizing the society total"""
    t1: float
    t2: float
    society_value: float
    iterations: int
    residual: float
    method: str
    converged: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t1": self.t1,
            "t2": self.t2,
            "society_value": self.society_value,
            "iterations": self.iterations,
            "residual": self.residual,
            "method": self.method,
            "converged": self.converged,
        }
