"""
Monte-Carlo simulation models.
Defines the simulation configuration, per-batch step arrays, walk summaries
and validation reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Tuple

import numpy as np

from ..consts import DEFAULT_CHUNK_SIZE, DEFAULT_REPLICATIONS
from ..gaussian import DomainError
from ..model import EnvironmentParams, GroupSpec, VotingRule


class SimMode(str, Enum):
    """How proposals are drawn"""
    FULL_VECTOR = "full"
    GROUP_MEAN = "mean"

    @classmethod
    def parse(cls, token: "str | SimMode") -> "SimMode":
        if isinstance(token, SimMode):
            return token
        lowered = str(token).strip().lower()
        for mode in cls:
            if lowered in (mode.value, mode.name.lower()):
                return mode
        raise DomainError(f"Unknown simulation mode: {token!r} (expected 'full' or 'mean')")


def _positive_int(name: str, value: int) -> None:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class SimConfig:
    """Configuration of one (possibly replicated) voting-controlled walk"""
    env: EnvironmentParams
    groups: Tuple[GroupSpec, GroupSpec]
    rule: VotingRule
    steps: int
    seed: int
    mode: SimMode = SimMode.GROUP_MEAN
    replications: int = DEFAULT_REPLICATIONS
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self) -> None:
        if len(self.groups) != 2:
            raise DomainError("exactly two groups are simulated")
        _positive_int("steps", self.steps)
        _positive_int("replications", self.replications)
        _positive_int("chunk_size", self.chunk_size)
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "rule", VotingRule.parse(self.rule))
        object.__setattr__(self, "mode", SimMode.parse(self.mode))

    @property
    def group_sigmas(self) -> Tuple[float, float]:
        return tuple(self.env.sigma / math.sqrt(g.size) for g in self.groups)  # type: ignore[return-value]

    def to_dict(self) -> Dict[str, Any]:
        g1, g2 = self.groups
        return {
            "mu": self.env.mu,
            "sigma": self.env.sigma,
            "g1": g1.size,
            "g2": g2.size,
            "t1": g1.threshold,
            "t2": g2.threshold,
            "rule": self.rule.value,
            "steps": self.steps,
            "seed": self.seed,
            "mode": self.mode.value,
            "replications": self.replications,
        }


class StepBatch(NamedTuple):
    """Outcomes of consecutive steps; arrays share one length"""
    accepted: np.ndarray
    supported: np.ndarray
    inc1: np.ndarray
    inc2: np.ndarray
    average1: np.ndarray
    average2: np.ndarray


@dataclass(frozen=True)
class WalkResult:
    """Summary of a simulated walk"""
    steps: int
    mean_inc: Tuple[float, float]
    stderr: Tuple[float, float]
    accept_rate: float
    accept_stderr: float
    diff_mean: float
    diff_stderr: float
    society_mean: float
    society_stderr: float
    final_capital: Tuple[float, float]
    cond_mean: Tuple[float, float] = (math.nan, math.nan)
    cond_stderr: Tuple[float, float] = (math.nan, math.nan)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "steps": self.steps,
            "mean_inc": list(self.mean_inc),
            "stderr": list(self.stderr),
            "accept_rate": self.accept_rate,
            "accept_stderr": self.accept_stderr,
            "diff_mean": self.diff_mean,
            "diff_stderr": self.diff_stderr,
            "society_mean": self.society_mean,
            "society_stderr": self.society_stderr,
            "final_capital": list(self.final_capital),
            "cond_mean": list(self.cond_mean),
            "cond_stderr": list(self.cond_stderr),
        }


@dataclass(frozen=True)
class ValidationCheck:
    """One simulated quantity compared against its closed form"""
    name: str
    analytic: float
    estimate: float
    stderr: float
    z: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "analytic": self.analytic,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "z": self.z,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a walk against the analytic model"""
    checks: Tuple[ValidationCheck, ...]
    tolerance_sigmas: float
    warnings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[ValidationCheck]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> ValidationCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "tolerance_sigmas": self.tolerance_sigmas,
            "checks": [check.to_dict() for check in self.checks],
            "warnings": list(self.warnings),
        }
