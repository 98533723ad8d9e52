"""
Value types of the two-group voting model.
Defines the environment, group and voting-rule types plus the expectation report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, NamedTuple, Tuple

from ..gaussian import DomainError


class VotingRule(str, Enum):
    """Group voting procedure"""
    UNANIMOUS_ACCEPTANCE = "and"
    UNANIMOUS_REJECTION = "or"

    @classmethod
    def parse(cls, token: "str | VotingRule") -> "VotingRule":
        """Accept ``and``/``or`` or the long enum names (case-insensitive)."""
        if isinstance(token, VotingRule):
            return token
        lowered = str(token).strip().lower()
        for rule in cls:
            if lowered in (rule.value, rule.name.lower()):
                return rule
        raise DomainError(f"Unknown voting rule: {token!r} (expected 'and' or 'or')")


@dataclass(frozen=True)
class EnvironmentParams:
    """Parameters of the N(mu, sigma^2) law generating proposal components"""
    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite, got {self.mu!r}")
        if not math.isfinite(self.sigma) or self.sigma <= 0.0:
            raise DomainError(f"sigma must be positive and finite, got {self.sigma!r}")

    def to_dict(self) -> Dict[str, Any]:
        return {"mu": self.mu, "sigma": self.sigma}


@dataclass(frozen=True)
class GroupSpec:
    """A cohesive group: its size and its claim threshold"""
    size: int
    threshold: float

    def __post_init__(self) -> None:
        if isinstance(self.size, bool) or int(self.size) != self.size or self.size < 1:
            raise DomainError(f"group size must be a positive integer, got {self.size!r}")
        if math.isnan(self.threshold):
            raise DomainError("claim threshold must not be NaN")

    def with_threshold(self, threshold: float) -> "GroupSpec":
        return GroupSpec(self.size, threshold)

    def to_dict(self) -> Dict[str, Any]:
        return {"size": self.size, "threshold": self.threshold}


class GroupTerms(NamedTuple):
    """Derived per-group quantities: sigma_i, F_i, f_i, 1 - F_i and mu_i / sigma_i"""
    sigma: float
    cdf: float
    pdf: float
    sf: float
    deficit: float


@dataclass(frozen=True)
class ExpectationReport:
    """Expected one-step increments of both groups and of the society"""
    m1: float
    m2: float
    diff: float
    society: float
    support_prob: Tuple[float, float]
    accept_prob: float
    rule: VotingRule

    @property
    def advantage(self) -> float:
        """Expected advantage of a group-2 member over a group-1 member."""
        return -self.diff

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule.value,
            "m1": self.m1,
            "m2": self.m2,
            "diff": self.diff,
            "society": self.society,
            "support_prob": list(self.support_prob),
            "accept_prob": self.accept_prob,
        }
