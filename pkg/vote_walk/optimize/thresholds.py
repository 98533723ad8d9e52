"""
Closed-form optimal claim thresholds of group 2.

For a fixed group 1 both optima are expressed through one anchor value:
the mean group-1 average increment over the proposals group 1 supports
(unanimous acceptance) or rejects (unanimous rejection). The advantage
optimum equals the anchor and does not depend on the size of group 2; the
society optimum is the anchor scaled by -g1/g2.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..consts import STATIONARITY_REL_STEP
from ..gaussian import DomainError, truncated_mean_above, truncated_mean_below
from ..model import (
    EnvironmentParams,
    GroupSpec,
    VotingRule,
    expected_difference,
    group_terms,
    society_increment,
)
from .models import Objective, OptimumResult

__all__ = [
    "claim_anchor",
    "evaluate_objective",
    "objective_derivative",
    "stationarity_check",
    "t2_plus",
    "t2_society",
    "optimum",
    "t2_plus_from_samples",
]


def claim_anchor(env: EnvironmentParams, g1: GroupSpec, rule: VotingRule) -> float:
    """mu + sigma_1 f_1 / F_1 under unanimous acceptance, mu - sigma_1 f_1 / Fbar_1 otherwise."""
    sigma_1 = env.sigma / math.sqrt(g1.size)
    if VotingRule.parse(rule) is VotingRule.UNANIMOUS_ACCEPTANCE:
        return truncated_mean_above(env.mu, sigma_1, g1.threshold)
    return truncated_mean_below(env.mu, sigma_1, g1.threshold)


def evaluate_objective(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2: GroupSpec,
    rule: VotingRule,
    objective: Objective,
) -> float:
    """Value of ``objective``: M(d2 - d1) for the advantage, g1 M(d1) + g2 M(d2) for the society."""
    if Objective.parse(objective) is Objective.ADVANTAGE:
        return -expected_difference(env, g1, g2, rule)
    return society_increment(env, g1, g2, rule)


def objective_derivative(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2: GroupSpec,
    rule: VotingRule,
    objective: Objective,
) -> float:
    """
    Analytic derivative of the objective with respect to t2.

    Every case has the form (f_2 / sigma_2) * L(t2) with L linear and
    decreasing in t2, so the single zero of L is the global maximum.
    """
    rule = VotingRule.parse(rule)
    objective = Objective.parse(objective)
    if not math.isfinite(g2.threshold):
        return 0.0
    one, two = group_terms(env, g1), group_terms(env, g2)

    mu, t2 = env.mu, g2.threshold
    g1_size, g2_size = g1.size, g2.size
    if objective is Objective.ADVANTAGE:
        if rule is VotingRule.UNANIMOUS_ACCEPTANCE:
            linear = one.sigma * one.pdf + one.cdf * (mu - t2)
        else:
            linear = one.sf * (mu - t2) - one.sigma * one.pdf
    elif rule is VotingRule.UNANIMOUS_ACCEPTANCE:
        linear = -g2_size * one.cdf * t2 - g1_size * mu * one.cdf - g1_size * one.sigma * one.pdf
    else:
        linear = -g2_size * one.sf * t2 - g1_size * mu * one.sf + g1_size * one.sigma * one.pdf

    return two.pdf / two.sigma * linear


def stationarity_check(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2: GroupSpec,
    rule: VotingRule,
    objective: Objective,
    t2: float,
) -> float:
    """Central finite difference of the objective in t2 at ``t2`` (g2.threshold is ignored)."""
    h = STATIONARITY_REL_STEP * max(1.0, abs(t2))
    upper = evaluate_objective(env, g1, g2.with_threshold(t2 + h), rule, objective)
    lower = evaluate_objective(env, g1, g2.with_threshold(t2 - h), rule, objective)
    return (upper - lower) / (2.0 * h)


def _check_size(size: int) -> int:
    if isinstance(size, bool) or int(size) != size or size < 1:
        raise DomainError(f"group size must be a positive integer, got {size!r}")
    return int(size)


def _optimum(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2_size: int,
    rule: VotingRule,
    objective: Objective,
    threshold: float,
) -> OptimumResult:
    g2 = GroupSpec(g2_size, threshold)
    return OptimumResult(
        threshold=threshold,
        objective_value=evaluate_objective(env, g1, g2, rule, objective),
        objective=objective,
        rule=rule,
    )


def t2_plus(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2_size: int,
    rule: VotingRule,
) -> OptimumResult:
    """
    Group-2 threshold maximizing its expected advantage M(d2 - d1) over group 1.

    Args:
        env: Proposal-generating distribution
        g1: Group 1 with its fixed claim threshold
        g2_size: Size of group 2 (does not affect the threshold)
        rule: Voting rule in force

    Returns:
        OptimumResult carrying the threshold and the advantage attained there
    """
    rule = VotingRule.parse(rule)
    _check_size(g2_size)
    return _optimum(env, g1, g2_size, rule, Objective.ADVANTAGE, claim_anchor(env, g1, rule))


def t2_society(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2_size: int,
    rule: VotingRule,
) -> OptimumResult:
    """Group-2 threshold maximizing the society total; always -(g1/g2) times the advantage optimum."""
    rule = VotingRule.parse(rule)
    _check_size(g2_size)
    threshold = -(g1.size / g2_size) * claim_anchor(env, g1, rule)
    return _optimum(env, g1, g2_size, rule, Objective.SOCIETY, threshold)


def optimum(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2_size: int,
    rule: VotingRule,
    objective: Objective,
) -> OptimumResult:
    if Objective.parse(objective) is Objective.ADVANTAGE:
        return t2_plus(env, g1, g2_size, rule)
    return t2_society(env, g1, g2_size, rule)


def t2_plus_from_samples(
    group1_averages: Sequence[float],
    t1: float,
    rule: VotingRule,
) -> float:
    """
    Estimate the advantage-optimal threshold from observed group-1 averages.

    Under unanimous acceptance this is the mean of the averages group 1
    supported (at least ``t1``); under unanimous rejection, the mean of
    those it did not support.
    """
    values = np.asarray(group1_averages, dtype=float)
    if VotingRule.parse(rule) is VotingRule.UNANIMOUS_ACCEPTANCE:
        selected = values[values >= t1]
    else:
        selected = values[values < t1]
    if selected.size == 0:
        raise DomainError("no observed proposals on the relevant side of t1")
    return float(selected.mean())
