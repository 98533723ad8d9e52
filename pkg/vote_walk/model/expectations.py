"""
Closed-form expected one-step capital increments under both group rules.

Notation follows the model: for group i, sigma_i = sigma / sqrt(g_i),
mu_i = mu - t_i, F_i = F(mu_i / sigma_i), f_i = f(mu_i / sigma_i) and
Fbar_i = 1 - F_i. Group i supports a proposal when its average component is
at least t_i, which happens with probability F_i.

    unanimous rejection (G1 or G2):  M(d_i) = mu F_j + (mu F_i + sigma_i f_i) Fbar_j
    unanimous acceptance (G1 and G2): M(d_i) = (mu F_i + sigma_i f_i) F_j

with j = 3 - i. Everything is evaluated in this product form; no ratio
f_i / F_i is formed here.
"""

from __future__ import annotations

import math
from typing import Tuple

from ..gaussian import DomainError, std_cdf, std_pdf, std_sf
from .models import EnvironmentParams, ExpectationReport, GroupSpec, GroupTerms, VotingRule

__all__ = [
    "group_terms",
    "expected_increment",
    "expected_difference",
    "society_increment",
    "full_report",
]


def group_terms(env: EnvironmentParams, group: GroupSpec) -> GroupTerms:
    """
    Derived quantities of one group.

    Infinite thresholds are allowed: ``t = -inf`` gives a group that supports
    everything (F = 1), ``t = +inf`` one that supports nothing (F = 0).
    """
    sigma_i = env.sigma / math.sqrt(group.size)
    deficit = (env.mu - group.threshold) / sigma_i
    if deficit == math.inf:
        return GroupTerms(sigma_i, 1.0, 0.0, 0.0, deficit)
    if deficit == -math.inf:
        return GroupTerms(sigma_i, 0.0, 0.0, 1.0, deficit)
    return GroupTerms(sigma_i, std_cdf(deficit), std_pdf(deficit), std_sf(deficit), deficit)


def _pair(env: EnvironmentParams, g1: GroupSpec, g2: GroupSpec) -> Tuple[GroupTerms, GroupTerms]:
    return group_terms(env, g1), group_terms(env, g2)


def _check_which(which: int) -> int:
    if which not in (1, 2):
        raise DomainError(f"group index must be 1 or 2, got {which!r}")
    return which


def _increment(mu: float, own: GroupTerms, other: GroupTerms, rule: VotingRule) -> float:
    partial = mu * own.cdf + own.sigma * own.pdf
    if rule is VotingRule.UNANIMOUS_ACCEPTANCE:
        return partial * other.cdf
    return mu * other.cdf + partial * other.sf


def _difference(t1: GroupTerms, t2: GroupTerms, rule: VotingRule) -> float:
    if rule is VotingRule.UNANIMOUS_ACCEPTANCE:
        return t1.sigma * t1.pdf * t2.cdf - t2.sigma * t2.pdf * t1.cdf
    return t1.sigma * t1.pdf * t2.sf - t2.sigma * t2.pdf * t1.sf


def expected_increment(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2: GroupSpec,
    rule: VotingRule,
    which: int,
) -> float:
    """
    Expected one-step capital increment of a member of group ``which``.

    Args:
        env: Proposal-generating distribution
        g1: Group 1
        g2: Group 2
        rule: Voting rule in force
        which: 1 or 2

    Returns:
        M(d_which); rejected proposals count as a zero increment
    """
    which = _check_which(which)
    terms = _pair(env, g1, g2)
    own, other = terms[which - 1], terms[2 - which]
    return _increment(env.mu, own, other, VotingRule.parse(rule))


def expected_difference(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2: GroupSpec,
    rule: VotingRule,
) -> float:
    """Expected difference M(d1 - d2) in the closed form where mu cancels."""
    t1, t2 = _pair(env, g1, g2)
    return _difference(t1, t2, VotingRule.parse(rule))


def society_increment(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2: GroupSpec,
    rule: VotingRule,
) -> float:
    """Expected one-step increment of the whole society, g1 M(d1) + g2 M(d2)."""
    rule = VotingRule.parse(rule)
    t1, t2 = _pair(env, g1, g2)
    return g1.size * _increment(env.mu, t1, t2, rule) + g2.size * _increment(env.mu, t2, t1, rule)


def full_report(
    env: EnvironmentParams,
    g1: GroupSpec,
    g2: GroupSpec,
    rule: VotingRule,
) -> ExpectationReport:
    """Bundle both increments, their difference, the society total and the vote probabilities."""
    rule = VotingRule.parse(rule)
    t1, t2 = _pair(env, g1, g2)
    m1 = _increment(env.mu, t1, t2, rule)
    m2 = _increment(env.mu, t2, t1, rule)

    if rule is VotingRule.UNANIMOUS_ACCEPTANCE:
        accept_prob = t1.cdf * t2.cdf
    else:
        accept_prob = 1.0 - t1.sf * t2.sf

    return ExpectationReport(
        m1=m1,
        m2=m2,
        diff=_difference(t1, t2, rule),
        society=g1.size * m1 + g2.size * m2,
        support_prob=(t1.cdf, t2.cdf),
        accept_prob=accept_prob,
        rule=rule,
    )
