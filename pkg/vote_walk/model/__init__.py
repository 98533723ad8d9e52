"""
Two-group voting model.
Provides the value types and the closed-form expected increments.
"""

from ..gaussian import DomainError
from .models import (
    VotingRule,
    EnvironmentParams,
    GroupSpec,
    GroupTerms,
    ExpectationReport,
)
from .expectations import (
    group_terms,
    expected_increment,
    expected_difference,
    society_increment,
    full_report,
)

__all__ = [
    "DomainError",
    "VotingRule",
    "EnvironmentParams",
    "GroupSpec",
    "GroupTerms",
    "ExpectationReport",
    "group_terms",
    "expected_increment",
    "expected_difference",
    "society_increment",
    "full_report",
]
