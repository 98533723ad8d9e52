"""
Checks of simulated walks against the closed-form expectations.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence

from ..consts import DEFAULT_TOLERANCE_SIGMAS
from ..gaussian import truncated_mean_above
from ..model import ExpectationReport, full_report
from ..utils import logger
from .models import SimConfig, ValidationCheck, ValidationReport, WalkResult
from .walk import run_walk

__all__ = ["compare_to_report", "conditional_means", "validate_against_model"]

EXACT_MATCH_TOL = 1e-12


def _null_stderr(analytic: float, accept_prob: float, steps: int) -> float:
    """Spread of a mean over ``steps`` steps whose increments are nonzero with probability ``accept_prob``."""
    if accept_prob <= 0.0 or analytic == 0.0:
        return 0.0
    return abs(analytic) / math.sqrt(steps * accept_prob)


def _check(
    name: str,
    analytic: float,
    estimate: float,
    stderr: float,
    tolerance: float,
    *,
    fallback: float = 0.0,
) -> ValidationCheck:
    gap = abs(estimate - analytic)
    if not stderr > 0.0:
        # all-zero sample: fall back to the spread expected under the analytic model
        stderr = fallback
    if stderr > 0.0:
        z = (estimate - analytic) / stderr
        passed = abs(z) <= tolerance
    else:
        # degenerate sample (e.g. never accepted)
        z = 0.0 if gap <= EXACT_MATCH_TOL else math.copysign(math.inf, estimate - analytic)
        passed = gap <= EXACT_MATCH_TOL
    return ValidationCheck(name=name, analytic=analytic, estimate=estimate, stderr=stderr, z=z, passed=passed)


def compare_to_report(
    result: WalkResult,
    report: ExpectationReport,
    tolerance_sigmas: float = DEFAULT_TOLERANCE_SIGMAS,
    *,
    conditional: Optional[Sequence[float]] = None,
) -> ValidationReport:
    """
    Compare a walk summary with an analytic report.

    ``conditional`` optionally gives the analytic means of each group's
    increment over accepted steps it supported; groups whose simulated
    conditional sample is too small are skipped.

    A check whose simulated sample is all zeros (nothing accepted) is
    judged against the spread the analytic acceptance probability implies.
    """
    p, n = report.accept_prob, result.steps
    checks: List[ValidationCheck] = [
        _check("m1", report.m1, result.mean_inc[0], result.stderr[0], tolerance_sigmas,
               fallback=_null_stderr(report.m1, p, n)),
        _check("m2", report.m2, result.mean_inc[1], result.stderr[1], tolerance_sigmas,
               fallback=_null_stderr(report.m2, p, n)),
        _check("diff", report.diff, result.diff_mean, result.diff_stderr, tolerance_sigmas,
               fallback=_null_stderr(report.diff, p, n)),
        _check("accept_prob", p, result.accept_rate, result.accept_stderr, tolerance_sigmas,
               fallback=math.sqrt(max(p * (1.0 - p), 0.0) / n)),
    ]
    if conditional is not None:
        for index, analytic in enumerate(conditional):
            estimate = result.cond_mean[index]
            if math.isnan(estimate) or analytic is None or not math.isfinite(analytic):
                continue
            checks.append(
                _check(f"cond{index + 1}", analytic, estimate, result.cond_stderr[index], tolerance_sigmas)
            )

    warnings: List[str] = []
    for check in checks:
        if check.analytic != 0.0 and check.stderr >= abs(check.analytic):
            warnings.append(
                f"{check.name}: stderr {check.stderr:.3g} is not below |analytic| {abs(check.analytic):.3g}; "
                f"increase steps"
            )
    for message in warnings:
        logger.warning(f"Under-powered validation: {message}")

    outcome = ValidationReport(checks=tuple(checks), tolerance_sigmas=tolerance_sigmas, warnings=warnings)
    for check in outcome.failures:
        logger.warning(
            f"Validation failed for {check.name}: estimate {check.estimate:.6g} vs analytic "
            f"{check.analytic:.6g} (z={check.z:.2f}, tolerance {tolerance_sigmas:g})"
        )
    return outcome


def conditional_means(cfg: SimConfig) -> List[Optional[float]]:
    """Analytic mean increment of each group over accepted steps it supports."""
    means: List[Optional[float]] = []
    for group, sigma in zip(cfg.groups, cfg.group_sigmas):
        if group.threshold == math.inf:
            means.append(None)
        else:
            means.append(truncated_mean_above(cfg.env.mu, sigma, group.threshold))
    return means


def validate_against_model(
    cfg: SimConfig,
    tolerance_sigmas: float = DEFAULT_TOLERANCE_SIGMAS,
    *,
    result: Optional[WalkResult] = None,
) -> ValidationReport:
    """Simulate ``cfg`` (unless ``result`` is given) and check it against ``full_report``."""
    g1, g2 = cfg.groups
    report = full_report(cfg.env, g1, g2, cfg.rule)
    if result is None:
        result = run_walk(cfg)
    return compare_to_report(result, report, tolerance_sigmas, conditional=conditional_means(cfg))
