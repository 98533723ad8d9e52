"""
Monte-Carlo simulation of the voting-controlled capital walk.
"""

from .models import SimMode, SimConfig, StepBatch, WalkResult, ValidationCheck, ValidationReport
from .moments import RunningMoments
from .rng import stream, streams, resolve_thread_count
from .walk import simulate_step, iter_walk_batches, run_walk, run_replications, trajectory
from .validate import compare_to_report, conditional_means, validate_against_model

__all__ = [
    "SimMode",
    "SimConfig",
    "StepBatch",
    "WalkResult",
    "ValidationCheck",
    "ValidationReport",
    "RunningMoments",
    "stream",
    "streams",
    "resolve_thread_count",
    "simulate_step",
    "iter_walk_batches",
    "run_walk",
    "run_replications",
    "trajectory",
    "compare_to_report",
    "conditional_means",
    "validate_against_model",
]
