"""
Capital random walk controlled by two voting groups.

Each step draws a proposal, lets each group support it iff its average
increment is at least its claim threshold, and applies the rule. Rejected
proposals count as steps with zero increment.

Draw order is fixed per mode so that batching never changes results:

- GroupMean: two standard normals per step (group 1, group 2);
- FullVector: ``g1 + g2`` standard normals per step, group 1 first.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..consts import MAX_DRAWS_PER_CHUNK
from ..model import VotingRule
from ..utils import logger
from .models import SimConfig, SimMode, StepBatch, WalkResult
from .moments import RunningMoments
from .rng import resolve_thread_count, stream

__all__ = [
    "simulate_step",
    "iter_walk_batches",
    "run_walk",
    "run_replications",
    "trajectory",
]


def _decide(cfg: SimConfig, average1, average2):
    g1, g2 = cfg.groups
    support1 = average1 >= g1.threshold
    support2 = average2 >= g2.threshold
    if cfg.rule is VotingRule.UNANIMOUS_ACCEPTANCE:
        accepted = support1 & support2
    else:
        accepted = support1 | support2
    return support1, support2, accepted


def simulate_step(rng: np.random.Generator, cfg: SimConfig) -> Tuple[bool, float, float]:
    """Draw and vote on one proposal; returns (accepted, inc1, inc2)."""
    g1, g2 = cfg.groups
    mu = cfg.env.mu
    if cfg.mode is SimMode.GROUP_MEAN:
        z = rng.standard_normal(2)
        sigma_1, sigma_2 = cfg.group_sigmas
        average1 = mu + sigma_1 * z[0]
        average2 = mu + sigma_2 * z[1]
    else:
        x = mu + cfg.env.sigma * rng.standard_normal(g1.size + g2.size)
        average1 = float(np.mean(x[: g1.size]))
        average2 = float(np.mean(x[g1.size:]))
    _, _, accepted = _decide(cfg, average1, average2)
    accepted = bool(accepted)
    if not accepted:
        return False, 0.0, 0.0
    return True, float(average1), float(average2)


def _rows_per_chunk(cfg: SimConfig) -> int:
    if cfg.mode is SimMode.GROUP_MEAN:
        return cfg.chunk_size
    width = cfg.groups[0].size + cfg.groups[1].size
    return max(1, min(cfg.chunk_size, MAX_DRAWS_PER_CHUNK // width))


def iter_walk_batches(cfg: SimConfig, rng: np.random.Generator) -> Iterator[StepBatch]:
    """Yield the walk's steps in vectorised batches, in ``simulate_step`` draw order."""
    g1, g2 = cfg.groups
    mu = cfg.env.mu
    sigmas = np.array(cfg.group_sigmas)
    rows = _rows_per_chunk(cfg)
    remaining = cfg.steps
    while remaining > 0:
        n = min(rows, remaining)
        remaining -= n
        if cfg.mode is SimMode.GROUP_MEAN:
            averages = mu + rng.standard_normal((n, 2)) * sigmas
            average1, average2 = averages[:, 0], averages[:, 1]
        else:
            x = mu + cfg.env.sigma * rng.standard_normal((n, g1.size + g2.size))
            average1 = x[:, : g1.size].mean(axis=1)
            average2 = x[:, g1.size:].mean(axis=1)
        support1, support2, accepted = _decide(cfg, average1, average2)
        yield StepBatch(
            accepted=accepted,
            supported=np.column_stack((support1, support2)),
            inc1=np.where(accepted, average1, 0.0),
            inc2=np.where(accepted, average2, 0.0),
            average1=average1,
            average2=average2,
        )


@dataclass
class _Tally:
    inc: Tuple[RunningMoments, RunningMoments] = field(
        default_factory=lambda: (RunningMoments(), RunningMoments())
    )
    cond: Tuple[RunningMoments, RunningMoments] = field(
        default_factory=lambda: (RunningMoments(), RunningMoments())
    )
    diff: RunningMoments = field(default_factory=RunningMoments)
    society: RunningMoments = field(default_factory=RunningMoments)
    accepted: int = 0
    capitals: List[Tuple[float, float]] = field(default_factory=list)

    def merge(self, other: "_Tally") -> "_Tally":
        for mine, theirs in zip(self.inc + self.cond, other.inc + other.cond):
            mine.merge(theirs)
        self.diff.merge(other.diff)
        self.society.merge(other.society)
        self.accepted += other.accepted
        self.capitals.extend(other.capitals)
        return self


def _walk_tally(cfg: SimConfig, index: int) -> _Tally:
    g1, g2 = cfg.groups
    tally = _Tally()
    capital1 = capital2 = 0.0
    for batch in iter_walk_batches(cfg, stream(cfg.seed, index)):
        tally.inc[0].push_array(batch.inc1)
        tally.inc[1].push_array(batch.inc2)
        tally.diff.push_array(batch.inc1 - batch.inc2)
        tally.society.push_array(g1.size * batch.inc1 + g2.size * batch.inc2)
        tally.cond[0].push_array(batch.inc1[batch.accepted & batch.supported[:, 0]])
        tally.cond[1].push_array(batch.inc2[batch.accepted & batch.supported[:, 1]])
        tally.accepted += int(np.count_nonzero(batch.accepted))
        capital1 += float(batch.inc1.sum())
        capital2 += float(batch.inc2.sum())
    tally.capitals.append((capital1, capital2))
    return tally


def _result(tally: _Tally) -> WalkResult:
    steps = tally.inc[0].count
    rate = tally.accepted / steps
    capitals = np.asarray(tally.capitals, dtype=float)
    mean1, mean2 = tally.inc[0].mean, tally.inc[1].mean
    return WalkResult(
        steps=steps,
        mean_inc=(mean1, mean2),
        stderr=(tally.inc[0].stderr, tally.inc[1].stderr),
        accept_rate=rate,
        accept_stderr=math.sqrt(rate * (1.0 - rate) / steps),
        diff_mean=mean1 - mean2,
        diff_stderr=tally.diff.stderr,
        society_mean=tally.society.mean,
        society_stderr=tally.society.stderr,
        final_capital=(float(capitals[:, 0].mean()), float(capitals[:, 1].mean())),
        cond_mean=tuple(m.mean if m.count >= 2 else math.nan for m in tally.cond),
        cond_stderr=tuple(m.stderr for m in tally.cond),
    )


def run_replications(cfg: SimConfig, threads: Optional[int] = None) -> WalkResult:
    """
    Run ``cfg.replications`` independent walks and pool them.

    Replication ``k`` uses stream ``k`` of ``cfg.seed``; tallies are merged in
    index order, so the pooled result does not depend on the thread count.
    """
    workers = resolve_thread_count(threads, cfg.replications)
    logger.info(
        f"Simulating {cfg.replications} x {cfg.steps} steps "
        f"(mode={cfg.mode.value}, rule={cfg.rule.value}, threads={workers})"
    )
    indices = range(cfg.replications)
    if workers == 1:
        tallies = [_walk_tally(cfg, index) for index in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(lambda index: _walk_tally(cfg, index), indices))
    pooled = tallies[0]
    for tally in tallies[1:]:
        pooled.merge(tally)
    result = _result(pooled)
    logger.info(f"Simulation finished: {result.steps} steps, accept rate {result.accept_rate:.6f}")
    return result


def run_walk(cfg: SimConfig) -> WalkResult:
    """Simulate the walk described by ``cfg``; replicated configs are pooled."""
    return run_replications(cfg)


def trajectory(cfg: SimConfig) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-step cumulative per-member capitals ``(step, cap1, cap2)`` of replication 0."""
    cap1_parts, cap2_parts = [], []
    carry1 = carry2 = 0.0
    for batch in iter_walk_batches(cfg, stream(cfg.seed, 0)):
        cum1 = carry1 + np.cumsum(batch.inc1)
        cum2 = carry2 + np.cumsum(batch.inc2)
        carry1, carry2 = float(cum1[-1]), float(cum2[-1])
        cap1_parts.append(cum1)
        cap2_parts.append(cum2)
    steps = np.arange(1, cfg.steps + 1, dtype=np.int64)
    return steps, np.concatenate(cap1_parts), np.concatenate(cap2_parts)
