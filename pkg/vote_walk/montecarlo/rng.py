"""
Reproducible random streams.

Replication ``k`` of a run seeded with ``seed`` draws from
``Generator(PCG64(SeedSequence(seed, spawn_key=(k,))))``. This is exactly the
k-th child of ``SeedSequence(seed).spawn(n)`` for any ``n > k``, so a
replication's stream does not depend on how many replications run, in what
order, or on which thread.
"""

from __future__ import annotations

import os
from typing import List, Optional

import numpy as np

from ..consts import THREADS_ENV_VAR
from ..utils import logger

__all__ = ["stream", "streams", "resolve_thread_count"]


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Generator for replication ``index`` of ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def streams(seed: int, count: int) -> List[np.random.Generator]:
    return [stream(seed, index) for index in range(count)]


def resolve_thread_count(requested: Optional[int], jobs: int) -> int:
    """
    Number of worker threads for ``jobs`` replications.

    The request (default: CPU count) is capped by ``VOTE_WALK_THREADS`` when
    that variable holds a positive integer, and by the number of jobs.
    """
    threads = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV_VAR)
    if cap:
        try:
            cap_value = int(cap)
        except ValueError:
            logger.warning(f"Ignoring non-integer {THREADS_ENV_VAR}={cap!r}")
        else:
            if cap_value >= 1:
                threads = min(threads, cap_value)
            else:
                logger.warning(f"Ignoring non-positive {THREADS_ENV_VAR}={cap!r}")
    return max(1, min(threads, jobs))
