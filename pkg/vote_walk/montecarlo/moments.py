"""Running first and second moments with associative merging (Chan et al. parallel update)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["RunningMoments"]


@dataclass
class RunningMoments:
    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def push_array(self, values: np.ndarray) -> "RunningMoments":
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            return self
        batch_mean = float(values.mean())
        batch = RunningMoments(
            count=int(values.size),
            mean=batch_mean,
            m2=float(np.sum((values - batch_mean) ** 2)),
        )
        return self.merge(batch)

    def merge(self, other: "RunningMoments") -> "RunningMoments":
        if other.count == 0:
            return self
        if self.count == 0:
            self.count, self.mean, self.m2 = other.count, other.mean, other.m2
            return self
        total = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * other.count / total
        self.m2 += other.m2 + delta * delta * self.count * other.count / total
        self.count = total
        return self

    @property
    def variance(self) -> float:
        """Sample variance (n - 1 denominator); NaN below two samples."""
        if self.count < 2:
            return math.nan
        return self.m2 / (self.count - 1)

    @property
    def stderr(self) -> float:
        if self.count < 2:
            return math.nan
        return math.sqrt(self.variance / self.count)
