import math
from typing import FrozenSet, List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class ActivationTrace(BaseModel):
    """
    One realized LT diffusion.

    ``steps[k]`` is D_k, the nodes that became active at step k, with
    D_0 = A_0. Only non-empty steps are stored, so the stopping time S (the
    first k with A_k = A_{k-1}) equals ``len(steps)``.
    """

    model_config = ConfigDict(frozen=True)

    steps: List[List[int]] = Field(..., description="D_0, D_1, ..., D_{S-1}, each sorted")
    rng_seed: int = Field(..., description="Seed the thresholds were drawn from")

    @field_validator("steps")
    def check_disjoint(cls, v: List[List[int]]) -> List[List[int]]:
        seen = set()
        for step in v:
            if seen.intersection(step):
                raise ValueError("activation steps must be pairwise disjoint")
            seen.update(step)
        return v

    @property
    def stop_time(self) -> int:
        return len(self.steps)

    @property
    def final_set(self) -> FrozenSet[int]:
        return frozenset(node for step in self.steps for node in step)

    def active_after(self, k: int) -> FrozenSet[int]:
        """A_k, the union of D_0..D_k."""
        return frozenset(node for step in self.steps[: k + 1] for node in step)


class SigmaEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float = Field(..., description="Average terminal-set size |A_S|")
    half_width: float = Field(..., ge=0, description="3-sigma confidence half-width")
    runs: int = Field(..., ge=1)
    rng_seed: int
    rng_algorithm: str = Field(..., description="Bit generator and seeding scheme")


class MonteCarloSummary(BaseModel):
    """
    Integer tallies of a batch of runs.

    Counts and size sums are exact integers, so merging partial summaries
    gives the same result in any order.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    runs: int = Field(..., ge=1)
    counts: List[int] = Field(..., description="Runs in which each node ended active")
    size_sum: int = Field(..., description="Sum of |A_S| over runs")
    size_sq_sum: int = Field(..., description="Sum of |A_S|^2 over runs")
    rng_seed: int
    rng_algorithm: str

    @property
    def mean(self) -> float:
        return self.size_sum / self.runs

    @property
    def half_width(self) -> float:
        if self.runs == 1:
            return 0.0
        # Sample variance, exact in integers before the single division
        numerator = self.runs * self.size_sq_sum - self.size_sum**2
        variance = numerator / (self.runs * (self.runs - 1))
        return 3.0 * math.sqrt(max(variance, 0.0) / self.runs)

    def sigma_estimate(self) -> SigmaEstimate:
        return SigmaEstimate(
            mean=self.mean,
            half_width=self.half_width,
            runs=self.runs,
            rng_seed=self.rng_seed,
            rng_algorithm=self.rng_algorithm,
        )

    def activation_probs(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.runs
