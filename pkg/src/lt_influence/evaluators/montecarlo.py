import logging
from typing import Any, Dict, FrozenSet, Tuple

import numpy as np

from lt_influence.diffusion.montecarlo import RNG_ALGORITHM, simulate_runs
from lt_influence.evaluators.interfaces import IInfluenceEvaluator
from lt_influence.graph.builders import ensure_valid
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import InfluenceGraph, SeedSet


logger = logging.getLogger(__name__)


def query_seed(base_seed: int, seeds: SeedSet, excluded: FrozenSet[int]) -> int:
    """
    Stream seed for one query, derived from the base seed and the query itself.

    The seed count separates the seed ids from the excluded ids, so distinct
    queries get distinct streams and the same query always gets the same one.
    """
    entropy = [base_seed, len(seeds), *seeds.sorted(), *sorted(excluded)]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


class MonteCarloEvaluator(IInfluenceEvaluator):
    """Evaluator backed by Monte Carlo simulation with a fixed number of runs."""

    def __init__(self, g: InfluenceGraph, runs: int, rng_seed: int):
        ensure_valid(g)
        super().__init__(g)
        if runs < 1:
            raise ValueError(f"runs must be at least 1, got {runs}")
        self.runs = runs
        self.rng_seed = rng_seed

    @property
    def is_exact(self) -> bool:
        return False

    def _estimate(self, seeds: SeedSet, excluded: FrozenSet[int]) -> Tuple[float, float]:
        overlap = seeds.nodes & excluded
        if overlap:
            raise SeedSetError("seed nodes must not be excluded", overlap)
        summary = simulate_runs(
            self.graph.without_nodes(excluded),
            seeds,
            self.runs,
            query_seed(self.rng_seed, seeds, excluded),
        )
        return summary.mean, summary.half_width

    def _activation_probs(self, seeds: SeedSet) -> np.ndarray:
        summary = simulate_runs(
            self.graph, seeds, self.runs, query_seed(self.rng_seed, seeds, frozenset())
        )
        return summary.activation_probs()

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": "monte_carlo",
            "runs": self.runs,
            "rng_seed": self.rng_seed,
            "rng_algorithm": RNG_ALGORITHM,
        }
