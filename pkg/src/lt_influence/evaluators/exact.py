from typing import Any, Dict, FrozenSet, Optional, Tuple

import numpy as np

from lt_influence.evaluators.interfaces import IInfluenceEvaluator
from lt_influence.exact.recursion import SigmaRecursion
from lt_influence.graph.models import InfluenceGraph, SeedSet


class ExactEvaluator(IInfluenceEvaluator):
    """Evaluator backed by the memoized exact recursion."""

    def __init__(self, g: InfluenceGraph, cap: Optional[int] = None):
        super().__init__(g)
        self.recursion = SigmaRecursion(g, cap)

    @property
    def is_exact(self) -> bool:
        return True

    def _estimate(self, seeds: SeedSet, excluded: FrozenSet[int]) -> Tuple[float, float]:
        return self.recursion.sigma_set(seeds, excluded), 0.0

    def _activation_probs(self, seeds: SeedSet) -> np.ndarray:
        return self.recursion.activation_probs(seeds)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "exact", "method": "recursion", "cap": self.recursion.cap}
