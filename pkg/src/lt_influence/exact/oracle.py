import itertools
import logging
import math
from typing import Optional, Tuple

from lt_influence.config.settings import get_settings
from lt_influence.exact.exceptions import EnumerationBudgetError
from lt_influence.exact.recursion import SigmaRecursion
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import InfluenceGraph, SeedSet
from lt_influence.utils import TIE_TOLERANCE


logger = logging.getLogger(__name__)


def optimal_seed_exhaustive(
    g: InfluenceGraph,
    K: int,
    budget: Optional[int] = None,
    cap: Optional[int] = None,
) -> Tuple[SeedSet, float]:
    """
    Best K-node seed set by exhaustive search with exact evaluation.

    Subsets are visited in lexicographic order and only a strictly better
    value (beyond TIE_TOLERANCE) replaces the incumbent, so ties resolve to
    the lexicographically smallest set.

    Raises:
        SeedSetError: If K is not in 1..n
        EnumerationBudgetError: If C(n, K) exceeds the budget
    """
    if not 1 <= K <= g.n:
        raise SeedSetError(f"K must lie in 1..{g.n}, got {K}")
    budget = get_settings().EXHAUSTIVE_BUDGET if budget is None else budget
    subsets = math.comb(g.n, K)
    if subsets > budget:
        raise EnumerationBudgetError(subsets, budget)

    recursion = SigmaRecursion(g, cap)
    best_set: Tuple[int, ...] = ()
    best_value = -math.inf
    for candidate in itertools.combinations(range(g.n), K):
        value = recursion.sigma_set(SeedSet.of(candidate))
        if value > best_value + TIE_TOLERANCE:
            best_set, best_value = candidate, value

    logger.info(f"exhaustive optimum over {subsets} sets: {list(best_set)} -> {best_value:.10g}")
    return SeedSet.of(best_set), best_value
