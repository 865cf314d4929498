"""
Acyclic Hitting Probabilities
-----------------------------

On the reversed chain P = W^T, the probability that a node ends up active
equals the probability mass of the self-avoiding paths that start at the
node and first hit the seed set. The functions here enumerate those paths
depth first, which gives an exact oracle independent of the recursion.
"""

import logging
from typing import List, Optional, Tuple

from lt_influence.config.settings import get_settings
from lt_influence.exact.exceptions import ExactModeCapError
from lt_influence.exact.models import PathProbQuery
from lt_influence.graph.builders import make_transition_matrix
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import InfluenceGraph, SeedSet, TransitionMatrix


logger = logging.getLogger(__name__)

# Paths whose running product falls below this are dropped outside oracle mode
PRUNE_THRESHOLD = 1e-15


def _check_cap(n: int, cap: Optional[int]) -> None:
    cap = get_settings().EXACT_PATHS_CAP if cap is None else cap
    if n > cap:
        raise ExactModeCapError(n, cap, "paths")


class _PathEnumerator:
    def __init__(self, P: TransitionMatrix, prune: float):
        self.rows: List[List[Tuple[int, float]]] = [
            [(col, p) for col, p in P.row(j) if col != j] for j in range(P.n)
        ]
        self.prune = prune

    def hit(self, q: PathProbQuery) -> float:
        if q.start in q.targets:
            return 1.0 if q.via is None else 0.0
        allowed = q.allowed.bits if q.allowed is not None else -1
        targets = q.targets
        via = q.via

        def walk(node: int, visited: int, prob: float, passed: bool) -> float:
            total = 0.0
            for nxt, p in self.rows[node]:
                if visited >> nxt & 1:
                    continue
                step = prob * p
                if step < self.prune:
                    continue
                if nxt in targets:
                    if passed:
                        total += step
                    continue
                if not allowed >> nxt & 1:
                    continue
                total += walk(nxt, visited | (1 << nxt), step, passed or nxt == via)
            return total

        return walk(q.start, 1 << q.start, 1.0, via is None or q.start == via)


def acyclic_hit_prob(
    P: TransitionMatrix, q: PathProbQuery, oracle: bool = True, cap: Optional[int] = None
) -> float:
    """
    c^W(j -v-> D): mass of the self-avoiding paths from j that first hit D.

    Intermediate nodes must lie in ``q.allowed``; when ``q.via`` is given
    only paths through it count. Self-loops never appear on a
    self-avoiding path. Returns 1 when j is itself in D (and no via node is
    required).

    Args:
        P: Row-stochastic reversed chain
        q: The query
        oracle: Disable pruning of paths below PRUNE_THRESHOLD
        cap: Maximum chain size, defaults to EXACT_PATHS_CAP

    Raises:
        ExactModeCapError: If the chain has more than ``cap`` states
    """
    _check_cap(P.n, cap)
    return _PathEnumerator(P, 0.0 if oracle else PRUNE_THRESHOLD).hit(q)


def sigma_via_paths(
    g: InfluenceGraph, a0: SeedSet, oracle: bool = True, cap: Optional[int] = None
) -> float:
    """|A_0| plus the acyclic hitting probability of A_0 from every other node."""
    a0.check_against(g)
    _check_cap(g.n, cap)
    enumerator = _PathEnumerator(make_transition_matrix(g), 0.0 if oracle else PRUNE_THRESHOLD)
    return len(a0) + sum(
        enumerator.hit(PathProbQuery(start=j, targets=a0.nodes))
        for j in range(g.n)
        if j not in a0
    )


def activation_prob_exact(
    g: InfluenceGraph, a0: SeedSet, j: int, oracle: bool = True, cap: Optional[int] = None
) -> float:
    """Exact g_j = c(j -> A_0); 1 for seeds, 0 for nodes A_0 cannot reach."""
    a0.check_against(g)
    if not 0 <= j < g.n:
        raise SeedSetError(f"node must be below n={g.n}", [j])
    return acyclic_hit_prob(
        make_transition_matrix(g), PathProbQuery(start=j, targets=a0.nodes), oracle, cap
    )
