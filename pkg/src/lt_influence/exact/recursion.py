"""
Exact Influence Recursion
-------------------------

The influence of node i on the subnetwork M satisfies

    sigma(M, i) = 1 + sum over j in M, j != i of w_ij * sigma(M \\ {i}, j)

and the influence of a seed set A_0 is the sum over its members i of
sigma((N \\ A_0) + {i}, i). Subnetworks are bitmasks of excluded nodes and
every (mask, node) value is memoized.

The same recursion over vectors, G(M, i) = e_i + sum w_ij G(M \\ {i}, j),
yields the exact activation probability of every node.
"""

import logging
import math
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from lt_influence.config.settings import get_settings
from lt_influence.exact.exceptions import ExactModeCapError
from lt_influence.exact.models import NodeMask
from lt_influence.graph.builders import ensure_valid
from lt_influence.graph.exceptions import SeedSetError
from lt_influence.graph.models import InfluenceGraph, SeedSet


logger = logging.getLogger(__name__)

Excluded = Union[NodeMask, Iterable[int]]


def _excluded_bits(excluded: Excluded) -> int:
    if isinstance(excluded, NodeMask):
        return excluded.bits
    bits = 0
    for node in excluded:
        bits |= 1 << node
    return bits


class SigmaRecursion:
    """
    Memoized exact evaluator for one graph.

    Memo entries are pure functions of (excluded mask, node), so the tables
    stay valid for the lifetime of the instance and concurrent readers at
    worst compute an entry twice.
    """

    def __init__(self, g: InfluenceGraph, cap: Optional[int] = None):
        ensure_valid(g)
        self.g = g
        self.cap = get_settings().EXACT_RECURSION_CAP if cap is None else cap
        if g.n > 64:
            raise ExactModeCapError(g.n, 64, "recursion")
        self._out: List[List[Tuple[int, float]]] = [
            [(j, w) for j, w in g.out_neighbors(i) if w > 0.0] for i in range(g.n)
        ]
        self._memo: Dict[Tuple[int, int], float] = {}
        self._vector_memo: Dict[Tuple[int, int], np.ndarray] = {}

    def _check_size(self, excluded: int) -> None:
        active = self.g.n - bin(excluded).count("1")
        if active > self.cap:
            raise ExactModeCapError(active, self.cap, "recursion")

    def _sigma(self, excluded: int, i: int) -> float:
        key = (excluded, i)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        inner = excluded | (1 << i)
        value = 1.0 + math.fsum(
            w * self._sigma(inner, j) for j, w in self._out[i] if not inner >> j & 1
        )
        self._memo[key] = value
        return value

    def _reach(self, excluded: int, i: int) -> np.ndarray:
        key = (excluded, i)
        cached = self._vector_memo.get(key)
        if cached is not None:
            return cached
        inner = excluded | (1 << i)
        value = np.zeros(self.g.n)
        value[i] = 1.0
        for j, w in self._out[i]:
            if not inner >> j & 1:
                value += w * self._reach(inner, j)
        self._vector_memo[key] = value
        return value

    def _seed_bits(self, a0: SeedSet, excluded: int) -> int:
        a0.check_against(self.g)
        seed_bits = a0.mask
        if seed_bits & excluded:
            raise SeedSetError(
                "seed nodes must not be excluded",
                [node for node in a0.nodes if excluded >> node & 1],
            )
        return seed_bits

    def sigma_node(self, i: int, excluded: Excluded = ()) -> float:
        """sigma of node ``i`` on the subnetwork without ``excluded``."""
        bits = _excluded_bits(excluded)
        if not 0 <= i < self.g.n:
            raise SeedSetError(f"node must be below n={self.g.n}", [i])
        if bits >> i & 1:
            raise SeedSetError("node must not be excluded", [i])
        self._check_size(bits)
        return self._sigma(bits, i)

    def sigma_set(self, a0: SeedSet, excluded: Excluded = ()) -> float:
        """sigma of ``a0`` on the subnetwork without ``excluded``."""
        bits = _excluded_bits(excluded)
        seed_bits = self._seed_bits(a0, bits)
        self._check_size(bits)
        return math.fsum(
            self._sigma(bits | (seed_bits & ~(1 << i)), i) for i in a0.sorted()
        )

    def activation_probs(self, a0: SeedSet, excluded: Excluded = ()) -> np.ndarray:
        """
        Exact g_j for every node.

        Entry j sums, over seeds i, the weight products of all simple paths
        from i to j that avoid the other seeds.
        """
        bits = _excluded_bits(excluded)
        seed_bits = self._seed_bits(a0, bits)
        self._check_size(bits)
        probs = np.zeros(self.g.n)
        for i in a0.sorted():
            probs += self._reach(bits | (seed_bits & ~(1 << i)), i)
        return probs

    @property
    def memo_size(self) -> int:
        return len(self._memo) + len(self._vector_memo)


def sigma_node_exact(
    g: InfluenceGraph, i: int, excluded: Excluded = (), cap: Optional[int] = None
) -> float:
    """
    Exact influence of node ``i`` on the subnetwork without ``excluded``.

    Raises:
        ExactModeCapError: If more than ``cap`` nodes remain
    """
    return SigmaRecursion(g, cap).sigma_node(i, excluded)


def sigma_set_exact(g: InfluenceGraph, a0: SeedSet, cap: Optional[int] = None) -> float:
    """
    Exact influence of a non-empty seed set.

    Raises:
        SeedSetError: If ``a0`` is empty or does not fit ``g``
        ExactModeCapError: If ``g`` has more than ``cap`` nodes
    """
    return SigmaRecursion(g, cap).sigma_set(a0)


def activation_probs_exact(
    g: InfluenceGraph, a0: SeedSet, cap: Optional[int] = None
) -> np.ndarray:
    return SigmaRecursion(g, cap).activation_probs(a0)
