import threading
from abc import ABC, abstractmethod
from typing import Any, Dict, FrozenSet, Iterable, Tuple, Union

import numpy as np

from lt_influence.graph.models import InfluenceGraph, SeedSet


Nodes = Union[SeedSet, Iterable[int]]


def _as_seed_set(nodes: Nodes) -> SeedSet:
    return nodes if isinstance(nodes, SeedSet) else SeedSet.of(nodes)


class IInfluenceEvaluator(ABC):
    """
    Abstract base class for influence evaluators.

    Evaluators answer sigma queries for one graph, optionally on the
    subnetwork with some nodes removed, and report activation probabilities.
    Results are cached per query. ``calls`` counts the sigma queries that had
    to be computed and ``activation_calls`` the activation-probability
    queries; the optimizers report both as their cost.
    """

    def __init__(self, g: InfluenceGraph):
        self.graph = g
        self._cache: Dict[Tuple[str, FrozenSet[int], FrozenSet[int]], Any] = {}
        self._lock = threading.Lock()
        self._calls = 0
        self._activation_calls = 0

    @property
    def calls(self) -> int:
        return self._calls

    @property
    def activation_calls(self) -> int:
        return self._activation_calls

    @property
    @abstractmethod
    def is_exact(self) -> bool:
        pass

    @abstractmethod
    def _estimate(self, seeds: SeedSet, excluded: FrozenSet[int]) -> Tuple[float, float]:
        """
        Compute sigma of ``seeds`` on the graph without ``excluded``.

        Returns:
            The value and its 3-sigma half-width (0 when exact)
        """
        pass

    @abstractmethod
    def _activation_probs(self, seeds: SeedSet) -> np.ndarray:
        pass

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """Parameters identifying this evaluator, for result metadata."""
        pass

    def _cached(self, key: Tuple[str, FrozenSet[int], FrozenSet[int]], compute) -> Any:
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            if key not in self._cache:
                self._cache[key] = value
                if key[0] == "sigma":
                    self._calls += 1
                else:
                    self._activation_calls += 1
            return self._cache[key]

    def estimate(self, seeds: Nodes, excluded: Iterable[int] = ()) -> Tuple[float, float]:
        """
        sigma of ``seeds`` on the subnetwork without ``excluded``, with its half-width.

        Raises:
            SeedSetError: If ``seeds`` is empty, out of range or overlaps ``excluded``
        """
        seed_set = _as_seed_set(seeds).check_against(self.graph)
        removed = frozenset(excluded)
        return self._cached(
            ("sigma", seed_set.nodes, removed), lambda: self._estimate(seed_set, removed)
        )

    def sigma(self, seeds: Nodes, excluded: Iterable[int] = ()) -> float:
        return self.estimate(seeds, excluded)[0]

    def activation_probs(self, seeds: Nodes) -> np.ndarray:
        """Activation probability g_j of every node for the seed set ``seeds``."""
        seed_set = _as_seed_set(seeds).check_against(self.graph)
        probs = self._cached(
            ("probs", seed_set.nodes, frozenset()), lambda: self._activation_probs(seed_set)
        )
        return probs.copy()
