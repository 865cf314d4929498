"""Common graph fixtures for the unit tests."""

from typing import List

import networkx as nx
import numpy as np
import pytest

from lt_influence.graph.builders import normalize_networkx, random_influence_graph
from lt_influence.graph.models import InfluenceGraph


@pytest.fixture
def two_node_graph() -> InfluenceGraph:
    """Node 0 influences node 1 with weight 0.5."""
    return InfluenceGraph(n=2, edges={(0, 1): 0.5})


@pytest.fixture
def three_cycle() -> InfluenceGraph:
    """Directed cycle 0 -> 1 -> 2 -> 0, every weight 0.5."""
    return InfluenceGraph(n=3, edges={(0, 1): 0.5, (1, 2): 0.5, (2, 0): 0.5})


@pytest.fixture
def empty_graph() -> InfluenceGraph:
    """Four nodes and no edges."""
    return InfluenceGraph(n=4)


@pytest.fixture
def chain_graph() -> InfluenceGraph:
    """0 -> 1 -> 2 with weight 1, so every run activates the whole chain."""
    return InfluenceGraph(n=3, edges={(0, 1): 1.0, (1, 2): 1.0})


@pytest.fixture
def path_graph() -> InfluenceGraph:
    """Degree-normalized undirected path 0 - 1 - 2."""
    return normalize_networkx(nx.path_graph(3))


@pytest.fixture
def random_graphs() -> List[InfluenceGraph]:
    """Thirty random valid LT instances with 2 to 8 nodes."""
    rng = np.random.default_rng(20240611)
    return [
        random_influence_graph(int(rng.integers(2, 9)), float(rng.uniform(0.2, 0.8)), rng)
        for _ in range(30)
    ]
