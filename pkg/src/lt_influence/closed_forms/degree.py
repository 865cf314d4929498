"""
Degree Model Closed Forms
-------------------------

For an undirected forest whose influence weights are w_ij = a_ij / d_j,
every node's individual influence is its degree plus one. The pairwise
identities relate the joint influence of two nodes to the influences of
each on the network without the other.
"""

import logging
from typing import Dict, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from lt_influence.config.settings import get_settings
from lt_influence.exact.recursion import SigmaRecursion
from lt_influence.graph.exceptions import (
    CycleDetectedError,
    GraphValidationError,
    SeedSetError,
)
from lt_influence.graph.models import InfluenceGraph, SeedSet


logger = logging.getLogger(__name__)

# Residuals above this mean an identity does not hold
IDENTITY_TOLERANCE = 1e-10


def underlying_undirected(g: InfluenceGraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from((i, j) for (i, j), w in g.edges.items() if i != j and w > 0.0)
    return graph


def _check_degree_normalized(g: InfluenceGraph, graph: nx.Graph, tol: float) -> None:
    for (i, j), w in g.edges.items():
        if w <= 0.0:
            continue
        if g.edges.get((j, i), 0.0) <= 0.0:
            raise GraphValidationError(f"edge ({i}, {j}) has no reverse edge")
        if abs(w - 1.0 / graph.degree[j]) > tol:
            raise GraphValidationError(
                f"w_{i}{j} = {w:.12g} differs from 1/d_{j} = {1.0 / graph.degree[j]:.12g}"
            )


def sigma_degree_acyclic(g: InfluenceGraph, i: int) -> float:
    """
    Influence of node ``i`` in a degree-normalized forest: d_i + 1.

    Raises:
        CycleDetectedError: If the underlying undirected graph has a cycle
        GraphValidationError: If the weights are not w_ij = 1 / d_j
    """
    if not 0 <= i < g.n:
        raise SeedSetError(f"node must be below n={g.n}", [i])
    graph = underlying_undirected(g)
    if not nx.is_forest(graph):
        cycle = nx.find_cycle(graph)
        raise CycleDetectedError(
            f"degree closed form needs a forest, found cycle through {[u for u, _ in cycle]}"
        )
    _check_degree_normalized(g, graph, get_settings().TOLERANCE)
    return float(graph.degree[i] + 1)


class PairwiseIdentities(BaseModel):
    """
    Values behind the three pairwise identities for nodes i and j:

        sigma(i + j) = sigma(N \\ i, j) + sigma(N \\ j, i)
        sigma(i)     = sigma(N \\ j, i) + w_ij sigma(N \\ i, j)
        sigma(j)     = sigma(N \\ i, j) + w_ji sigma(N \\ j, i)

    The first always holds. The other two hold exactly when the only
    self-avoiding route between i and j is the direct edge, which
    ``indirect_paths`` reports.
    """

    model_config = ConfigDict(frozen=True)

    i: int
    j: int
    sigma_pair: float
    sigma_i: float
    sigma_j: float
    sigma_i_without_j: float
    sigma_j_without_i: float
    residuals: Dict[str, float] = Field(..., description="Absolute residual per identity")
    indirect_paths: bool = Field(
        ..., description="Whether i and j are linked other than by their direct edges"
    )

    @property
    def holds(self) -> bool:
        return all(r <= IDENTITY_TOLERANCE for r in self.residuals.values())


def _has_indirect_path(g: InfluenceGraph, source: int, target: int) -> bool:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(
        (u, v) for (u, v), w in g.edges.items() if u != v and w > 0.0 and (u, v) != (source, target)
    )
    return nx.has_path(graph, source, target)


def pairwise_influence_identities(
    g: InfluenceGraph, i: int, j: int, cap: Optional[int] = None
) -> PairwiseIdentities:
    """
    Evaluate the pairwise identities exactly and report their residuals.

    Raises:
        SeedSetError: If i == j or either is out of range
        ExactModeCapError: If ``g`` exceeds the recursion cap
    """
    if i == j:
        raise SeedSetError("pairwise identities need two distinct nodes", [i])
    recursion = SigmaRecursion(g, cap)
    sigma_pair = recursion.sigma_set(SeedSet.of([i, j]))
    sigma_i = recursion.sigma_node(i)
    sigma_j = recursion.sigma_node(j)
    i_without_j = recursion.sigma_node(i, [j])
    j_without_i = recursion.sigma_node(j, [i])
    w_ij = g.edges.get((i, j), 0.0)
    w_ji = g.edges.get((j, i), 0.0)

    residuals = {
        "pair": abs(sigma_pair - (j_without_i + i_without_j)),
        "node_i": abs(sigma_i - (i_without_j + w_ij * j_without_i)),
        "node_j": abs(sigma_j - (j_without_i + w_ji * i_without_j)),
    }
    indirect = _has_indirect_path(g, i, j) or _has_indirect_path(g, j, i)
    if indirect:
        logger.debug(f"nodes {i} and {j} are linked indirectly; single-node identities are approximate")
    return PairwiseIdentities(
        i=i,
        j=j,
        sigma_pair=sigma_pair,
        sigma_i=sigma_i,
        sigma_j=sigma_j,
        sigma_i_without_j=i_without_j,
        sigma_j_without_i=j_without_i,
        residuals=residuals,
        indirect_paths=indirect,
    )
