"""
Graph Builders
--------------

Validation of influence graphs, construction of the reversed transition
matrix, and the generators for the structured model families: degree
normalized graphs, complete UISLT graphs and random synthetic instances.
"""

import logging
import math
from typing import List, Optional, Union

import networkx as nx
import numpy as np
from scipy import sparse

from lt_influence.config.settings import get_settings
from lt_influence.graph.exceptions import GraphValidationError, IsolatedNodeError
from lt_influence.graph.models import (
    InfluenceGraph,
    TransitionMatrix,
    UISLTParams,
    ValidationReport,
    Violation,
    ViolationKind,
)


logger = logging.getLogger(__name__)


def validate_graph(g: InfluenceGraph, tol: Optional[float] = None) -> ValidationReport:
    """
    Check every LT model bound on ``g``.

    Args:
        g: The graph to check
        tol: Absolute tolerance, defaults to the configured TOLERANCE

    Returns:
        A report whose ``violations`` list is empty iff the graph is valid
    """
    tol = get_settings().TOLERANCE if tol is None else tol
    violations: List[Violation] = []
    in_sums = np.zeros(g.n)

    for (i, j), w in sorted(g.edges.items()):
        if i == j:
            violations.append(
                Violation(
                    kind=ViolationKind.SELF_LOOP,
                    node=i,
                    edge=(i, j),
                    value=w,
                    bound="self-loops are derived, never stored",
                )
            )
            continue
        if math.isnan(w) or w < -tol or w > 1.0 + tol:
            violations.append(
                Violation(
                    kind=ViolationKind.WEIGHT_RANGE,
                    node=j,
                    edge=(i, j),
                    value=w,
                    bound="0 <= w_ij <= 1",
                )
            )
        in_sums[j] += w

    for j in range(g.n):
        if in_sums[j] > 1.0 + tol:
            violations.append(
                Violation(
                    kind=ViolationKind.IN_SUM,
                    node=j,
                    value=float(in_sums[j]),
                    bound="sum over i != j of w_ij <= 1",
                )
            )
    return ValidationReport(violations=violations)


def ensure_valid(g: InfluenceGraph, tol: Optional[float] = None) -> InfluenceGraph:
    report = validate_graph(g, tol)
    if not report.ok:
        raise GraphValidationError("invalid influence graph", report.violations)
    return g


def make_transition_matrix(g: InfluenceGraph) -> TransitionMatrix:
    """
    Build P = W^T with every row completed by its self-loop.

    Raises:
        GraphValidationError: If ``g`` fails validation
    """
    ensure_valid(g)
    w = g.weight_matrix()
    self_loops = np.clip(1.0 - np.asarray(w.sum(axis=0)).ravel(), 0.0, 1.0)
    p = (w.T + sparse.diags(self_loops)).tocsr()
    p.eliminate_zeros()
    p.sort_indices()
    return TransitionMatrix(n=g.n, matrix=p)


def normalize_adjacency(
    adjacency: Union[np.ndarray, sparse.spmatrix],
    node_labels: Optional[List[str]] = None,
) -> InfluenceGraph:
    """
    Degree-normalize a symmetric 0/1 adjacency matrix: w_ij = a_ij / d_j.

    Args:
        adjacency: Symmetric 0/1 matrix with zero diagonal
        node_labels: Optional labels carried onto the graph

    Returns:
        An influence graph whose every column sums to exactly 1

    Raises:
        GraphValidationError: If the matrix is not square, symmetric, 0/1 or
            has a non-zero diagonal
        IsolatedNodeError: If some node has degree 0
    """
    a = sparse.csr_matrix(adjacency, dtype=float)
    a.eliminate_zeros()
    if a.shape[0] != a.shape[1]:
        raise GraphValidationError(f"adjacency must be square, got shape {a.shape}")
    if a.diagonal().any():
        raise GraphValidationError("adjacency must have a zero diagonal")
    if (a != a.T).nnz:
        raise GraphValidationError("adjacency must be symmetric")
    if not np.all(a.data == 1.0):
        raise GraphValidationError("adjacency entries must be 0 or 1")

    degrees = np.asarray(a.sum(axis=0)).ravel()
    isolated = np.flatnonzero(degrees == 0)
    if isolated.size:
        raise IsolatedNodeError(int(isolated[0]))

    coo = a.tocoo()
    edges = {
        (int(i), int(j)): 1.0 / degrees[j] for i, j in zip(coo.row, coo.col)
    }
    return InfluenceGraph(n=a.shape[0], edges=edges, node_labels=node_labels)


def normalize_networkx(graph: nx.Graph) -> InfluenceGraph:
    """Degree-normalize an undirected networkx graph, keeping its node names as labels."""
    nodes = list(graph.nodes())
    adjacency = nx.to_scipy_sparse_array(graph, nodelist=nodes, weight=None, format="csr")
    return normalize_adjacency(adjacency, node_labels=[str(node) for node in nodes])


def build_uislt(params: UISLTParams) -> InfluenceGraph:
    """
    Build the complete UISLT graph with w_ij = alpha_i * beta_j for i != j.

    Raises:
        InfeasibleParamsError: If some column would sum above 1
    """
    params.check_feasible(get_settings().TOLERANCE)
    edges = {}
    for i, alpha in enumerate(params.alphas):
        for j, beta in enumerate(params.betas):
            if i != j and alpha * beta > 0.0:
                edges[(i, j)] = alpha * beta
    return InfluenceGraph(n=params.n, edges=edges)


def random_influence_graph(
    n: int, density: float, rng: np.random.Generator
) -> InfluenceGraph:
    """
    A random valid LT instance.

    Every ordered pair carries an edge with probability ``density``; each
    column is then scaled to a random in-sum drawn from U[0, 1].
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    edges = {}
    for j in range(n):
        sources = [i for i in range(n) if i != j and rng.random() < density]
        if not sources:
            continue
        raw = rng.random(len(sources)) + 1e-3
        in_sum = rng.random()
        for i, value in zip(sources, raw * (in_sum / raw.sum())):
            edges[(i, j)] = float(value)
    return InfluenceGraph(n=n, edges=edges)


def random_tree(n: int, rng: np.random.Generator) -> InfluenceGraph:
    """A uniformly random labelled tree (Pruefer sequence), degree-normalized."""
    if n < 2:
        raise ValueError("a degree-normalized tree needs at least 2 nodes")
    sequence = [int(x) for x in rng.integers(0, n, size=n - 2)]
    tree = nx.from_prufer_sequence(sequence) if n > 2 else nx.path_graph(2)
    return normalize_adjacency(
        nx.to_scipy_sparse_array(tree, nodelist=range(n), weight=None, format="csr")
    )


def scale_free_degree_graph(n: int, m: int, rng: np.random.Generator) -> InfluenceGraph:
    """A Barabasi-Albert graph with degree-normalized influence weights."""
    graph = nx.barabasi_albert_graph(n, m, seed=int(rng.integers(0, 2**31 - 1)))
    return normalize_adjacency(
        nx.to_scipy_sparse_array(graph, nodelist=range(n), weight=None, format="csr")
    )


def random_uislt_params(n: int, rng: np.random.Generator) -> UISLTParams:
    """
    Random feasible UISLT parameters.

    alpha_i ~ U[0, 1] and beta_i ~ U[0.5 / s_i, 1 / s_i] where s_i is the sum
    of the other nodes' alphas.
    """
    if n < 2:
        raise ValueError("a UISLT graph needs at least 2 nodes")
    alphas = rng.random(n)
    others = alphas.sum() - alphas
    betas = rng.uniform(0.5, 1.0, size=n) / others
    return UISLTParams(alphas=alphas.tolist(), betas=betas.tolist())
