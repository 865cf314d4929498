from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PrivateAttr,
    field_validator,
    model_validator,
)
from scipy import sparse

from lt_influence.graph.exceptions import InfeasibleParamsError, SeedSetError


# Dense matrices are only materialized up to this many nodes
DENSE_LIMIT = 64


class InfluenceGraph(BaseModel):
    """
    Weighted directed graph holding the influence matrix W.

    ``edges[(i, j)]`` is w_ij, the influence of node i on node j. Self-loops
    are never part of W; the completing self-loop of the transition matrix is
    derived by :func:`lt_influence.graph.builders.make_transition_matrix`.
    Weight bounds are not enforced here, they are reported by
    :func:`lt_influence.graph.builders.validate_graph`.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Number of nodes, ids are 0..n-1")
    edges: Dict[Tuple[int, int], float] = Field(
        default_factory=dict,
        description="Sparse map (source, target) -> w_ij",
    )
    node_labels: Optional[List[str]] = Field(
        default=None, description="Optional display label per node id"
    )

    _adjacency: Optional[List[List[Tuple[int, float]]]] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def check_node_ids(self) -> "InfluenceGraph":
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) references a node outside 0..{self.n - 1}")
        if self.node_labels is not None and len(self.node_labels) != self.n:
            raise ValueError(
                f"expected {self.n} node labels, got {len(self.node_labels)}"
            )
        return self

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def label(self, node: int) -> str:
        if self.node_labels is None:
            return str(node)
        return self.node_labels[node]

    def out_neighbors(self, node: int) -> List[Tuple[int, float]]:
        """Out-edges of ``node`` as (target, weight), ascending target id."""
        if self._adjacency is None:
            adjacency: List[List[Tuple[int, float]]] = [[] for _ in range(self.n)]
            for (i, j), w in sorted(self.edges.items()):
                if i != j:
                    adjacency[i].append((j, w))
            self._adjacency = adjacency
        return self._adjacency[node]

    def in_sums(self) -> np.ndarray:
        """Column sums of W, i.e. sum over i != j of w_ij for every node j."""
        sums = np.zeros(self.n)
        for (i, j), w in self.edges.items():
            if i != j:
                sums[j] += w
        return sums

    def total_influence(self, node: int, active: Iterable[int]) -> float:
        """b_j(A): the summed weight flowing into ``node`` from ``active``."""
        return sum(self.edges.get((i, node), 0.0) for i in set(active) if i != node)

    def weight_matrix(self) -> sparse.csr_matrix:
        """W as a CSR matrix, rows are sources and columns are targets."""
        items = [((i, j), w) for (i, j), w in self.edges.items() if i != j]
        rows = [i for (i, _), _ in items]
        cols = [j for (_, j), _ in items]
        data = [w for _, w in items]
        return sparse.csr_matrix(
            (np.asarray(data, dtype=float), (rows, cols)), shape=(self.n, self.n)
        )

    def without_nodes(self, nodes: Iterable[int]) -> "InfluenceGraph":
        """The node-deleted subgraph: ids are kept, every edge touching ``nodes`` is dropped."""
        removed = set(nodes)
        if not removed:
            return self
        return InfluenceGraph(
            n=self.n,
            edges={
                (i, j): w
                for (i, j), w in self.edges.items()
                if i not in removed and j not in removed
            },
            node_labels=self.node_labels,
        )


class SeedSet(BaseModel):
    """An initial active set A_0 (or any node set A used as a target)."""

    model_config = ConfigDict(frozen=True)

    nodes: FrozenSet[int] = Field(default_factory=frozenset)

    @field_validator("nodes")
    def validate_nodes(cls, v: FrozenSet[int]) -> FrozenSet[int]:
        negative = [node for node in v if node < 0]
        if negative:
            raise ValueError(f"node ids must be non-negative: {sorted(negative)}")
        return v

    @classmethod
    def of(cls, nodes: Iterable[int]) -> "SeedSet":
        return cls(nodes=frozenset(int(node) for node in nodes))

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node: object) -> bool:
        return node in self.nodes

    def sorted(self) -> List[int]:
        return sorted(self.nodes)

    @property
    def mask(self) -> int:
        bits = 0
        for node in self.nodes:
            bits |= 1 << node
        return bits

    def union(self, nodes: Iterable[int]) -> "SeedSet":
        return SeedSet(nodes=self.nodes | frozenset(nodes))

    def check_against(
        self, graph: Union[InfluenceGraph, int], require_nonempty: bool = True
    ) -> "SeedSet":
        """
        Verify the set fits a graph.

        Args:
            graph: The graph, or its node count
            require_nonempty: Whether an empty set is an error

        Returns:
            The seed set itself, for chaining

        Raises:
            SeedSetError: If the set is empty (when required) or has ids >= n
        """
        n = graph if isinstance(graph, int) else graph.n
        if require_nonempty and not self.nodes:
            raise SeedSetError("seed set must not be empty")
        out_of_range = [node for node in self.nodes if node >= n]
        if out_of_range:
            raise SeedSetError(f"seed ids must be below n={n}", out_of_range)
        return self


class UISLTParams(BaseModel):
    """
    Per-node influence levels alpha_i and susceptances beta_i of a UISLT model.

    The complete graph built from them has w_ij = alpha_i * beta_j. Zero
    susceptance is accepted: such a node can never be activated.
    """

    alphas: List[NonNegativeFloat] = Field(..., description="Influence level per node")
    betas: List[NonNegativeFloat] = Field(..., description="Susceptance per node")

    @model_validator(mode="after")
    def check_lengths(self) -> "UISLTParams":
        if len(self.alphas) != len(self.betas):
            raise ValueError(
                f"alphas and betas differ in length ({len(self.alphas)} != {len(self.betas)})"
            )
        if not self.alphas:
            raise ValueError("at least one node is required")
        return self

    @classmethod
    def uniform_susceptance(cls, betas: List[float]) -> "UISLTParams":
        """USLT: every influence level fixed to 1."""
        return cls(alphas=[1.0] * len(betas), betas=betas)

    @classmethod
    def uniform_influence(cls, alphas: List[float]) -> "UISLTParams":
        """UILT: every susceptance fixed to 1."""
        return cls(alphas=alphas, betas=[1.0] * len(alphas))

    @property
    def n(self) -> int:
        return len(self.alphas)

    def infeasible_node(self, tol: float = 1e-9) -> Optional[int]:
        total = sum(self.alphas)
        for i, beta in enumerate(self.betas):
            if beta * (total - self.alphas[i]) > 1.0 + tol:
                return i
        return None

    def check_feasible(self, tol: float = 1e-9) -> "UISLTParams":
        node = self.infeasible_node(tol)
        if node is not None:
            raise InfeasibleParamsError(
                node, sum(self.alphas) - self.alphas[node], self.betas[node]
            )
        return self

    def restricted(self, nodes: Iterable[int]) -> "UISLTParams":
        """The UISLT model on the complete subgraph over ``nodes`` (in the given order)."""
        keep = list(nodes)
        return UISLTParams(
            alphas=[self.alphas[i] for i in keep], betas=[self.betas[i] for i in keep]
        )


class TransitionMatrix(BaseModel):
    """
    Row-stochastic matrix P = W^T of the reversed chain.

    Row j holds p_jl = w_lj for l != j, completed by the self-loop
    p_jj = 1 - sum over i != j of w_ij.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., ge=0)
    matrix: sparse.csr_matrix = Field(..., description="P in CSR layout")

    def row(self, j: int) -> List[Tuple[int, float]]:
        """Non-zero entries of row j as (column, probability), descending probability."""
        start, end = self.matrix.indptr[j], self.matrix.indptr[j + 1]
        entries = [
            (int(col), float(p))
            for col, p in zip(
                self.matrix.indices[start:end], self.matrix.data[start:end]
            )
            if p > 0.0
        ]
        entries.sort(key=lambda entry: (-entry[1], entry[0]))
        return entries

    def row_sums(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=1)).ravel()

    def dense(self) -> np.ndarray:
        if self.n > DENSE_LIMIT:
            raise ValueError(
                f"refusing to densify a {self.n}-state chain (limit {DENSE_LIMIT})"
            )
        return self.matrix.toarray()


class ViolationKind(str, Enum):
    IN_SUM = "in_sum"
    WEIGHT_RANGE = "weight_range"
    SELF_LOOP = "self_loop"


class Violation(BaseModel):
    kind: ViolationKind = Field(..., description="Which bound is broken")
    node: Optional[int] = Field(default=None, description="Offending node, if any")
    edge: Optional[Tuple[int, int]] = Field(
        default=None, description="Offending edge, if any"
    )
    value: float = Field(..., description="The offending value")
    bound: str = Field(..., description="Human-readable statement of the bound")

    def __str__(self) -> str:
        where = f"edge {self.edge}" if self.edge is not None else f"node {self.node}"
        return f"{self.kind.value} at {where}: {self.value:.12g} violates {self.bound}"


class ValidationReport(BaseModel):
    violations: List[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations
