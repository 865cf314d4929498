from typing import FrozenSet, Iterable, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class NodeMask(BaseModel):
    """
    A node subset of a graph with ``n`` nodes, stored as a bitset.

    Used both for excluded node sets (the subnetwork N minus those nodes) and
    for the nodes a path may pass through.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, le=64)
    bits: int = Field(0, ge=0)

    @model_validator(mode="after")
    def check_bits(self) -> "NodeMask":
        if self.bits >> self.n:
            raise ValueError(f"mask {self.bits:#x} has bits beyond node {self.n - 1}")
        return self

    @classmethod
    def of(cls, n: int, nodes: Iterable[int]) -> "NodeMask":
        bits = 0
        for node in nodes:
            if not 0 <= node < n:
                raise ValueError(f"node {node} outside 0..{n - 1}")
            bits |= 1 << node
        return cls(n=n, bits=bits)

    @classmethod
    def full(cls, n: int) -> "NodeMask":
        return cls(n=n, bits=(1 << n) - 1)

    def __contains__(self, node: object) -> bool:
        return isinstance(node, int) and 0 <= node < self.n and bool(self.bits >> node & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def nodes(self) -> List[int]:
        return [node for node in range(self.n) if self.bits >> node & 1]

    def complement(self) -> "NodeMask":
        return NodeMask(n=self.n, bits=((1 << self.n) - 1) & ~self.bits)

    def without(self, nodes: Iterable[int]) -> "NodeMask":
        bits = self.bits
        for node in nodes:
            bits &= ~(1 << node)
        return NodeMask(n=self.n, bits=bits)


class PathProbQuery(BaseModel):
    """
    A hitting-probability query c^W(j -v-> D) on the reversed chain.

    ``allowed`` is W, the nodes a path may pass through before reaching D
    (``None`` for every node); ``via`` is an optional node the path must
    visit.
    """

    model_config = ConfigDict(frozen=True)

    start: int = Field(..., ge=0)
    targets: FrozenSet[int] = Field(..., description="The target set D")
    via: Optional[int] = Field(default=None)
    allowed: Optional[NodeMask] = Field(default=None)

    @model_validator(mode="after")
    def check_query(self) -> "PathProbQuery":
        if self.via is not None and self.via in self.targets:
            raise ValueError(f"via node {self.via} must not be a target")
        if self.allowed is not None:
            for node in (self.start, self.via):
                if node is not None and node not in self.targets and node not in self.allowed:
                    raise ValueError(f"node {node} is not in the allowed set")
        return self
