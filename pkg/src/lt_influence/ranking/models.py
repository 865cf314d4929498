from enum import Enum
from typing import Any, Dict, List, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from lt_influence.utils import TIE_TOLERANCE


TIE_BREAK = "ascending_node_id"

# Scores are compared at this many decimals when ordering a rank list
_SCORE_DECIMALS = 12


class RankMethod(str, Enum):
    PAGERANK = "pagerank"
    DEGREE = "degree"
    WEIGHTED_DEGREE = "wdegree"
    G1 = "g1"


class RankEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    node: int = Field(..., ge=0)
    score: float


class RankList(BaseModel):
    """
    Nodes ordered by non-increasing score, ties by ascending node id.

    Every node of the ranked graph appears exactly once.
    """

    model_config = ConfigDict(frozen=True)

    entries: List[RankEntry]
    method: RankMethod
    tie_break: str = Field(TIE_BREAK)
    metadata: Dict[str, Any] = Field(
        default_factory=dict, description="Parameters the scores were computed with"
    )

    @model_validator(mode="after")
    def check_order(self) -> "RankList":
        nodes = [entry.node for entry in self.entries]
        if sorted(nodes) != list(range(len(nodes))):
            raise ValueError("a rank list must contain every node exactly once")
        for prev, cur in zip(self.entries, self.entries[1:]):
            if cur.score > prev.score + TIE_TOLERANCE:
                raise ValueError(f"scores increase at node {cur.node}")
        return self

    @classmethod
    def from_scores(
        cls,
        scores: Sequence[float],
        method: RankMethod,
        metadata: Dict[str, Any] = None,
    ) -> "RankList":
        order = sorted(
            range(len(scores)), key=lambda node: (-round(float(scores[node]), _SCORE_DECIMALS), node)
        )
        return cls(
            entries=[RankEntry(node=node, score=float(scores[node])) for node in order],
            method=method,
            metadata=metadata or {},
        )

    def nodes(self) -> List[int]:
        return [entry.node for entry in self.entries]

    def top(self, k: int) -> List[int]:
        return self.nodes()[:k]

    def scores(self) -> Dict[int, float]:
        return {entry.node: entry.score for entry in self.entries}
