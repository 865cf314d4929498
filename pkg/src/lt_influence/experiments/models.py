from typing import Any, Dict, List

from pydantic import BaseModel, Field


class ComparisonRow(BaseModel):
    K: int = Field(..., ge=1)
    method: str
    sigma: float
    half_width: float = Field(0.0, ge=0.0)
    seeds: List[int] = Field(default_factory=list)


class ComparisonTable(BaseModel):
    """Influence of each method's top-K set for K = 1..k, ordered by K then method."""

    rows: List[ComparisonRow] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    def for_method(self, method: str) -> List[ComparisonRow]:
        return [row for row in self.rows if row.method == method]
