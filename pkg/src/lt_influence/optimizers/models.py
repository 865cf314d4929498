from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from lt_influence.config.settings import get_settings
from lt_influence.graph.models import SeedSet


class SievingConfig(BaseModel):
    """
    Parameters of G1-Sieving.

    A node is dropped as an alpha-subordinate when the current picks activate
    it with probability above ``alpha``, and as a leecher when its influence
    on the network without the picks is below ``epsilon``.
    """

    K: int = Field(..., ge=1, description="Target seed set size")
    alpha: float = Field(0.3, gt=0.0, le=1.0, description="Subordinate threshold")
    epsilon: float = Field(1e-6, ge=0.0, description="Leecher cutoff")
    use_thresholding: bool = Field(True, description="Drop alpha-subordinates")
    use_restriction: bool = Field(
        True, description="Score survivors on the network without the picks"
    )
    activation_runs: int = Field(
        default_factory=lambda: get_settings().DEFAULT_RUNS,
        ge=1,
        description="Monte Carlo runs for activation probabilities above the exact cap",
    )
    exact_cap: Optional[int] = Field(
        default=None, ge=1, description="Largest graph whose activation probabilities are exact"
    )


class RoundRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    pool_size: int = Field(..., ge=0, description="Candidates considered this round")
    node: int = Field(..., ge=0, description="The node picked")
    gain: float = Field(..., description="sigma(X + node) - sigma(X) for the picks X before it")
    score: Optional[float] = Field(
        default=None, description="Value the pick won its round with, when it is not the gain"
    )


class SelectionResult(BaseModel):
    """
    Outcome of a seed selection run.

    ``chosen`` lists the picks in the order they were made. ``sigma`` is the
    evaluator's value of the final set and is not counted in
    ``evaluator_calls``.
    """

    method: str
    chosen: List[int]
    sigma: float
    half_width: float = Field(0.0, ge=0.0)
    per_round: List[RoundRecord]
    evaluator_calls: int = Field(..., ge=0, description="Sigma queries computed")
    activation_calls: int = Field(
        0, ge=0, description="Activation-probability queries computed"
    )
    config: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_rounds(self) -> "SelectionResult":
        if len(self.per_round) != len(self.chosen):
            raise ValueError("one round record is required per chosen node")
        return self

    @property
    def seed_set(self) -> SeedSet:
        return SeedSet.of(self.chosen)

    def prefix(self, k: int) -> List[int]:
        return self.chosen[:k]


class DummyClassification(BaseModel):
    """Dummy nodes with respect to a picked set X, with the values behind each verdict."""

    leechers: List[int]
    subordinates: List[int]
    activation_probs: Dict[int, float] = Field(..., description="g_i for the set X")
    restricted_sigma: Dict[int, float] = Field(
        ..., description="Influence of i on the network without X"
    )
    leecher_residuals: Dict[int, float] = Field(
        ...,
        description="sigma(i) - 1 - sum over j in X of w_ij sigma(N \\ i, j); near zero for leechers",
    )
