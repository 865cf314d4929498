from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from lt_influence.config.settings import get_settings


class EvaluatorType(str, Enum):
    EXACT = "exact"
    MONTE_CARLO = "monte_carlo"


class EvaluatorConfig(BaseModel):
    """
    Selects and parameterizes an influence evaluator.

    Monte Carlo evaluation needs an explicit ``rng_seed`` so that repeated
    runs give identical results.
    """

    kind: EvaluatorType = Field(
        EvaluatorType.EXACT, description="Which evaluator to build. Defaults to exact"
    )
    runs: int = Field(
        default_factory=lambda: get_settings().DEFAULT_RUNS,
        ge=1,
        description="Monte Carlo runs per query",
    )
    rng_seed: Optional[int] = Field(
        default=None, ge=0, description="Base seed of every Monte Carlo query stream"
    )
    exact_cap: Optional[int] = Field(
        default=None, ge=1, description="Override of the exact recursion cap"
    )

    @model_validator(mode="after")
    def check_seed(self) -> "EvaluatorConfig":
        if self.kind == EvaluatorType.MONTE_CARLO and self.rng_seed is None:
            raise ValueError("a Monte Carlo evaluator needs an rng_seed")
        return self
