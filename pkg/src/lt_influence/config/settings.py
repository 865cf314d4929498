"""
Handles loading and validation of runtime configuration from environment
variables and an optional .env file.
"""

import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Runtime settings with validation.

    Every value can be overridden through its ``LT_INFLUENCE_*`` environment
    variable. Caps passed explicitly to an operation take precedence over the
    values configured here.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        populate_by_name=True,
        extra="ignore",
    )

    # Parallelism for Monte Carlo batches, 0 means one worker per CPU
    THREADS: int = Field(0, ge=0, alias="LT_INFLUENCE_THREADS")

    # Exact evaluation is exponential in the node count; these bound it
    EXACT_RECURSION_CAP: int = Field(
        20, ge=1, le=64, alias="LT_INFLUENCE_EXACT_RECURSION_CAP"
    )
    EXACT_PATHS_CAP: int = Field(12, ge=1, le=64, alias="LT_INFLUENCE_EXACT_PATHS_CAP")
    EXHAUSTIVE_BUDGET: int = Field(
        100_000, ge=1, alias="LT_INFLUENCE_EXHAUSTIVE_BUDGET"
    )  # number of K-subsets the exhaustive oracle may evaluate

    DEFAULT_RUNS: int = Field(10_000, ge=1, alias="LT_INFLUENCE_DEFAULT_RUNS")
    MC_BATCH_SIZE: int = Field(2048, ge=1, alias="LT_INFLUENCE_MC_BATCH_SIZE")

    TOLERANCE: float = Field(1e-9, gt=0, alias="LT_INFLUENCE_TOLERANCE")

    LOG_LEVEL: str = Field("WARNING", alias="LT_INFLUENCE_LOG_LEVEL")
    SHOW_PROGRESS: bool = Field(False, alias="LT_INFLUENCE_SHOW_PROGRESS")


_settings_instance: Settings | None = None


def get_settings() -> Settings:
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = Settings()
    return _settings_instance


def reset_settings() -> None:
    """Drop the cached settings so the next access re-reads the environment."""
    global _settings_instance
    _settings_instance = None


def resolve_threads(settings: Settings | None = None) -> int:
    threads = (settings or get_settings()).THREADS
    if threads == 0:
        return os.cpu_count() or 1
    return threads
