"""Fixtures shared by unit, integration and CLI tests."""

import pytest

from lt_influence.config.settings import reset_settings


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Run every test against default settings, whatever the environment holds.

    Tests that need a different value set the LT_INFLUENCE_* variable with
    ``monkeypatch`` and call ``reset_settings()``.
    """
    for name in (
        "THREADS",
        "EXACT_RECURSION_CAP",
        "EXACT_PATHS_CAP",
        "EXHAUSTIVE_BUDGET",
        "DEFAULT_RUNS",
        "MC_BATCH_SIZE",
        "TOLERANCE",
        "LOG_LEVEL",
        "SHOW_PROGRESS",
    ):
        monkeypatch.delenv(f"LT_INFLUENCE_{name}", raising=False)
    # Keep a developer .env out of the tests
    monkeypatch.chdir(tmp_path)
    reset_settings()
    yield
    reset_settings()
