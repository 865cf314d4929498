"""Tests for runtime settings."""

import pytest
from pydantic import ValidationError

from lt_influence.config.settings import Settings, get_settings, reset_settings, resolve_threads


class TestSettings:
    """Tests for Settings and its accessors."""

    def test_defaults(self):
        """Test the documented defaults."""
        settings = get_settings()
        assert settings.EXACT_RECURSION_CAP == 20
        assert settings.EXACT_PATHS_CAP == 12
        assert settings.TOLERANCE == 1e-9
        assert settings.SHOW_PROGRESS is False

    def test_cached(self):
        """Test that get_settings returns one instance until reset."""
        first = get_settings()
        assert get_settings() is first
        reset_settings()
        assert get_settings() is not first

    def test_env_override(self, monkeypatch):
        """Test that LT_INFLUENCE_* variables override the defaults."""
        monkeypatch.setenv("LT_INFLUENCE_EXACT_RECURSION_CAP", "15")
        monkeypatch.setenv("LT_INFLUENCE_SHOW_PROGRESS", "true")
        reset_settings()
        assert get_settings().EXACT_RECURSION_CAP == 15
        assert get_settings().SHOW_PROGRESS is True

    def test_dotenv(self, tmp_path):
        """Test that a .env file in the working directory is read."""
        (tmp_path / ".env").write_text("LT_INFLUENCE_DEFAULT_RUNS=42\n")
        reset_settings()
        assert get_settings().DEFAULT_RUNS == 42

    def test_cap_bound(self, monkeypatch):
        """Test that bitmask caps above 64 are rejected."""
        monkeypatch.setenv("LT_INFLUENCE_EXACT_RECURSION_CAP", "65")
        with pytest.raises(ValidationError):
            Settings()

    def test_resolve_threads(self, monkeypatch):
        """Test that 0 threads means one per CPU."""
        monkeypatch.setattr("os.cpu_count", lambda: 6)
        assert resolve_threads(Settings(LT_INFLUENCE_THREADS=0)) == 6
        assert resolve_threads(Settings(LT_INFLUENCE_THREADS=3)) == 3
