"""Tests for configuration module."""

import os
from unittest.mock import patch

import pytest
from pydantic import ValidationError
from virtual_links.config import Settings, get_settings


class TestSettings:
    """Tests for Settings class."""

    def test_default_settings(self) -> None:
        """Test default settings values."""
        settings = Settings()

        assert settings.app_name == "Virtual Links API"
        assert settings.app_version == "0.1.0"
        assert settings.environment == "development"
        assert settings.api_v1_prefix == "/api/v1"

    def test_search_defaults(self) -> None:
        """Test default search budget settings."""
        settings = Settings()

        assert settings.max_expansions == 200_000
        assert settings.extra_crossings == 4
        assert settings.search_workers == 1

    def test_invariant_defaults(self) -> None:
        """Test default invariant limits."""
        settings = Settings()

        assert settings.skein_crosscheck_limit == 10
        assert settings.max_invariant_crossings == 16

    def test_logging_defaults(self) -> None:
        """Test default logging settings."""
        settings = Settings()

        assert settings.log_level == "WARNING"
        assert settings.log_json is False

    def test_settings_from_env(self) -> None:
        """Test settings loaded from VL_ environment variables."""
        env_vars = {
            "VL_MAX_EXPANSIONS": "500",
            "VL_EXTRA_CROSSINGS": "2",
            "VL_SEARCH_WORKERS": "4",
            "VL_LOG_JSON": "true",
        }

        with patch.dict(os.environ, env_vars, clear=False):
            settings = Settings()

            assert settings.max_expansions == 500
            assert settings.extra_crossings == 2
            assert settings.search_workers == 4
            assert settings.log_json is True

    def test_negative_budget_rejected(self) -> None:
        """Test budget settings must be non-negative."""
        with pytest.raises(ValidationError):
            Settings(max_expansions=-1)

    def test_workers_at_least_one(self) -> None:
        """Test a worker pool needs at least one worker."""
        with pytest.raises(ValidationError):
            Settings(search_workers=0)

    def test_get_settings_cached(self) -> None:
        """Test get_settings returns cached instance."""
        get_settings.cache_clear()

        settings1 = get_settings()
        settings2 = get_settings()

        assert settings1 is settings2
