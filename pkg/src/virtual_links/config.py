"""Application configuration using Pydantic settings."""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings loaded from ``VL_``-prefixed environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="VL_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "Virtual Links API"
    app_version: str = "0.1.0"
    environment: Literal["development", "staging", "production"] = "development"

    # API
    api_v1_prefix: str = "/api/v1"

    # Search budget defaults
    max_expansions: int = Field(default=200_000, ge=0)
    extra_crossings: int = Field(default=4, ge=0)
    search_workers: int = Field(default=1, ge=1)

    # Invariants
    coloring_exhaustive_limit: int = Field(default=200_000, ge=1)
    skein_crosscheck_limit: int = Field(default=10, ge=0)
    # Largest code the invariants endpoint evaluates; the bracket sums 2^n states
    max_invariant_crossings: int = Field(default=16, ge=0)

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    log_json: bool = False


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
