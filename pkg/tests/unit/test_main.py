"""Tests for main FastAPI application."""

from unittest.mock import patch

import pytest
from httpx import AsyncClient
from virtual_links.main import app, lifespan


class TestLifespan:
    """Tests for application lifespan."""

    @pytest.mark.asyncio
    async def test_lifespan_configures_logging(self) -> None:
        """Test lifespan configures logging on startup."""
        with patch("virtual_links.main.configure_logging") as configure:
            async with lifespan(app):
                pass

            configure.assert_called_once()


class TestHealthCheck:
    """Tests for health check endpoint."""

    @pytest.mark.asyncio
    async def test_health_check_healthy(self, client: AsyncClient) -> None:
        """Test health check returns healthy status."""
        response = await client.get("/health")

        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert data["version"] == "0.1.0"
        assert data["environment"] == "development"


class TestRoot:
    """Tests for root endpoint."""

    @pytest.mark.asyncio
    async def test_root(self, client: AsyncClient) -> None:
        """Test root returns name, version and docs link."""
        response = await client.get("/")

        assert response.status_code == 200
        assert response.json() == {"name": "Virtual Links API", "version": "0.1.0", "docs": "/docs"}


class TestMetricsEndpoint:
    """Tests for the Prometheus endpoint."""

    @pytest.mark.asyncio
    async def test_metrics_after_request(self, client: AsyncClient) -> None:
        """Test API requests appear in the metrics output."""
        await client.post("/api/v1/codes/parse", json={"code": "0"})

        response = await client.get("/metrics")

        assert response.status_code == 200
        assert 'endpoint="/api/v1/codes/parse"' in response.text
        assert "verdicts_total" in response.text

    @pytest.mark.asyncio
    async def test_openapi_under_prefix(self, client: AsyncClient) -> None:
        """Test the schema is served under the API prefix."""
        response = await client.get("/api/v1/openapi.json")

        assert response.status_code == 200
        assert "/api/v1/compare" in response.json()["paths"]
