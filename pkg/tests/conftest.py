"""Shared test fixtures."""

from collections.abc import AsyncGenerator, Iterator

import pytest
from httpx import ASGITransport, AsyncClient

from virtual_links.config import get_settings
from virtual_links.main import app
from virtual_links.topology.codes import GaussCode, parse_gauss

UNKNOT = "0"
KINKED_UNKNOT = "O1+U1+"
TREFOIL = "O1+U2+O3+U1+O2+U3+"
MIRROR_TREFOIL = "O1-U2-O3-U1-O2-U3-"
VIRTUAL_TREFOIL = "O1+O2+U1+U2+"
HOPF = "O1+U2+/U1+O2+"
VIRTUAL_HOPF = "O1+/U1+"
TRIVIAL_2_LINK = "0/0"
# One unknot with a cancelling R2 bigon
R2_BIGON = "O1+U2-U1+O2-"

CORPUS = [UNKNOT, KINKED_UNKNOT, TREFOIL, MIRROR_TREFOIL, VIRTUAL_TREFOIL, HOPF, VIRTUAL_HOPF]


@pytest.fixture(autouse=True)
def clear_settings_cache() -> Iterator[None]:
    """Settings are re-read from the environment by every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def trefoil() -> GaussCode:
    """Standard 3-crossing trefoil."""
    return parse_gauss(TREFOIL)


@pytest.fixture
def virtual_trefoil() -> GaussCode:
    """Two-crossing virtual trefoil."""
    return parse_gauss(VIRTUAL_TREFOIL)


@pytest.fixture
async def client() -> AsyncGenerator[AsyncClient, None]:
    """Test HTTP client bound to the application."""
    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://test") as ac:
        yield ac
