"""Gauss code API endpoints."""

from fastapi import APIRouter

from virtual_links.api.deps import (
    DeciderServiceDep,
    DecomposeServiceDep,
    SettingsDep,
    budget_for,
    parse_or_422,
)
from virtual_links.schemas.code import (
    CanonicalResponse,
    CodeRequest,
    GenusResponse,
    MinimumRequest,
    MinimumResponse,
    ParseResponse,
)
from virtual_links.schemas.decompose import DecomposeResponse
from virtual_links.topology.surface_embed import carter_embed

router = APIRouter()


@router.post("/parse", response_model=ParseResponse)
def parse_code(body: CodeRequest) -> ParseResponse:
    """Parse and validate code text."""
    return ParseResponse.from_code(parse_or_422(body.code))


@router.post("/canonical", response_model=CanonicalResponse)
def canonical_code(body: CodeRequest) -> CanonicalResponse:
    """Canonical relabeling and the rotation-independent canonical form."""
    return CanonicalResponse.from_code(parse_or_422(body.code))


@router.post("/genus", response_model=GenusResponse)
def code_genus(body: CodeRequest) -> GenusResponse:
    """Genus of each component of the Carter surface."""
    return GenusResponse.from_diagram(carter_embed(parse_or_422(body.code)))


@router.post("/minimum", response_model=MinimumResponse)
def minimum_code(
    body: MinimumRequest,
    service: DeciderServiceDep,
    settings: SettingsDep,
) -> MinimumResponse:
    """
    Least-genus, least-crossing representative reachable within the budget.

    Budget values missing from the request fall back to the configured defaults.
    """
    code = parse_or_422(body.code)
    result = service.canonical_minimum(code, budget_for(settings, body.budget, code))
    return MinimumResponse.from_result(result)


@router.post("/decompose", response_model=DecomposeResponse)
def decompose_code(
    body: MinimumRequest,
    service: DecomposeServiceDep,
    settings: SettingsDep,
) -> DecomposeResponse:
    """Destabilize, split into parts, and classify each part within the budget."""
    code = parse_or_422(body.code)
    decomposition = service.decompose(code, budget_for(settings, body.budget, code))
    return DecomposeResponse.from_decomposition(code, decomposition)
