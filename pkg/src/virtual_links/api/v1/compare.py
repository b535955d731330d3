"""Comparison API endpoints."""

from fastapi import APIRouter

from virtual_links.api.deps import DeciderServiceDep, SettingsDep, budget_for, parse_or_422
from virtual_links.schemas.verdict import CompareRequest, VerdictResponse

router = APIRouter()


@router.post("", response_model=VerdictResponse)
def compare_codes(
    body: CompareRequest,
    service: DeciderServiceDep,
    settings: SettingsDep,
) -> VerdictResponse:
    """Decide whether two codes present the same virtual link."""
    a = parse_or_422(body.a, field="a")
    b = parse_or_422(body.b, field="b")
    verdict = service.decide(a, b, budget_for(settings, body.budget, a, b))
    return VerdictResponse.from_verdict(verdict)
