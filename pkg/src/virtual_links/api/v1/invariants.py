"""Invariant API endpoints."""

from fastapi import APIRouter, HTTPException, status

from virtual_links.api.deps import SettingsDep, parse_or_422
from virtual_links.schemas.invariants import InvariantReport, InvariantsRequest
from virtual_links.topology.invariants import InvariantError, check_bracket, fingerprint

router = APIRouter()


@router.post("", response_model=InvariantReport)
def code_invariants(body: InvariantsRequest, settings: SettingsDep) -> InvariantReport:
    """
    Fingerprint of a code.

    With ``check`` the bracket is also evaluated by skein recursion, for codes up to
    the configured crossing limit. Codes above ``max_invariant_crossings`` are
    rejected with 422.
    """
    code = parse_or_422(body.code)
    limit = settings.max_invariant_crossings
    if code.crossing_count > limit:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail={
                "field": "code",
                "message": f"{code.crossing_count} crossings exceed the limit of {limit}",
                "limit": limit,
            },
        )
    checked = body.check and code.crossing_count <= settings.skein_crosscheck_limit
    if checked:
        try:
            check_bracket(code)
        except InvariantError as e:
            raise HTTPException(
                status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
                detail=str(e),
            ) from e
    report = fingerprint(code, settings.coloring_exhaustive_limit).to_json()
    return InvariantReport(**report, bracket_checked=checked)
