"""Complement API endpoints."""

from typing import Any

from fastapi import APIRouter, HTTPException, status

from virtual_links.api.deps import parse_or_422
from virtual_links.schemas.code import CodeRequest
from virtual_links.schemas.complement import ComplementDocument
from virtual_links.topology.complement import ComplementError, build_complement, export_complex
from virtual_links.topology.surface_embed import carter_embed

router = APIRouter()


@router.post("", response_model=ComplementDocument)
def code_complement(body: CodeRequest) -> dict[str, Any]:
    """Block decomposition of the link complement with its meridian pattern."""
    code = parse_or_422(body.code)
    try:
        return export_complex(*build_complement(carter_embed(code)))
    except ComplementError as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=str(e),
        ) from e
