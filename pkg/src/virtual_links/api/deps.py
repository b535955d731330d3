"""FastAPI dependencies for dependency injection."""

from typing import Annotated

from fastapi import Depends, HTTPException, status

from virtual_links.config import Settings, get_settings
from virtual_links.schemas.code import BudgetRequest
from virtual_links.services import (
    DeciderService,
    DecomposeConfig,
    DecomposeService,
    decider_config,
    resolve_budget,
)
from virtual_links.topology.codes import (
    GaussCode,
    GaussCodeSyntaxError,
    GaussCodeValidationError,
    parse_gauss,
)
from virtual_links.topology.search import Budget

SettingsDep = Annotated[Settings, Depends(get_settings)]


def get_decider_service(settings: SettingsDep) -> DeciderService:
    """Get decider service."""
    return DeciderService(decider_config(settings))


def get_decompose_service(settings: SettingsDep) -> DecomposeService:
    """Get decompose service."""
    return DecomposeService(
        DecomposeConfig(
            workers=settings.search_workers,
            coloring_exhaustive_limit=settings.coloring_exhaustive_limit,
        )
    )


DeciderServiceDep = Annotated[DeciderService, Depends(get_decider_service)]
DecomposeServiceDep = Annotated[DecomposeService, Depends(get_decompose_service)]


def parse_or_422(text: str, field: str = "code") -> GaussCode:
    """Parse code text, mapping parse errors to 422 with the offending position."""
    try:
        return parse_gauss(text)
    except GaussCodeSyntaxError as e:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail={"field": field, "message": str(e), "position": e.position},
        ) from e
    except GaussCodeValidationError as e:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail={"field": field, "message": str(e), "issues": e.report.codes()},
        ) from e


def budget_for(settings: Settings, request: BudgetRequest | None, *codes: GaussCode) -> Budget:
    """Request budget with configured defaults filled in."""
    request = request or BudgetRequest()
    return resolve_budget(
        settings,
        *codes,
        max_crossings=request.max_crossings,
        max_expansions=request.max_expansions,
    )
