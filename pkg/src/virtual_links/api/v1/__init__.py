"""API v1 package."""

from fastapi import APIRouter

from virtual_links.api.v1.codes import router as codes_router
from virtual_links.api.v1.compare import router as compare_router
from virtual_links.api.v1.complement import router as complement_router
from virtual_links.api.v1.invariants import router as invariants_router

router = APIRouter()
router.include_router(codes_router, prefix="/codes", tags=["codes"])
router.include_router(compare_router, prefix="/compare", tags=["compare"])
router.include_router(complement_router, prefix="/complement", tags=["complement"])
router.include_router(invariants_router, prefix="/invariants", tags=["invariants"])

__all__ = ["router"]
