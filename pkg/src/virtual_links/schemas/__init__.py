"""Pydantic schemas for request/response validation."""

from virtual_links.schemas.code import (
    BudgetRequest,
    CanonicalResponse,
    CodeRequest,
    GenusResponse,
    MinimumRequest,
    MinimumResponse,
    ParseResponse,
    SurfaceComponentSummary,
)
from virtual_links.schemas.complement import ComplementDocument
from virtual_links.schemas.invariants import InvariantReport, InvariantsRequest
from virtual_links.schemas.trace import MoveModel, MoveTraceModel
from virtual_links.schemas.verdict import CompareRequest, VerdictResponse

__all__ = [
    "BudgetRequest",
    "CanonicalResponse",
    "CodeRequest",
    "CompareRequest",
    "ComplementDocument",
    "GenusResponse",
    "InvariantReport",
    "InvariantsRequest",
    "MinimumRequest",
    "MinimumResponse",
    "MoveModel",
    "MoveTraceModel",
    "ParseResponse",
    "SurfaceComponentSummary",
    "VerdictResponse",
]
