"""Verdict schemas."""

from typing import Any

from pydantic import BaseModel

from virtual_links.schemas.code import BudgetRequest
from virtual_links.services.verdict import Verdict, VerdictKind
from virtual_links.topology.search import Budget


class CompareRequest(BaseModel):
    """Two codes to compare."""

    a: str
    b: str
    budget: BudgetRequest | None = None


class VerdictResponse(BaseModel):
    """Verdict document: kind, certificate, budget and what was explored."""

    verdict: VerdictKind
    certificate: dict[str, Any]
    budget: Budget
    explored: dict[str, Any]

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "VerdictResponse":
        return cls.model_validate(verdict.to_dict())
