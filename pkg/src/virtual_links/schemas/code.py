"""Gauss code schemas for request/response validation."""

from pydantic import BaseModel, Field

from virtual_links.schemas.trace import MoveTraceModel
from virtual_links.topology.codes import (
    GaussCode,
    canonical_form,
    canonical_relabel,
    serialize_gauss,
)
from virtual_links.topology.search import MinimumResult
from virtual_links.topology.surface_embed import SurfaceDiagram, supporting_genus


class CodeRequest(BaseModel):
    """A single code in text form."""

    code: str = Field(..., min_length=1, max_length=20_000, examples=["O1+U2+O3+U1+O2+U3+"])


class BudgetRequest(BaseModel):
    """Optional search caps; missing values fall back to the configured defaults."""

    max_crossings: int | None = Field(None, ge=0)
    max_expansions: int | None = Field(None, ge=0)


class MinimumRequest(CodeRequest):
    """Code plus an optional budget for the minimal-representative search."""

    budget: BudgetRequest | None = None


class ParseResponse(BaseModel):
    """Parsed code summary."""

    code: str
    components: int
    crossings: int
    labels: list[int]

    @classmethod
    def from_code(cls, code: GaussCode) -> "ParseResponse":
        return cls(
            code=serialize_gauss(code),
            components=code.component_count,
            crossings=code.crossing_count,
            labels=code.labels(),
        )


class CanonicalResponse(BaseModel):
    """Canonical spellings of a code."""

    code: str
    relabeled: str
    canonical: str

    @classmethod
    def from_code(cls, code: GaussCode) -> "CanonicalResponse":
        return cls(
            code=serialize_gauss(code),
            relabeled=serialize_gauss(canonical_relabel(code)),
            canonical=serialize_gauss(canonical_form(code)),
        )


class SurfaceComponentSummary(BaseModel):
    """One component of the carrier surface."""

    genus: int
    faces: int
    crossings: list[int]
    link_components: list[int]


class GenusResponse(BaseModel):
    """Supporting genus of the Carter surface."""

    code: str
    genus: list[int]
    total_genus: int
    cellular: bool
    surface_components: list[SurfaceComponentSummary]

    @classmethod
    def from_diagram(cls, d: SurfaceDiagram) -> "GenusResponse":
        genus = supporting_genus(d)
        return cls(
            code=serialize_gauss(d.code),
            genus=genus,
            total_genus=sum(genus),
            cellular=d.is_cellular,
            surface_components=[
                SurfaceComponentSummary(
                    genus=component.genus,
                    faces=len(component.faces),
                    crossings=list(component.crossings),
                    link_components=list(component.link_components),
                )
                for component in d.surface_components
            ],
        )


class MinimumResponse(BaseModel):
    """Best representative found within the budget.

    ``complete`` is true only when the capped neighbourhood was explored entirely.
    """

    code: str
    genus: int
    crossings: int
    complete: bool
    expansions: int
    trace: MoveTraceModel

    @classmethod
    def from_result(cls, result: MinimumResult) -> "MinimumResponse":
        return cls(
            code=serialize_gauss(result.code),
            genus=result.genus,
            crossings=result.code.crossing_count,
            complete=result.complete,
            expansions=result.stats.total_expansions,
            trace=MoveTraceModel.from_trace(result.trace),
        )
