"""Invariant report schemas."""

from pydantic import BaseModel, Field

from virtual_links.schemas.code import CodeRequest


class InvariantsRequest(CodeRequest):
    """Code plus whether to cross-check the bracket with the skein evaluator."""

    check: bool = False


class InvariantReport(BaseModel):
    """Every fingerprint invariant of a code.

    Polynomial exponents are string keys so JSON keys stay exact.
    """

    components: int
    f_poly: dict[str, int]
    odd_writhe: int | None
    linking: list[list[list[int]]] = Field(description="(over, under) sign sums per component pair")
    colorings: dict[str, int]
    bracket_checked: bool = False
