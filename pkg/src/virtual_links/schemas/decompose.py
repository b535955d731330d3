"""Split decomposition schemas."""

from typing import Any

from pydantic import BaseModel

from virtual_links.services.decompose_service import Classification, SplitDecomposition
from virtual_links.topology.codes import GaussCode, serialize_gauss


class PartModel(BaseModel):
    """One split part and, when classified, its classification and witness."""

    components: list[int]
    code: str
    classification: Classification | None = None
    witness: dict[str, Any] | None = None
    representative: str | None = None


class DecomposeResponse(BaseModel):
    """Split parts of a destabilized diagram."""

    code: str
    parts: list[PartModel]

    @classmethod
    def from_decomposition(
        cls, code: GaussCode, decomposition: SplitDecomposition
    ) -> "DecomposeResponse":
        parts = []
        for part in decomposition.parts:
            model = PartModel(components=list(part.components), code=serialize_gauss(part.code))
            if part.result is not None:
                result = part.result.to_dict()
                model.classification = part.result.classification
                model.witness = result["witness"]
                model.representative = result.get("representative")
            parts.append(model)
        return cls(code=serialize_gauss(code), parts=parts)
