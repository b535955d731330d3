"""Move trace schemas."""

from typing import Any

from pydantic import BaseModel, Field

from virtual_links.topology.moves import MoveKind, MoveTrace


class MoveModel(BaseModel):
    """One move in JSON form."""

    kind: MoveKind
    site: tuple[int, int]
    params: dict[str, Any] = Field(default_factory=dict)


class MoveTraceModel(BaseModel):
    """A start code and the moves applied to it, in order."""

    start: str
    steps: list[MoveModel] = Field(default_factory=list)

    @classmethod
    def from_trace(cls, trace: MoveTrace) -> "MoveTraceModel":
        return cls.model_validate(trace.to_dict())

    def to_trace(self) -> MoveTrace:
        """Rebuild the in-memory trace.

        Raises:
            GaussCodeError: If the start code is invalid
            MoveError: If a step is malformed
        """
        return MoveTrace.from_dict(self.model_dump(mode="json"))
