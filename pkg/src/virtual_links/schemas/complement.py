"""Complement export schemas."""

from pydantic import BaseModel, Field


class CellsModel(BaseModel):
    vertices: list[str]
    edges: list[tuple[int, int]]
    faces: list[list[int]]


class BlockModel(BaseModel):
    """A 3-cell and the diagram cell it lies over."""

    id: int
    type: str = Field(pattern=r"^(face|edge|crossing)$")
    origin: str
    faces: list[int]


class BoundaryModel(BaseModel):
    top: list[tuple[int, int]]
    bottom: list[tuple[int, int]]
    tori: dict[str, list[tuple[int, int]]]


class CensusModel(BaseModel):
    surface_genera: list[int]
    link_components: int
    euler_characteristic: int


class ComplementDocument(BaseModel):
    """Exported complement with its meridian pattern.

    Block faces are ``(block id, local face index)`` pairs; each gluing lists its pair once.
    """

    cells: CellsModel
    blocks: list[BlockModel]
    gluings: list[tuple[tuple[int, int], tuple[int, int]]]
    boundary: BoundaryModel
    pattern: dict[str, list[int]]
    census: CensusModel
