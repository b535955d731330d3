"""Cell decomposition of the link complement in a thickened surface.

The surface is refined into a cell complex: every crossing becomes a 3x3 grid of
squares, every strand edge a band of 3x3 cells (three segments, three columns) and
every face of the diagram one polygon. Taking the product with an interval cut into
five layers gives a complex for the thickened surface; the strands run through the
middle column of their bands and the middle row/column of the crossing squares, the
Over strand two layers above the Under strand. Removing the open tube around each
component leaves the complement, with the top and bottom surfaces and one torus per
link component as boundary.
"""

from collections import defaultdict
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

import networkx as nx
import structlog

from virtual_links.topology.codes import Passage
from virtual_links.topology.report import ValidationReport
from virtual_links.topology.surface_embed import (
    Dart,
    Edge,
    Port,
    SurfaceDiagram,
)

logger = structlog.get_logger(__name__)

LAYERS = 5  # intervals of the thickening; levels 0..LAYERS
UNDER_LAYER = 1
CIRCLE_LAYER = 2
OVER_LAYER = 3

# Sides of a crossing square in counterclockwise order, each listed counterclockwise.
_SIDES = (
    ((3, 0), (3, 1), (3, 2), (3, 3)),
    ((3, 3), (2, 3), (1, 3), (0, 3)),
    ((0, 3), (0, 2), (0, 1), (0, 0)),
    ((0, 0), (1, 0), (2, 0), (3, 0)),
)

BlockFace = tuple[int, int]  # (block id, index into the block's faces)


class ComplementError(Exception):
    """Base exception for complement construction."""


class NonCellularError(ComplementError):
    """Raised when the diagram has a face that is not a disk."""


class ComplementValidationError(ComplementError):
    """Raised when exporting a complex that fails its checks."""

    def __init__(self, report: ValidationReport) -> None:
        super().__init__("; ".join(issue.message for issue in report.issues))
        self.report = report


@dataclass(frozen=True)
class Block:
    """A 3-cell of the complement together with the diagram cell it lies over."""

    id: int
    type: str  # "face", "edge" or "crossing"
    origin: str
    faces: tuple[int, ...]


@dataclass
class ComplementComplex:
    """A 3-dimensional cell complex given by its cells and block gluings."""

    vertices: list[str]
    edges: list[tuple[int, int]]
    faces: list[tuple[int, ...]]
    blocks: list[Block]
    gluings: dict[BlockFace, BlockFace]
    boundary: dict[BlockFace, str]  # "top", "bottom" or "torus:k"
    surface_genera: tuple[int, ...]
    link_components: int

    @property
    def euler_characteristic(self) -> int:
        """Alternating cell count V - E + F - C."""
        return len(self.vertices) - len(self.edges) + len(self.faces) - len(self.blocks)

    def census(self) -> dict[str, int]:
        return {
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "faces": len(self.faces),
            "blocks": len(self.blocks),
            "gluings": len(self.gluings) // 2,
            "boundary_faces": len(self.boundary),
        }


@dataclass
class BoundaryPattern:
    """One meridian cycle of complex edges per link component."""

    curves: dict[int, tuple[int, ...]] = field(default_factory=dict)


# --- the refined surface -----------------------------------------------------


@dataclass
class _Surface2D:
    vertices: dict[Hashable, None] = field(default_factory=dict)
    edges: dict[tuple[Hashable, Hashable], None] = field(default_factory=dict)
    cells: dict[Hashable, tuple[tuple[Hashable, Hashable], ...]] = field(default_factory=dict)
    origin: dict[Hashable, tuple[str, str, tuple[int, ...]]] = field(default_factory=dict)

    def add_cell(self, key: Hashable, corners: list[Hashable], origin: tuple[str, str, tuple[int, ...]]) -> None:
        boundary = []
        for i, u in enumerate(corners):
            boundary.append(self.add_edge(u, corners[(i + 1) % len(corners)]))
        self.cells[key] = tuple(boundary)
        self.origin[key] = origin

    def add_edge(self, u: Hashable, v: Hashable) -> tuple[Hashable, Hashable]:
        self.vertices.setdefault(u)
        self.vertices.setdefault(v)
        edge = (u, v) if _order(u) <= _order(v) else (v, u)
        self.edges.setdefault(edge)
        return edge


def _order(key: Hashable) -> str:
    return repr(key)


def _side(d: SurfaceDiagram, dart: Dart) -> tuple[tuple[int, int], ...]:
    rotation = d.rotation[dart.crossing]
    return _SIDES[rotation.index(dart)]


def _square_vertex(label: int, point: tuple[int, int]) -> tuple[str, int, int, int]:
    return ("s", label, point[0], point[1])


def _band_vertex(d: SurfaceDiagram, edge: Edge, k: int, j: int) -> Hashable:
    if k == 0:
        return _square_vertex(edge.tail.crossing, _side(d, edge.tail)[3 - j])
    if k == 3:
        return _square_vertex(edge.head.crossing, _side(d, edge.head)[j])
    return ("b", edge.component, edge.position, k, j)


def _circle_vertex(c: int, k: int, j: int) -> Hashable:
    return ("c", c, k % 3, j)


def _middle_edge(d: SurfaceDiagram, dart: Dart) -> tuple[Hashable, Hashable]:
    side = _side(d, dart)
    return (_square_vertex(dart.crossing, side[1]), _square_vertex(dart.crossing, side[2]))


def _refine(d: SurfaceDiagram) -> _Surface2D:
    surface = _Surface2D()
    for crossing in d.crossings:
        for a in range(3):
            for b in range(3):
                corners = [(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)]
                surface.add_cell(
                    ("Q", crossing.label, a, b),
                    [_square_vertex(crossing.label, p) for p in corners],
                    ("crossing", str(crossing.label), (crossing.label,)),
                )
    for edge in d.edges:
        for k in range(3):
            for j in range(3):
                corners = [(k, j), (k + 1, j), (k + 1, j + 1), (k, j + 1)]
                surface.add_cell(
                    ("P", edge.component, edge.position, k, j),
                    [_band_vertex(d, edge, kk, jj) for kk, jj in corners],
                    ("edge", f"{edge.component}.{edge.position}", (edge.component, edge.position)),
                )
    for c in d.circles:
        for k in range(3):
            for j in range(3):
                corners = [(k, j), (k + 1, j), (k + 1, j + 1), (k, j + 1)]
                surface.add_cell(
                    ("C", c, k, j),
                    [_circle_vertex(c, kk, jj) for kk, jj in corners],
                    ("edge", f"circle:{c}", (c, -1)),
                )
    _add_face_polygons(d, surface)
    return surface


def _add_face_polygons(d: SurfaceDiagram, surface: _Surface2D) -> None:
    """Cap every boundary cycle of the ribbon surface with a polygon."""
    incidence: dict[tuple[Hashable, Hashable], int] = defaultdict(int)
    for boundary in surface.cells.values():
        for edge in boundary:
            incidence[edge] += 1
    exposed = nx.Graph()
    exposed.add_edges_from(edge for edge, count in incidence.items() if count == 1)

    face_of_vertex: dict[Hashable, int] = {}
    for index, face in enumerate(d.faces):
        for side in face.boundary_walks[0]:
            if isinstance(side, Dart):
                corner = _square_vertex(side.crossing, _side(d, side)[0])
            else:
                corner = _circle_vertex(side.component, 0, 0 if side.side == 0 else 3)
            face_of_vertex[corner] = index

    cycles = list(nx.connected_components(exposed))
    if len(cycles) != len(d.faces):
        raise ComplementError(f"ribbon surface has {len(cycles)} boundary cycles for {len(d.faces)} faces")
    for nodes in cycles:
        owners = {face_of_vertex[v] for v in nodes if v in face_of_vertex}
        if len(owners) != 1 or any(exposed.degree(v) != 2 for v in nodes):
            raise ComplementError("ribbon boundary cycle does not match a face walk")
        (index,) = owners
        cycle = [u for u, _ in nx.find_cycle(exposed.subgraph(nodes))]
        surface.add_cell(("F", index), cycle, ("face", str(index), (index,)))


# --- the thickened complex -------------------------------------------------


def _tube(d: SurfaceDiagram) -> dict[tuple[Hashable, int], int]:
    """Cells (2-cell, layer) of the strand tubes, mapped to their link component."""
    tube: dict[tuple[Hashable, int], int] = {}
    for crossing in d.crossings:
        for a in range(3):
            tube[(("Q", crossing.label, a, 1), OVER_LAYER)] = crossing.over[0]
            tube[(("Q", crossing.label, 1, a), UNDER_LAYER)] = crossing.under[0]
    for edge in d.edges:
        tail = OVER_LAYER if edge.tail.port is Port.OVER_OUT else UNDER_LAYER
        head = OVER_LAYER if edge.head.port is Port.OVER_IN else UNDER_LAYER
        tube[(("P", edge.component, edge.position, 0, 1), tail)] = edge.component
        for layer in range(min(tail, head), max(tail, head) + 1):
            tube[(("P", edge.component, edge.position, 1, 1), layer)] = edge.component
        tube[(("P", edge.component, edge.position, 2, 1), head)] = edge.component
    for c in d.circles:
        for k in range(3):
            tube[(("C", c, k, 1), CIRCLE_LAYER)] = c
    return tube


def _name(key: Hashable) -> str:
    if isinstance(key, tuple):
        return ".".join(_name(part) for part in key)
    return str(key)


def build_complement(d: SurfaceDiagram) -> tuple[ComplementComplex, BoundaryPattern]:
    """Build the complement complex of a cellular diagram and its meridian pattern.

    Raises:
        NonCellularError: If some face of ``d`` is not a disk
    """
    if not d.is_cellular:
        raise NonCellularError("the diagram has non-disk faces; destabilize it first")
    surface = _refine(d)
    tube = _tube(d)

    levels = range(LAYERS + 1)
    vertex_ids: dict[tuple[Hashable, int], int] = {}
    vertices: list[str] = []
    for v in surface.vertices:
        for z in levels:
            vertex_ids[(v, z)] = len(vertices)
            vertices.append(f"{_name(v)}@{z}")

    edge_ids: dict[tuple[str, Hashable, int], int] = {}
    edges: list[tuple[int, int]] = []
    for e in surface.edges:
        for z in levels:
            edge_ids[("h", e, z)] = len(edges)
            edges.append((vertex_ids[(e[0], z)], vertex_ids[(e[1], z)]))
    for v in surface.vertices:
        for layer in range(LAYERS):
            edge_ids[("v", v, layer)] = len(edges)
            edges.append((vertex_ids[(v, layer)], vertex_ids[(v, layer + 1)]))

    # every 2-cell with the 3-cells on either side of it
    face_boundary: dict[tuple[str, Hashable, int], tuple[int, ...]] = {}
    face_sides: dict[tuple[str, Hashable, int], list[tuple[Hashable, int]]] = defaultdict(list)
    for cell, boundary in surface.cells.items():
        for z in levels:
            face_boundary[("h", cell, z)] = tuple(edge_ids[("h", e, z)] for e in boundary)
        for layer in range(LAYERS):
            face_sides[("h", cell, layer)].append((cell, layer))
            face_sides[("h", cell, layer + 1)].append((cell, layer))
            for e in boundary:
                face_sides[("v", e, layer)].append((cell, layer))
    for e in surface.edges:
        for layer in range(LAYERS):
            face_boundary[("v", e, layer)] = (
                edge_ids[("h", e, layer)],
                edge_ids[("v", e[1], layer)],
                edge_ids[("h", e, layer + 1)],
                edge_ids[("v", e[0], layer)],
            )

    kept_faces = [key for key in face_boundary if not all(side in tube for side in face_sides[key])]
    face_ids = {key: i for i, key in enumerate(kept_faces)}
    faces = [face_boundary[key] for key in kept_faces]

    solid = [
        (cell, layer) for cell in surface.cells for layer in range(LAYERS) if (cell, layer) not in tube
    ]
    solid.sort(key=lambda cl: (surface.origin[cl[0]][0], surface.origin[cl[0]][2], _order(cl[0]), cl[1]))
    blocks: list[Block] = []
    block_ids: dict[tuple[Hashable, int], int] = {}
    for cell, layer in solid:
        kind, origin, _ = surface.origin[cell]
        own = [("h", cell, layer), ("h", cell, layer + 1)]
        own.extend(("v", e, layer) for e in surface.cells[cell])
        block_ids[(cell, layer)] = len(blocks)
        blocks.append(Block(len(blocks), kind, origin, tuple(face_ids[key] for key in own)))

    holders: dict[int, list[BlockFace]] = defaultdict(list)
    for block in blocks:
        for local, face in enumerate(block.faces):
            holders[face].append((block.id, local))
    gluings: dict[BlockFace, BlockFace] = {}
    boundary: dict[BlockFace, str] = {}
    for key, face in face_ids.items():
        held = holders[face]
        if len(held) == 2:
            gluings[held[0]] = held[1]
            gluings[held[1]] = held[0]
            continue
        (only,) = held
        kind, _, z = key
        if kind == "h" and z == 0:
            boundary[only] = "bottom"
        elif kind == "h" and z == LAYERS:
            boundary[only] = "top"
        else:
            (tube_cell,) = [side for side in face_sides[key] if side in tube]
            boundary[only] = f"torus:{tube[tube_cell]}"

    complex_ = ComplementComplex(
        vertices=vertices,
        edges=edges,
        faces=faces,
        blocks=blocks,
        gluings=gluings,
        boundary=boundary,
        surface_genera=tuple(component.genus for component in d.surface_components),
        link_components=d.code.component_count,
    )
    pattern = BoundaryPattern({k: _meridian(d, k, edge_ids) for k in range(d.code.component_count)})
    logger.info("complement_built", **complex_.census(), euler=complex_.euler_characteristic)
    return complex_, pattern


def _meridian(d: SurfaceDiagram, k: int, edge_ids: Mapping[tuple[str, Hashable, int], int]) -> tuple[int, ...]:
    """Boundary of the tube cross-section at a fixed junction of component ``k``."""
    component = d.code.components[k]
    if not component:
        ends: tuple[Hashable, Hashable] = (_circle_vertex(k, 0, 1), _circle_vertex(k, 0, 2))
        layer = CIRCLE_LAYER
    else:
        unders = [o for o, symbol in enumerate(component) if symbol.passage is Passage.UNDER]
        if unders:
            label = component[unders[0]].label
            ends = _middle_edge(d, Dart(label, Port.UNDER_IN))
            layer = UNDER_LAYER
        else:
            ends = _middle_edge(d, Dart(component[0].label, Port.OVER_OUT))
            layer = OVER_LAYER
    e = ends if _order(ends[0]) <= _order(ends[1]) else (ends[1], ends[0])
    return (
        edge_ids[("h", e, layer)],
        edge_ids[("v", e[1], layer)],
        edge_ids[("h", e, layer + 1)],
        edge_ids[("v", e[0], layer)],
    )


# --- validation ------------------------------------------------------------


def _boundary_components(c: ComplementComplex) -> list[tuple[set[int], set[str]]]:
    """Edge-connected pieces of the boundary: (face ids, labels)."""
    graph = nx.Graph()
    by_edge: dict[int, list[int]] = defaultdict(list)
    labels: dict[int, str] = {}
    for (block, local), label in c.boundary.items():
        face = c.blocks[block].faces[local]
        graph.add_node(face)
        labels[face] = label
        for e in c.faces[face]:
            by_edge[e].append(face)
    for sharing in by_edge.values():
        for other in sharing[1:]:
            graph.add_edge(sharing[0], other)
    return [(set(nodes), {labels[f] for f in nodes}) for nodes in nx.connected_components(graph)]


def _surface_euler(c: ComplementComplex, faces: Iterable[int]) -> int:
    face_list = list(faces)
    edges = {e for f in face_list for e in c.faces[f]}
    vertices = {v for e in edges for v in c.edges[e]}
    return len(vertices) - len(edges) + len(face_list)


def check_complex(c: ComplementComplex, p: BoundaryPattern) -> ValidationReport:
    """Verify gluing involution, Euler law, boundary census and meridian closure."""
    report = ValidationReport()

    all_faces = {(b.id, i) for b in c.blocks for i in range(len(b.faces))}
    for x, y in sorted(c.gluings.items()):
        if x == y or c.gluings.get(y) != x:
            report.add("gluing-involution", f"block face {x} is glued to {y} but not back")
        elif c.blocks[x[0]].faces[x[1]] != c.blocks[y[0]].faces[y[1]]:
            report.add("gluing-involution", f"block faces {x} and {y} are different cells")
    for x in sorted(all_faces):
        glued, bounding = x in c.gluings, x in c.boundary
        if glued == bounding:
            report.add("unmatched-face", f"block face {x} must be either glued or on the boundary")

    expected = sum(2 - 2 * g for g in c.surface_genera)
    if c.euler_characteristic != expected:
        report.add("euler-law", f"complex has Euler characteristic {c.euler_characteristic}, expected {expected}")

    pieces = _boundary_components(c)
    tori: dict[int, int] = defaultdict(int)
    surfaces: list[int] = []
    for faces, labels in pieces:
        chi = _surface_euler(c, faces)
        if len(labels) != 1:
            report.add("boundary-census", f"boundary piece mixes labels {sorted(labels)}")
            continue
        (label,) = labels
        if label.startswith("torus:"):
            tori[int(label.split(":", 1)[1])] += 1
            if chi != 0:
                report.add("boundary-census", f"{label} has Euler characteristic {chi}")
        else:
            surfaces.append((2 - chi) // 2)
    if sorted(surfaces) != sorted(list(c.surface_genera) * 2):
        report.add(
            "boundary-census",
            f"boundary surfaces of genera {sorted(surfaces)}, expected two copies of {sorted(c.surface_genera)}",
        )
    if len(pieces) != 2 * len(c.surface_genera) + c.link_components or any(
        tori.get(k) != 1 for k in range(c.link_components)
    ):
        report.add(
            "boundary-census",
            f"{len(pieces)} boundary pieces, expected {2 * len(c.surface_genera)} surfaces and {c.link_components} tori",
        )

    torus_edges: dict[int, set[int]] = defaultdict(set)
    for (block, local), label in c.boundary.items():
        if label.startswith("torus:"):
            torus_edges[int(label.split(":", 1)[1])].update(c.faces[c.blocks[block].faces[local]])
    for k in range(c.link_components):
        curve = p.curves.get(k)
        if not curve:
            report.add("pattern-closure", f"no meridian for component {k}")
            continue
        if not set(curve) <= torus_edges[k]:
            report.add("pattern-closure", f"meridian of component {k} leaves its torus")
        cycle = nx.MultiGraph()
        cycle.add_edges_from(c.edges[e] for e in curve if 0 <= e < len(c.edges))
        if (
            cycle.number_of_edges() != len(curve)
            or any(degree != 2 for _, degree in cycle.degree())
            or not nx.is_connected(cycle)
        ):
            report.add("pattern-closure", f"meridian of component {k} is not a closed cycle")
    return report


# --- export ----------------------------------------------------------------


def export_complex(c: ComplementComplex, p: BoundaryPattern) -> dict[str, Any]:
    """Deterministic JSON document of a validated complex.

    Raises:
        ComplementValidationError: If :func:`check_complex` reports a problem
    """
    report = check_complex(c, p)
    if report.issues:
        raise ComplementValidationError(report)
    tori: dict[str, list[list[int]]] = defaultdict(list)
    top, bottom = [], []
    for block_face, label in sorted(c.boundary.items()):
        if label == "top":
            top.append(list(block_face))
        elif label == "bottom":
            bottom.append(list(block_face))
        else:
            tori[label.split(":", 1)[1]].append(list(block_face))
    return {
        "cells": {
            "vertices": list(c.vertices),
            "edges": [list(e) for e in c.edges],
            "faces": [list(f) for f in c.faces],
        },
        "blocks": [{"id": b.id, "type": b.type, "origin": b.origin, "faces": list(b.faces)} for b in c.blocks],
        "gluings": [[list(x), list(y)] for x, y in sorted(c.gluings.items()) if x < y],
        "boundary": {"top": top, "bottom": bottom, "tori": dict(sorted(tori.items(), key=lambda kv: int(kv[0])))},
        "pattern": {str(k): list(curve) for k, curve in sorted(p.curves.items())},
        "census": {
            "surface_genera": list(c.surface_genera),
            "link_components": c.link_components,
            "euler_characteristic": c.euler_characteristic,
        },
    }


def import_complex(document: Mapping[str, Any]) -> tuple[ComplementComplex, BoundaryPattern]:
    """Rebuild a complex from an exported document.

    Raises:
        ComplementError: If the document is malformed
    """
    try:
        cells = document["cells"]
        blocks = [Block(int(b["id"]), b["type"], b["origin"], tuple(b["faces"])) for b in document["blocks"]]
        gluings: dict[BlockFace, BlockFace] = {}
        for x, y in document["gluings"]:
            gluings[(x[0], x[1])] = (y[0], y[1])
            gluings[(y[0], y[1])] = (x[0], x[1])
        boundary: dict[BlockFace, str] = {}
        for key in ("top", "bottom"):
            for block, local in document["boundary"][key]:
                boundary[(block, local)] = key
        for k, entries in document["boundary"]["tori"].items():
            for block, local in entries:
                boundary[(block, local)] = f"torus:{k}"
        census = document["census"]
        complex_ = ComplementComplex(
            vertices=list(cells["vertices"]),
            edges=[(e[0], e[1]) for e in cells["edges"]],
            faces=[tuple(f) for f in cells["faces"]],
            blocks=blocks,
            gluings=gluings,
            boundary=boundary,
            surface_genera=tuple(census["surface_genera"]),
            link_components=int(census["link_components"]),
        )
        pattern = BoundaryPattern({int(k): tuple(v) for k, v in document["pattern"].items()})
    except (KeyError, TypeError, ValueError) as e:
        raise ComplementError(f"malformed complement document: {e}") from e
    return complex_, pattern


def reconstruct_census(c: ComplementComplex, p: BoundaryPattern) -> dict[str, int]:
    """Recover the diagram's cell counts from the block origins and the pattern."""
    origins: dict[str, set[str]] = defaultdict(set)
    for block in c.blocks:
        origins[block.type].add(block.origin)
    circles = {o for o in origins["edge"] if o.startswith("circle:")}
    return {
        "crossings": len(origins["crossing"]),
        "edges": len(origins["edge"] - circles),
        "circles": len(circles),
        "faces": len(origins["face"]),
        "link_components": len(p.curves),
        "surface_components": len(c.surface_genera),
    }


def diagram_census(d: SurfaceDiagram) -> dict[str, int]:
    """The same counts read directly off a diagram."""
    return {
        "crossings": len(d.crossings),
        "edges": len(d.edges),
        "circles": len(d.circles),
        "faces": len(d.faces),
        "link_components": d.code.component_count,
        "surface_components": len(d.surface_components),
    }
