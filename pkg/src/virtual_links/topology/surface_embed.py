"""Link diagrams on thickened surfaces: Carter embedding, stabilization, destabilization."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

import networkx as nx
import structlog
from networkx.utils import UnionFind

from virtual_links.topology.codes import (
    GaussCode,
    Passage,
    Position,
    Symbol,
    first_appearance_mapping,
    serialize_gauss,
)
from virtual_links.topology.report import ValidationReport

logger = structlog.get_logger(__name__)


class SurfaceError(Exception):
    """Base exception for surface diagram operations."""


class InvalidFaceError(SurfaceError):
    """Raised when a face reference does not exist or is unusable."""


class EmptyLinkError(SurfaceError):
    """Raised when removing empty components would leave nothing."""


class Port(str, Enum):
    """The four darts of a crossing."""

    OVER_OUT = "oo"
    UNDER_OUT = "uo"
    OVER_IN = "oi"
    UNDER_IN = "ui"


# counterclockwise order of darts at a crossing
POSITIVE_ROTATION = (Port.OVER_OUT, Port.UNDER_OUT, Port.OVER_IN, Port.UNDER_IN)
NEGATIVE_ROTATION = (Port.OVER_OUT, Port.UNDER_IN, Port.OVER_IN, Port.UNDER_OUT)
_PORT_ORDER = {port: i for i, port in enumerate(POSITIVE_ROTATION)}


class Dart(NamedTuple):
    """A half-edge at a crossing."""

    crossing: int
    port: Port

    def __str__(self) -> str:
        return f"{self.crossing}{self.port.value}"


class CircleSide(NamedTuple):
    """One side of a crossing-free circle."""

    component: int
    side: int  # 0 = left, 1 = right

    def __str__(self) -> str:
        return f"c{self.component}{'LR'[self.side]}"


DartSide = Dart | CircleSide
Walk = tuple[DartSide, ...]


def side_key(side: DartSide) -> tuple[int, int, int]:
    """Total order on dart sides: crossing darts first, then circle sides."""
    if isinstance(side, Dart):
        return (0, side.crossing, _PORT_ORDER[side.port])
    return (1, side.component, side.side)


def rotate_walk(walk: Walk) -> Walk:
    """Rotate a cyclic walk so that its smallest dart side comes first."""
    if not walk:
        return walk
    start = min(range(len(walk)), key=lambda i: side_key(walk[i]))
    return walk[start:] + walk[:start]


@dataclass(frozen=True)
class Crossing:
    """A vertex of the diagram."""

    label: int
    sign: int
    over: Position
    under: Position

    @property
    def rotation(self) -> tuple[Dart, ...]:
        """Darts in counterclockwise order, fixed by the crossing sign."""
        ports = POSITIVE_ROTATION if self.sign > 0 else NEGATIVE_ROTATION
        return tuple(Dart(self.label, port) for port in ports)


@dataclass(frozen=True)
class Edge:
    """A strand segment from one passage to the next along a component."""

    component: int
    position: int
    tail: Dart
    head: Dart


@dataclass(frozen=True)
class Face:
    """A face of the surface with its boundary walks and genus."""

    boundary_walks: tuple[Walk, ...]
    genus: int = 0

    @property
    def b(self) -> int:
        """Number of boundary walks."""
        return len(self.boundary_walks)

    @property
    def euler_characteristic(self) -> int:
        """Euler characteristic 2 - 2g - b of the face."""
        return 2 - 2 * self.genus - self.b

    @property
    def is_disk(self) -> bool:
        """Check if the face is an open disk."""
        return self.genus == 0 and self.b == 1


@dataclass(frozen=True)
class SurfaceComponent:
    """A connected component of the carrier surface."""

    faces: tuple[int, ...]
    crossings: tuple[int, ...]
    circles: tuple[int, ...]
    link_components: tuple[int, ...]
    edge_count: int
    genus: int

    @property
    def is_empty(self) -> bool:
        """Check if no link component lies on this surface component."""
        return not self.link_components


class StabilizationKind(str, Enum):
    """Ways of adding a 1-handle away from the link."""

    ADD_HANDLE = "add_handle"
    SPLIT_WALK_PAIR = "split_walk_pair"


@dataclass(frozen=True)
class SurfaceDiagram:
    """A link diagram embedded in a closed oriented, possibly disconnected, surface."""

    code: GaussCode
    crossings: tuple[Crossing, ...]
    edges: tuple[Edge, ...]
    circles: tuple[int, ...]
    faces: tuple[Face, ...]
    surface_components: tuple[SurfaceComponent, ...]

    @property
    def rotation(self) -> dict[int, tuple[Dart, ...]]:
        """Cyclic dart order at each crossing."""
        return {crossing.label: crossing.rotation for crossing in self.crossings}

    @property
    def link_assignment(self) -> dict[int, int]:
        """Map from link component to the surface component carrying it."""
        return {
            link: index
            for index, component in enumerate(self.surface_components)
            for link in component.link_components
        }

    @property
    def is_cellular(self) -> bool:
        """Check if every face is a disk."""
        return all(face.is_disk for face in self.faces)

    def face(self, face_id: int) -> Face:
        """Look up a face, raising InvalidFaceError for bad ids."""
        if not 0 <= face_id < len(self.faces):
            raise InvalidFaceError(f"face {face_id} does not exist ({len(self.faces)} faces)")
        return self.faces[face_id]


def strand_edges(code: GaussCode) -> list[Edge]:
    """Edges of the strand graph, component by component in passage order."""
    edges = []
    for c, component in enumerate(code.components):
        for i, symbol in enumerate(component):
            following = component[(i + 1) % len(component)]
            tail_port = Port.OVER_OUT if symbol.passage is Passage.OVER else Port.UNDER_OUT
            head_port = Port.OVER_IN if following.passage is Passage.OVER else Port.UNDER_IN
            edges.append(Edge(c, i, Dart(symbol.label, tail_port), Dart(following.label, head_port)))
    return edges


def _crossings(code: GaussCode) -> list[Crossing]:
    crossings = []
    for label in code.labels():
        found = code.locate(label)
        crossings.append(Crossing(label, code.sign(label), found[Passage.OVER], found[Passage.UNDER]))
    return crossings


def _trace_walks(crossings: Sequence[Crossing], edges: Sequence[Edge]) -> list[Walk]:
    """Orbits of the face permutation (rotation after edge involution)."""
    alpha: dict[Dart, Dart] = {}
    for edge in edges:
        alpha[edge.tail] = edge.head
        alpha[edge.head] = edge.tail
    sigma: dict[Dart, Dart] = {}
    for crossing in crossings:
        darts = crossing.rotation
        for i, dart in enumerate(darts):
            sigma[dart] = darts[(i + 1) % 4]

    walks: list[Walk] = []
    seen: set[Dart] = set()
    for dart in sorted(sigma, key=side_key):
        if dart in seen:
            continue
        walk = []
        current = dart
        while current not in seen:
            seen.add(current)
            walk.append(current)
            current = sigma[alpha[current]]
        walks.append(tuple(walk))
    return walks


def _assemble(code: GaussCode, faces: Sequence[Face]) -> SurfaceDiagram:
    """Attach faces to the strand graph and derive the surface components."""
    crossings = _crossings(code)
    edges = strand_edges(code)
    circles = tuple(c for c, component in enumerate(code.components) if not component)

    graph = nx.Graph()
    graph.add_nodes_from(("x", crossing.label) for crossing in crossings)
    graph.add_nodes_from(("c", c) for c in circles)
    graph.add_nodes_from(("f", i) for i in range(len(faces)))
    for edge in edges:
        graph.add_edge(("x", edge.tail.crossing), ("x", edge.head.crossing))
    for i, face in enumerate(faces):
        for walk in face.boundary_walks:
            for side in walk:
                node = ("x", side.crossing) if isinstance(side, Dart) else ("c", side.component)
                graph.add_edge(("f", i), node)

    components: list[SurfaceComponent] = []
    for nodes in nx.connected_components(graph):
        face_ids = tuple(sorted(i for kind, i in nodes if kind == "f"))
        labels = tuple(sorted(i for kind, i in nodes if kind == "x"))
        circle_ids = tuple(sorted(i for kind, i in nodes if kind == "c"))
        label_set = set(labels)
        links = set(circle_ids)
        for crossing in crossings:
            if crossing.label in label_set:
                links.update((crossing.over[0], crossing.under[0]))
        edge_count = sum(1 for edge in edges if edge.tail.crossing in label_set)
        chi = len(labels) - edge_count + sum(faces[i].euler_characteristic for i in face_ids)
        if chi % 2 or chi > 2:
            raise SurfaceError(f"Euler characteristic {chi} does not describe a closed orientable surface")
        components.append(
            SurfaceComponent(
                faces=face_ids,
                crossings=labels,
                circles=circle_ids,
                link_components=tuple(sorted(links)),
                edge_count=edge_count,
                genus=(2 - chi) // 2,
            )
        )

    def order(component: SurfaceComponent) -> tuple[int, int]:
        first_link = component.link_components[0] if component.link_components else len(code.components)
        first_face = component.faces[0] if component.faces else len(faces)
        return (first_link, first_face)

    components.sort(key=order)
    return SurfaceDiagram(
        code=code,
        crossings=tuple(crossings),
        edges=tuple(edges),
        circles=circles,
        faces=tuple(faces),
        surface_components=tuple(components),
    )


def _normalize_faces(faces: Iterable[Face]) -> list[Face]:
    normalized = [
        Face(tuple(sorted((rotate_walk(w) for w in face.boundary_walks), key=_walk_key)), face.genus)
        for face in faces
    ]
    return sorted(normalized, key=_face_key)


def _walk_key(walk: Walk) -> tuple[tuple[int, int, int], ...]:
    return tuple(side_key(side) for side in walk)


def _face_key(face: Face) -> tuple[object, ...]:
    if not face.boundary_walks:
        return ((2, 0, 0), face.genus)
    return (side_key(face.boundary_walks[0][0]), face.genus, face.b)


def carter_embed(code: GaussCode) -> SurfaceDiagram:
    """Realize a Gauss code cellularly on its least-genus carrier surface.

    Every face is a disk. A crossing-free component yields its own sphere
    with two disk faces.
    """
    walks = _trace_walks(_crossings(code), strand_edges(code))
    for c, component in enumerate(code.components):
        if not component:
            walks.extend([(CircleSide(c, 0),), (CircleSide(c, 1),)])
    return _assemble(code, _normalize_faces(Face((walk,)) for walk in walks))


def supporting_genus(d: SurfaceDiagram) -> list[int]:
    """Genus of each surface component."""
    return [component.genus for component in d.surface_components]


def check_euler(d: SurfaceDiagram) -> ValidationReport:
    """Verify the per-component Euler law and that walks use every dart side once."""
    report = ValidationReport()
    for index, component in enumerate(d.surface_components):
        chi = len(component.crossings) - component.edge_count + sum(
            d.faces[i].euler_characteristic for i in component.faces
        )
        if chi != 2 - 2 * component.genus:
            report.add(
                "euler-law",
                f"surface component {index}: V - E + sum(chi_f) = {chi} but genus is {component.genus}",
            )

    expected: set[DartSide] = {dart for crossing in d.crossings for dart in crossing.rotation}
    expected.update(CircleSide(c, side) for c in d.circles for side in (0, 1))
    used = [side for face in d.faces for walk in face.boundary_walks for side in walk]
    if len(used) != len(set(used)):
        report.add("walk-cover", "a dart side is used by more than one boundary walk")
    if set(used) != expected:
        report.add("walk-cover", "boundary walks do not cover every dart side")
    return report


def read_gauss(d: SurfaceDiagram) -> GaussCode:
    """Read the Gauss code back off the strand edges of an embedding."""
    signs = {crossing.label: crossing.sign for crossing in d.crossings}
    count = d.code.component_count
    words: list[list[tuple[int, Dart]]] = [[] for _ in range(count)]
    for edge in d.edges:
        words[edge.component].append((edge.position, edge.tail))

    components = []
    for word in words:
        symbols = []
        for _, tail in sorted(word):
            passage = Passage.OVER if tail.port is Port.OVER_OUT else Passage.UNDER
            symbols.append(Symbol(tail.crossing, passage, signs[tail.crossing]))
        components.append(tuple(symbols))
    return GaussCode(tuple(components))


def stabilize(
    d: SurfaceDiagram,
    face_id: int,
    kind: StabilizationKind,
    other_face_id: int | None = None,
) -> SurfaceDiagram:
    """Add a 1-handle away from the link.

    Args:
        d: Diagram to stabilize
        face_id: Face receiving the handle
        kind: ADD_HANDLE raises the face genus by one; SPLIT_WALK_PAIR tubes
            ``face_id`` to ``other_face_id``, merging the two faces
        other_face_id: Second face for SPLIT_WALK_PAIR

    Returns:
        The stabilized diagram, with the same Gauss code

    Raises:
        InvalidFaceError: If a face reference is invalid
    """
    face = d.face(face_id)
    faces = list(d.faces)
    if kind is StabilizationKind.ADD_HANDLE:
        faces[face_id] = replace(face, genus=face.genus + 1)
    else:
        if other_face_id is None or other_face_id == face_id:
            raise InvalidFaceError("a tube needs two distinct faces")
        other = d.face(other_face_id)
        merged = Face(face.boundary_walks + other.boundary_walks, face.genus + other.genus)
        keep, drop = sorted((face_id, other_face_id))
        faces[keep] = merged
        del faces[drop]
    return _assemble(d.code, faces)


def add_empty_component(d: SurfaceDiagram, genus: int = 0) -> SurfaceDiagram:
    """Disjoint union of ``d`` with a closed surface carrying no link component."""
    if genus < 0:
        raise SurfaceError("genus must be non-negative")
    return _assemble(d.code, [*d.faces, Face((), genus)])


def drop_empty_components(d: SurfaceDiagram) -> SurfaceDiagram:
    """Remove surface components that carry no link component.

    Raises:
        EmptyLinkError: If no surface component would remain
    """
    empty = [c for c in d.surface_components if c.is_empty]
    if not empty:
        return d
    if len(empty) == len(d.surface_components):
        raise EmptyLinkError("every surface component is empty; the link has no components")
    dropped = {i for component in empty for i in component.faces}
    for component in empty:
        logger.debug("empty_component_dropped", genus=component.genus, faces=len(component.faces))
    return _assemble(d.code, [face for i, face in enumerate(d.faces) if i not in dropped])


def destabilize_fully(d: SurfaceDiagram) -> SurfaceDiagram:
    """Compress along essential curves in faces until every face is a disk.

    Face genus is reduced first, then multi-walk faces are separated, faces in
    order. Pieces left without link components are removed.
    """
    faces = list(d.faces)
    for i, face in enumerate(faces):
        if face.genus:
            logger.debug("face_compressed", face=i, compressions=face.genus)
            faces[i] = replace(face, genus=0)
    d = _assemble(d.code, faces)

    separated: list[Face] = []
    for i, face in enumerate(d.faces):
        walks = face.boundary_walks
        while len(walks) > 1:
            logger.debug("walk_separated", face=i, remaining=len(walks) - 1)
            separated.append(Face((walks[-1],)))
            walks = walks[:-1]
        separated.append(Face(walks))
    d = drop_empty_components(_assemble(d.code, separated))
    return _assemble(d.code, _normalize_faces(d.faces))


def canonical_signature(d: SurfaceDiagram) -> tuple[object, ...]:
    """Label-independent encoding of a diagram, equal exactly for isomorphic diagrams.

    Labels are renumbered by first appearance in the code, walks are rotated to
    their lexicographically smallest dart side and faces/components are sorted.
    """
    mapping = first_appearance_mapping(d.code)

    def relabel(side: DartSide) -> DartSide:
        return Dart(mapping[side.crossing], side.port) if isinstance(side, Dart) else side

    def face_signature(face: Face) -> tuple[object, ...]:
        walks = sorted(_walk_key(rotate_walk(tuple(relabel(s) for s in walk))) for walk in face.boundary_walks)
        return (face.genus, tuple(walks))

    components = sorted(
        (
            component.genus,
            component.link_components,
            tuple(sorted(face_signature(d.faces[i]) for i in component.faces)),
        )
        for component in d.surface_components
    )
    return (serialize_gauss(d.code.relabel(mapping)), tuple(components))


def is_isomorphic(a: SurfaceDiagram, b: SurfaceDiagram) -> bool:
    """Check if two diagrams are isomorphic as labeled rotation systems with faces."""
    return canonical_signature(a) == canonical_signature(b)


def dump_rotation(d: SurfaceDiagram) -> str:
    """Stable text dump of the rotation system, edges, faces and components."""
    lines = []
    for crossing in d.crossings:
        darts = " ".join(str(dart) for dart in crossing.rotation)
        lines.append(f"crossing {crossing.label} ({'+' if crossing.sign > 0 else '-'}): {darts}")
    for edge in d.edges:
        lines.append(f"edge {edge.component}.{edge.position}: {edge.tail} -> {edge.head}")
    for c in d.circles:
        lines.append(f"circle {c}")
    for i, face in enumerate(d.faces):
        walks = " | ".join(" ".join(str(side) for side in walk) for walk in face.boundary_walks)
        lines.append(f"face {i} g={face.genus} b={face.b}: {walks}")
    for i, component in enumerate(d.surface_components):
        links = ",".join(str(k) for k in component.link_components)
        lines.append(f"component {i} genus={component.genus} links=[{links}]")
    return "\n".join(lines)


def total_genus(code: GaussCode) -> int:
    """Sum of the genera of the Carter surface components, without building the diagram."""
    crossings = _crossings(code)
    edges = strand_edges(code)
    pieces = UnionFind(range(code.component_count))
    for crossing in crossings:
        pieces.union(crossing.over[0], crossing.under[0])
    piece_count = len(list(pieces.to_sets()))
    face_count = len(_trace_walks(crossings, edges)) + 2 * len(
        [c for c in code.components if not c]
    )
    chi = len(crossings) - len(edges) + face_count
    return (2 * piece_count - chi) // 2
