"""Move-invariant fingerprints of virtual links.

The Kauffman bracket is normalized so that the crossing-free unknot has value 1 and
every extra loop contributes -A^2 - A^-2.
"""

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any

import numpy as np
import structlog
from networkx.utils import UnionFind
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from virtual_links.topology.codes import GaussCode, Passage
from virtual_links.topology.polynomial import LaurentPoly
from virtual_links.topology.surface_embed import Dart, Port, strand_edges

logger = structlog.get_logger(__name__)

SUPPORTED_PRIMES = (3, 5, 7)
EXHAUSTIVE_ARC_LIMIT = 10
DEFAULT_EXHAUSTIVE_LIMIT = 200_000

# Smoothings of a positive crossing; a negative crossing swaps them.
_ORIENTED = ((Port.OVER_IN, Port.UNDER_OUT), (Port.UNDER_IN, Port.OVER_OUT))
_UNORIENTED = ((Port.OVER_IN, Port.UNDER_IN), (Port.OVER_OUT, Port.UNDER_OUT))


class InvariantError(Exception):
    """Base exception for invariant computations."""


class UnsupportedPrimeError(InvariantError):
    """Raised for a coloring modulus outside the supported primes."""


class NotAKnotError(InvariantError):
    """Raised when a knot-only invariant receives a multi-component link."""


def writhe(code: GaussCode) -> int:
    """Sum of crossing signs."""
    return sum(code.sign(label) for label in code.labels())


def _smoothings(sign: int) -> tuple[tuple[tuple[Port, Port], ...], tuple[tuple[Port, Port], ...]]:
    """(A-smoothing, B-smoothing) dart pairings at a crossing of the given sign."""
    return (_ORIENTED, _UNORIENTED) if sign > 0 else (_UNORIENTED, _ORIENTED)


def _free_circles(code: GaussCode) -> int:
    return sum(1 for component in code.components if not component)


def _bracket_from_states(states: Iterator[tuple[int, int]]) -> LaurentPoly:
    """Sum A^(a-b) * delta^(loops-1) over (a - b, loops) pairs."""
    counts: dict[tuple[int, int], int] = {}
    for exponent, loops in states:
        counts[(exponent, loops)] = counts.get((exponent, loops), 0) + 1
    delta = LaurentPoly.loop_value()
    total = LaurentPoly()
    for (exponent, loops), count in counts.items():
        total = total + LaurentPoly.monomial(exponent, count) * delta ** (loops - 1)
    return total


def kauffman_bracket(code: GaussCode) -> LaurentPoly:
    """Kauffman bracket by explicit enumeration of all 2^n smoothing states."""
    labels = code.labels()
    darts = [Dart(label, port) for label in labels for port in Port]
    index = {dart: i for i, dart in enumerate(darts)}
    edge_pairs = [(index[edge.tail], index[edge.head]) for edge in strand_edges(code)]
    choices = [
        [
            [(index[Dart(label, x)], index[Dart(label, y)]) for x, y in smoothing]
            for smoothing in _smoothings(code.sign(label))
        ]
        for label in labels
    ]
    circles = _free_circles(code)

    def states() -> Iterator[tuple[int, int]]:
        for state in product((0, 1), repeat=len(labels)):
            loops_of = UnionFind(range(len(darts)))
            for x, y in edge_pairs:
                loops_of.union(x, y)
            for choice, smoothing in zip(state, choices, strict=True):
                for x, y in smoothing[choice]:
                    loops_of.union(x, y)
            loops = sum(1 for _ in loops_of.to_sets()) + circles
            b_count = sum(state)
            yield (len(labels) - 2 * b_count, loops)

    return _bracket_from_states(states())


def bracket_by_skein(code: GaussCode) -> LaurentPoly:
    """Kauffman bracket by recursive splicing, crossing by crossing.

    Independent of :func:`kauffman_bracket`; the two must agree.
    """
    labels = code.labels()
    partner: dict[Dart, Dart] = {}
    for edge in strand_edges(code):
        partner[edge.tail] = edge.head
        partner[edge.head] = edge.tail
    circles = _free_circles(code)
    signs = [code.sign(label) for label in labels]

    def expand(k: int, ends: dict[Dart, Dart], loops: int) -> LaurentPoly:
        if k == len(labels):
            return LaurentPoly.loop_value() ** (loops - 1)
        total = LaurentPoly()
        for weight, smoothing in zip((1, -1), _smoothings(signs[k]), strict=True):
            spliced = dict(ends)
            closed = loops
            for x, y in smoothing:
                a, b = spliced[Dart(labels[k], x)], spliced[Dart(labels[k], y)]
                if a == Dart(labels[k], y):
                    closed += 1
                else:
                    spliced[a] = b
                    spliced[b] = a
            total = total + LaurentPoly.monomial(weight) * expand(k + 1, spliced, closed)
        return total

    return expand(0, partner, circles)


def f_polynomial(code: GaussCode) -> LaurentPoly:
    """Writhe-normalized bracket (-A^3)^(-w) * <code>."""
    w = writhe(code)
    return LaurentPoly.monomial(-3 * w, -1 if w % 2 else 1) * kauffman_bracket(code)


def odd_writhe(code: GaussCode) -> int:
    """Sum of the signs of odd crossings of a knot.

    Raises:
        NotAKnotError: If the code has more than one component
    """
    if code.component_count != 1:
        raise NotAKnotError(f"odd writhe needs a knot, got {code.component_count} components")
    total = 0
    for label in code.labels():
        found = code.locate(label)
        i, j = sorted((found[Passage.OVER][1], found[Passage.UNDER][1]))
        if (j - i - 1) % 2:
            total += code.sign(label)
    return total


LinkingMatrix = tuple[tuple[tuple[int, int], ...], ...]


def linking_matrix(code: GaussCode) -> LinkingMatrix:
    """Per ordered component pair (i, j): signs where i is Over j, and where i is Under j."""
    n = code.component_count
    over = [[0] * n for _ in range(n)]
    for label in code.labels():
        found = code.locate(label)
        i, j = found[Passage.OVER][0], found[Passage.UNDER][0]
        if i != j:
            over[i][j] += code.sign(label)
    return tuple(tuple((over[i][j], over[j][i]) for j in range(n)) for i in range(n))


def arcs(code: GaussCode) -> tuple[int, dict[int, tuple[int, int, int]]]:
    """Wirtinger arcs, each running from one Under passage to the next.

    A component without Under passages, crossing-free ones included, is a single arc.

    Returns:
        The arc count and, per crossing label, its (over, incoming, outgoing) arcs
    """
    over_arc: dict[tuple[int, int], int] = {}
    under_arcs: dict[int, tuple[int, int]] = {}
    count = 0
    for c, component in enumerate(code.components):
        unders = [o for o, symbol in enumerate(component) if symbol.passage is Passage.UNDER]
        if not unders:
            for o in range(len(component)):
                over_arc[(c, o)] = count
            count += 1
            continue
        size = len(component)
        first_arc = current = count
        start = unders[0]
        for step in range(1, size + 1):
            o = (start + step) % size
            symbol = component[o]
            if symbol.passage is Passage.OVER:
                over_arc[(c, o)] = current
                continue
            outgoing = first_arc if o == start else current + 1
            under_arcs[symbol.label] = (current, outgoing)
            current = outgoing
        count += len(unders)

    equations = {}
    for label in code.labels():
        incoming, outgoing = under_arcs[label]
        equations[label] = (over_arc[code.locate(label)[Passage.OVER]], incoming, outgoing)
    return count, equations


def _coloring_matrix(code: GaussCode) -> np.ndarray:
    n_arcs, equations = arcs(code)
    matrix = np.zeros((len(equations), n_arcs), dtype=np.int64)
    for row, (over, incoming, outgoing) in enumerate(equations.values()):
        matrix[row, over] += 2
        matrix[row, incoming] -= 1
        matrix[row, outgoing] -= 1
    return matrix


def coloring_count(code: GaussCode, p: int, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> int:
    """Number of Fox p-colorings of the arcs.

    Small systems are enumerated exhaustively; larger ones use the rank over GF(p).

    Raises:
        UnsupportedPrimeError: If ``p`` is not 3, 5 or 7
    """
    if p not in SUPPORTED_PRIMES:
        raise UnsupportedPrimeError(f"p = {p} is not one of {SUPPORTED_PRIMES}")
    matrix = _coloring_matrix(code)
    n_arcs = matrix.shape[1]
    if n_arcs <= EXHAUSTIVE_ARC_LIMIT and p**n_arcs <= exhaustive_limit:
        return coloring_count_exhaustive(matrix, p)
    return p ** (n_arcs - coloring_rank(matrix, p))


def coloring_count_exhaustive(matrix: np.ndarray, p: int) -> int:
    """Count solutions by checking every assignment at once."""
    n_arcs = matrix.shape[1]
    grid = np.indices((p,) * n_arcs).reshape(n_arcs, -1).T
    if matrix.shape[0] == 0:
        return int(grid.shape[0])
    residues = (grid @ matrix.T) % p
    return int(np.count_nonzero(~residues.any(axis=1)))


def coloring_rank(matrix: np.ndarray, p: int) -> int:
    """Rank of the coloring system over GF(p)."""
    rows, columns = matrix.shape
    if rows == 0:
        return 0
    field_ = GF(p)
    entries = [[field_(int(v) % p) for v in row] for row in matrix.tolist()]
    return int(DomainMatrix(entries, (rows, columns), field_).rank())


@dataclass(frozen=True)
class Fingerprint:
    """Invariants compared before any move search."""

    component_count: int
    f_poly: LaurentPoly
    odd_writhe: int | None
    linking_matrix: LinkingMatrix
    coloring_counts: dict[int, int] = field(default_factory=dict)

    def ordered_values(self) -> list[tuple[str, Any]]:
        """Named invariant values in the order they are compared."""
        values: list[tuple[str, Any]] = [
            ("component_count", self.component_count),
            ("odd_writhe", self.odd_writhe),
        ]
        values.extend((f"coloring_count({p})", self.coloring_counts.get(p)) for p in SUPPORTED_PRIMES)
        values.append(("linking_matrix", self.linking_matrix))
        values.append(("f_polynomial", self.f_poly))
        return values

    def first_difference(self, other: "Fingerprint") -> tuple[str, Any, Any] | None:
        """The first invariant that separates two fingerprints, with both values."""
        for (name, mine), (_, theirs) in zip(self.ordered_values(), other.ordered_values(), strict=True):
            if mine != theirs:
                return name, mine, theirs
        return None

    def to_json(self) -> dict[str, Any]:
        return {
            "components": self.component_count,
            "f_poly": self.f_poly.to_json(),
            "odd_writhe": self.odd_writhe,
            "linking": [[list(entry) for entry in row] for row in self.linking_matrix],
            "colorings": {str(p): count for p, count in sorted(self.coloring_counts.items())},
        }


def fingerprint(code: GaussCode, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> Fingerprint:
    """Assemble every invariant of a code."""
    return Fingerprint(
        component_count=code.component_count,
        f_poly=f_polynomial(code),
        odd_writhe=odd_writhe(code) if code.component_count == 1 else None,
        linking_matrix=linking_matrix(code),
        coloring_counts={p: coloring_count(code, p, exhaustive_limit) for p in SUPPORTED_PRIMES},
    )


def invariant_json(value: Any) -> Any:
    """Render an invariant value as plain JSON."""
    if isinstance(value, LaurentPoly):
        return value.to_json()
    if isinstance(value, tuple):
        return [invariant_json(v) for v in value]
    return value


_NAMED: dict[str, Callable[[GaussCode], Any]] = {
    "component_count": lambda code: code.component_count,
    "odd_writhe": lambda code: odd_writhe(code) if code.component_count == 1 else None,
    "linking_matrix": linking_matrix,
    "f_polynomial": f_polynomial,
    **{f"coloring_count({p})": (lambda code, p=p: coloring_count(code, p)) for p in SUPPORTED_PRIMES},
}


def sublink_invariant_name(components: Sequence[int], name: str) -> str:
    """Name of an invariant taken on the sub-link made of ``components``."""
    return f"sublink({','.join(str(c) for c in components)}):{name}"


def invariant_value(name: str, code: GaussCode) -> Any:
    """Recompute a named invariant, e.g. ``"coloring_count(3)"``.

    ``"sublink(0,2):f_polynomial"`` evaluates the invariant on components 0 and 2.

    Raises:
        InvariantError: If the name is unknown
    """
    if name.startswith("sublink("):
        indices, _, inner = name.removeprefix("sublink(").partition("):")
        try:
            sublink = code.subcode(int(i) for i in indices.split(","))
        except (ValueError, IndexError) as e:
            raise InvariantError(f"bad sub-link in {name!r}") from e
        return invariant_value(inner, sublink)
    try:
        compute = _NAMED[name]
    except KeyError as e:
        raise InvariantError(f"unknown invariant {name!r}") from e
    return compute(code)


def check_bracket(code: GaussCode) -> LaurentPoly:
    """Bracket computed both ways.

    Raises:
        InvariantError: If the evaluators disagree
    """
    by_states = kauffman_bracket(code)
    by_skein = bracket_by_skein(code)
    if by_states != by_skein:
        logger.error("bracket_mismatch", code=str(code), states=str(by_states), skein=str(by_skein))
        raise InvariantError(f"bracket evaluators disagree on {code}: {by_states} vs {by_skein}")
    return by_states
