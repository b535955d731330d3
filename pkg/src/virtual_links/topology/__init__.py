"""Computational kernel: Gauss codes, surface embeddings, moves, invariants, complements."""

from virtual_links.topology.codes import (
    GaussCode,
    GaussCodeError,
    GaussCodeSyntaxError,
    GaussCodeValidationError,
    Passage,
    Symbol,
    canonical_form,
    canonical_relabel,
    parse_gauss,
    serialize_gauss,
    validate,
)
from virtual_links.topology.complement import (
    BoundaryPattern,
    ComplementComplex,
    ComplementError,
    build_complement,
    check_complex,
    export_complex,
    import_complex,
)
from virtual_links.topology.invariants import (
    Fingerprint,
    InvariantError,
    coloring_count,
    f_polynomial,
    fingerprint,
    kauffman_bracket,
    linking_matrix,
    odd_writhe,
)
from virtual_links.topology.moves import (
    MoveError,
    MoveKind,
    MoveSpec,
    MoveTrace,
    apply_move,
    enumerate_moves,
    verify_trace,
)
from virtual_links.topology.polynomial import LaurentPoly
from virtual_links.topology.report import ValidationIssue, ValidationReport
from virtual_links.topology.search import Budget, bidirectional_search, canonical_minimum
from virtual_links.topology.surface_embed import (
    SurfaceDiagram,
    SurfaceError,
    carter_embed,
    destabilize_fully,
    drop_empty_components,
    stabilize,
    supporting_genus,
)

__all__ = [
    "BoundaryPattern",
    "Budget",
    "ComplementComplex",
    "ComplementError",
    "Fingerprint",
    "GaussCode",
    "GaussCodeError",
    "GaussCodeSyntaxError",
    "GaussCodeValidationError",
    "InvariantError",
    "LaurentPoly",
    "MoveError",
    "MoveKind",
    "MoveSpec",
    "MoveTrace",
    "Passage",
    "SurfaceDiagram",
    "SurfaceError",
    "Symbol",
    "ValidationIssue",
    "ValidationReport",
    "apply_move",
    "bidirectional_search",
    "build_complement",
    "canonical_form",
    "canonical_minimum",
    "canonical_relabel",
    "carter_embed",
    "check_complex",
    "coloring_count",
    "destabilize_fully",
    "drop_empty_components",
    "enumerate_moves",
    "export_complex",
    "f_polynomial",
    "fingerprint",
    "import_complex",
    "kauffman_bracket",
    "linking_matrix",
    "odd_writhe",
    "parse_gauss",
    "serialize_gauss",
    "stabilize",
    "supporting_genus",
    "validate",
    "verify_trace",
]
