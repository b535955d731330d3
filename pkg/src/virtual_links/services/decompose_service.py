"""Split links into diagram-level split parts and recognise classical parts."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import structlog

from virtual_links.core.metrics import track_expansions
from virtual_links.services.verdict import Verdict, search_verdict, separate
from virtual_links.topology.codes import GaussCode, serialize_gauss
from virtual_links.topology.invariants import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    f_polynomial,
    fingerprint,
    linking_matrix,
    odd_writhe,
)
from virtual_links.topology.moves import MoveTrace
from virtual_links.topology.search import Budget, ExpansionAllowance, canonical_minimum
from virtual_links.topology.surface_embed import SurfaceDiagram, carter_embed, destabilize_fully

logger = structlog.get_logger(__name__)


def _track_part_expansion(_: str) -> None:
    track_expansions("part")


class Classification(str, Enum):
    """Whether a link admits a genus-0 representative."""

    CLASSICAL = "classical"
    NON_CLASSICAL = "non_classical"
    UNKNOWN = "unknown"


@dataclass
class ClassicalResult:
    """Classification with its witness.

    Classical results carry a genus-0 representative and the trace reaching it;
    NonClassical results name the obstruction that fired.
    """

    classification: Classification
    witness: dict[str, Any] = field(default_factory=dict)
    representative: GaussCode | None = None
    trace: MoveTrace | None = None
    expansions: int = 0

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "classification": self.classification.value,
            "witness": self.witness,
        }
        if self.representative is not None:
            data["representative"] = serialize_gauss(self.representative)
        if self.trace is not None:
            data["trace"] = self.trace.to_dict()
        return data


@dataclass
class Part:
    """One split part: a sub-link on its own surface components."""

    components: tuple[int, ...]  # indices into the original link
    diagram: SurfaceDiagram
    result: ClassicalResult | None = None

    @property
    def code(self) -> GaussCode:
        return self.diagram.code


@dataclass
class SplitDecomposition:
    """Parts of a link whose components together are the whole link."""

    parts: list[Part] = field(default_factory=list)
    expansions: int = 0  # spent classifying

    def __len__(self) -> int:
        return len(self.parts)

    def classical_parts(self) -> list[Part]:
        return [
            part
            for part in self.parts
            if part.result is not None and part.result.classification is Classification.CLASSICAL
        ]

    def other_parts(self) -> list[Part]:
        classical = {id(part) for part in self.classical_parts()}
        return [part for part in self.parts if id(part) not in classical]


@dataclass
class DecomposeConfig:
    """Configuration for classification."""

    # Obstructions, each valid for classical links
    use_odd_writhe: bool = True
    use_linking_symmetry: bool = True
    use_f_parity: bool = True

    workers: int = 1
    coloring_exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT


def split_parts(d: SurfaceDiagram) -> list[tuple[tuple[int, ...], SurfaceDiagram]]:
    """Split parts of a cellular diagram with the link components each one carries.

    Every surface component carrying link components is one part; its code keeps
    the original labels and component order.
    """
    parts = []
    for component in d.surface_components:
        if component.is_empty:
            continue
        links = component.link_components
        parts.append((links, carter_embed(d.code.subcode(links))))
    return parts


def split_components(d: SurfaceDiagram) -> list[SurfaceDiagram]:
    """Maximal split parts detectable on the diagram, one per surface component."""
    return [diagram for _, diagram in split_parts(d)]


class DecomposeService:
    """Service for splitting links and recognising classical parts."""

    def __init__(self, config: DecomposeConfig | None = None) -> None:
        self.config = config or DecomposeConfig()

    def decompose(self, code: GaussCode, budget: Budget | None = None) -> SplitDecomposition:
        """Destabilize, split, and classify every part when a budget is given.

        The parts share the budget: each may use an even share of what the parts
        before it left over.
        """
        d = destabilize_fully(carter_embed(code))
        decomposition = SplitDecomposition(
            [Part(components, diagram) for components, diagram in split_parts(d)]
        )
        if budget is not None:
            allowance = ExpansionAllowance(budget)
            parts = decomposition.parts
            for i, part in enumerate(parts):
                share = allowance.draw(allowance.remaining // (len(parts) - i))
                part.result = self.classify_classical(part.code, share)
                allowance.charge(part.result.expansions)
            decomposition.expansions = allowance.spent
        logger.debug(
            "decompose_step",
            step="split",
            parts=len(decomposition),
            classical=len(decomposition.classical_parts()),
        )
        return decomposition

    def obstruction(self, code: GaussCode) -> dict[str, Any] | None:
        """First enabled obstruction to classicality that fires, as a witness."""
        if self.config.use_odd_writhe and code.component_count == 1:
            value = odd_writhe(code)
            if value:
                return {"invariant": "odd_writhe", "value": value}
        if self.config.use_linking_symmetry:
            matrix = linking_matrix(code)
            for i, row in enumerate(matrix):
                for j, (over, under) in enumerate(row):
                    if i < j and over != under:
                        return {
                            "invariant": "linking_matrix",
                            "value": [i, j, over, under],
                        }
        if self.config.use_f_parity:
            residue = (2 * (code.component_count - 1)) % 4
            bad = [e for e in f_polynomial(code).exponents() if e % 4 != residue]
            if bad:
                return {"invariant": "f_polynomial_parity", "value": bad[0]}
        return None

    def classify_classical(self, code: GaussCode, budget: Budget) -> ClassicalResult:
        """Classical iff a genus-0 representative is found within the budget.

        Enabled obstructions are tried first; a firing obstruction rules out every
        genus-0 representative.
        """
        witness = self.obstruction(code)
        if witness is not None:
            logger.debug("classified", classification="non_classical", **witness)
            return ClassicalResult(Classification.NON_CLASSICAL, witness)

        best = canonical_minimum(
            code,
            budget,
            workers=self.config.workers,
            stop=lambda _, genus: genus == 0,
            on_expand=_track_part_expansion,
        )
        expansions = best.stats.total_expansions
        if best.genus == 0:
            logger.debug("classified", classification="classical", steps=len(best.trace))
            return ClassicalResult(
                Classification.CLASSICAL,
                {"genus": 0, "steps": len(best.trace)},
                representative=best.code,
                trace=best.trace,
                expansions=expansions,
            )
        logger.debug("classified", classification="unknown", genus=best.genus)
        return ClassicalResult(
            Classification.UNKNOWN,
            {"min_genus_found": best.genus, "expansions": expansions},
            expansions=expansions,
        )

    def compare_classical(self, a: GaussCode, b: GaussCode, budget: Budget) -> Verdict:
        """Fingerprint separation, then bounded bidirectional search."""
        limit = self.config.coloring_exhaustive_limit
        verdict = separate(fingerprint(a, limit), fingerprint(b, limit), budget)
        if verdict is not None:
            return verdict
        return search_verdict(a, b, budget, workers=self.config.workers)


def get_decompose_service(config: DecomposeConfig | None = None) -> DecomposeService:
    """Get decompose service instance."""
    return DecomposeService(config)
