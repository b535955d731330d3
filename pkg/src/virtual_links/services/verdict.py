"""Three-valued verdicts and the fingerprint-then-search comparison shared by the pipelines."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import structlog

from virtual_links.core.metrics import track_expansions
from virtual_links.topology.codes import GaussCode, parse_gauss, serialize_gauss
from virtual_links.topology.invariants import Fingerprint, invariant_json
from virtual_links.topology.moves import MoveTrace, verify_trace
from virtual_links.topology.search import Budget, SearchStats, bidirectional_search

logger = structlog.get_logger(__name__)

COMPLETENESS_NOTE = (
    "completeness not claimed: the search was bounded and no invariant separated the inputs"
)


class VerdictKind(str, Enum):
    """Outcome of comparing two links."""

    EQUIVALENT = "equivalent"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass
class Verdict:
    """A verdict with the certificate that backs it.

    Equivalent certificates hold two traces meeting at one canonical form, Distinct
    certificates name an invariant with both values, Unknown carries what was explored.
    """

    kind: VerdictKind
    certificate: dict[str, Any]
    budget: Budget
    explored: dict[str, Any] = field(default_factory=dict)

    @property
    def is_certified(self) -> bool:
        return self.kind is not VerdictKind.UNKNOWN

    def to_dict(self) -> dict[str, Any]:
        """Convert to the Verdict JSON document."""
        return {
            "verdict": self.kind.value,
            "certificate": self.certificate,
            "budget": self.budget.model_dump(),
            "explored": self.explored,
        }


def explored_summary(stats: SearchStats) -> dict[str, Any]:
    """Search counters in JSON form."""
    return {
        "expansions": dict(sorted(stats.expansions.items())),
        "visited": dict(sorted(stats.visited.items())),
        "depth": dict(sorted(stats.depth.items())),
        "min_genus": dict(sorted(stats.min_genus.items())),
        "budget_exhausted": stats.budget_exhausted,
    }


def distinct_verdict(name: str, value_a: Any, value_b: Any, budget: Budget) -> Verdict:
    """Distinct verdict naming the separating invariant."""
    return Verdict(
        kind=VerdictKind.DISTINCT,
        certificate={
            "invariant": name,
            "value_a": invariant_json(value_a),
            "value_b": invariant_json(value_b),
        },
        budget=budget,
    )


def separate(a: Fingerprint, b: Fingerprint, budget: Budget) -> Verdict | None:
    """Distinct verdict from the first differing invariant, if any."""
    difference = a.first_difference(b)
    if difference is None:
        return None
    name, value_a, value_b = difference
    logger.info("fingerprints_differ", invariant=name)
    return distinct_verdict(name, value_a, value_b, budget)


def search_verdict(a: GaussCode, b: GaussCode, budget: Budget, workers: int = 1) -> Verdict:
    """Meet-in-the-middle search: Equivalent with both traces, otherwise Unknown."""
    meeting, stats = bidirectional_search(a, b, budget, workers=workers, on_expand=track_expansions)
    explored = explored_summary(stats)
    if meeting is None:
        return Verdict(
            kind=VerdictKind.UNKNOWN,
            certificate={"note": COMPLETENESS_NOTE, "min_genus": explored["min_genus"]},
            budget=budget,
            explored=explored,
        )
    return Verdict(
        kind=VerdictKind.EQUIVALENT,
        certificate={
            "meeting": serialize_gauss(meeting.meeting),
            "trace_a": meeting.trace_a.to_dict(),
            "trace_b": meeting.trace_b.to_dict(),
        },
        budget=budget,
        explored=explored,
    )


def check_equivalence_certificate(certificate: dict[str, Any]) -> bool:
    """Replay both traces of an Equivalent certificate.

    The first trace must end exactly at the meeting code; the second may end at a
    rotation or relabeling of it.
    """
    meeting = parse_gauss(certificate["meeting"])
    trace_a = MoveTrace.from_dict(certificate["trace_a"])
    trace_b = MoveTrace.from_dict(certificate["trace_b"])
    return (
        verify_trace(trace_a, meeting).ok
        and verify_trace(trace_b, meeting, up_to_rotation=True).ok
    )
