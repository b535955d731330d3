"""End-to-end equivalence decisions for virtual links."""

import time
from dataclasses import dataclass
from itertools import permutations
from typing import Any

import structlog

from virtual_links.config import Settings
from virtual_links.core.metrics import track_decide_duration, track_verdict
from virtual_links.services.decompose_service import (
    DecomposeConfig,
    DecomposeService,
    Part,
    SplitDecomposition,
)
from virtual_links.services.verdict import (
    Verdict,
    VerdictKind,
    check_equivalence_certificate,
    distinct_verdict,
    search_verdict,
    separate,
)
from virtual_links.topology.codes import GaussCode, canonical_form, serialize_gauss
from virtual_links.topology.invariants import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    Fingerprint,
    fingerprint,
    invariant_value,
    sublink_invariant_name,
)
from virtual_links.topology.moves import MoveError, MoveSpec, MoveTrace, lift_move, replay
from virtual_links.topology.search import Budget, ExpansionAllowance, MinimumResult, canonical_minimum

logger = structlog.get_logger(__name__)

# Part matchings are tried exhaustively up to this many parts.
MAX_MATCHED_PARTS = 6

__all__ = [
    "DeciderConfig",
    "DeciderService",
    "canonical_form",
    "decider_config",
    "get_decider_service",
    "resolve_budget",
]


@dataclass
class DeciderConfig:
    """Configuration for the decision pipeline."""

    workers: int = 1
    coloring_exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
    # Classify split parts before comparing; one genus-0 search per part
    classify_parts: bool = True


class DeciderService:
    """Service deciding equivalence of two virtual links.

    Equivalent and Distinct verdicts are certified. Unknown only reports that the
    budget ran out before either certificate was found.
    """

    def __init__(self, config: DeciderConfig | None = None) -> None:
        """Initialize decider service.

        Args:
            config: Decider configuration (uses defaults if not provided)
        """
        self.config = config or DeciderConfig()
        self._decomposer = DecomposeService(
            DecomposeConfig(
                workers=self.config.workers,
                coloring_exhaustive_limit=self.config.coloring_exhaustive_limit,
            )
        )

    def _fingerprint(self, code: GaussCode) -> Fingerprint:
        return fingerprint(code, self.config.coloring_exhaustive_limit)

    def clamp(self, budget: Budget, *codes: GaussCode) -> Budget:
        """Raise ``max_crossings`` to the largest input size when it is smaller."""
        needed = max(code.crossing_count for code in codes)
        if budget.max_crossings >= needed:
            return budget
        logger.warning("budget_clamped", max_crossings=budget.max_crossings, input_crossings=needed)
        return budget.model_copy(update={"max_crossings": needed})

    def canonical_minimum(self, code: GaussCode, budget: Budget) -> MinimumResult:
        """Least (genus, crossings, canonical text) representative found within the budget."""
        return canonical_minimum(code, self.clamp(budget, code), workers=self.config.workers)

    def decide(self, a: GaussCode, b: GaussCode, budget: Budget) -> Verdict:
        """Decide whether two codes present the same virtual link.

        Args:
            a: First code
            b: Second code
            budget: Search caps; ``max_crossings`` is raised to the input sizes

        Returns:
            Equivalent with two replayable traces, Distinct with a separating
            invariant, or Unknown with the explored counts
        """
        start_time = time.perf_counter()
        budget = self.clamp(budget, a, b)
        verdict = self._decide(a, b, budget)
        duration = time.perf_counter() - start_time

        track_verdict(verdict.kind.value)
        track_decide_duration(duration)
        logger.info("decided", verdict=verdict.kind.value, seconds=round(duration, 3))
        return verdict

    def _decide(self, a: GaussCode, b: GaussCode, budget: Budget) -> Verdict:
        allowance = ExpansionAllowance(budget)
        split_a, split_b = self._split(a, b, allowance)
        parts = {"a": _part_summary(split_a), "b": _part_summary(split_b)}
        logger.debug("decide_step", step="split", parts_a=len(split_a), parts_b=len(split_b))

        verdict = self._compare_classical_parts(a, b, split_a, split_b, allowance)
        if verdict is None:
            verdict = self._separate_remaining(a, b, split_a, split_b, budget)
        if verdict is None:
            logger.debug("decide_step", step="search")
            verdict = search_verdict(a, b, allowance.draw(), workers=self.config.workers)
            allowance.charge(_search_expansions(verdict))

        verdict.budget = budget
        verdict.explored = {**verdict.explored, "parts": parts, "spent": allowance.spent}
        return verdict

    def _split(
        self, a: GaussCode, b: GaussCode, allowance: ExpansionAllowance
    ) -> tuple[SplitDecomposition, SplitDecomposition]:
        """Split both inputs; classification may use half of the allowance."""
        if not self.config.classify_parts:
            return self._decomposer.decompose(a), self._decomposer.decompose(b)
        pool = allowance.budget.max_expansions // 2
        split_a = self._decomposer.decompose(a, allowance.draw(pool // 2))
        allowance.charge(split_a.expansions)
        split_b = self._decomposer.decompose(b, allowance.draw(pool - pool // 2))
        allowance.charge(split_b.expansions)
        return split_a, split_b

    def _compare_classical_parts(
        self,
        a: GaussCode,
        b: GaussCode,
        split_a: SplitDecomposition,
        split_b: SplitDecomposition,
        allowance: ExpansionAllowance,
    ) -> Verdict | None:
        """Compare classical parts carrying the same link components.

        A Distinct pair separates the inputs, since a sub-link of an ordered link is
        itself an invariant. When the pairs cover both inputs and every pair is
        Equivalent, their traces together join the whole links.
        """
        classical_b = {part.components: part for part in split_b.classical_parts()}
        pairs = [
            (part, classical_b[part.components])
            for part in split_a.classical_parts()
            if part.components in classical_b
        ]
        if not pairs:
            return None
        covering = len(pairs) == len(split_a) == len(split_b)
        reserve = 0 if covering else 1  # a share left for the whole-link search
        verdicts = []
        for i, (part_a, part_b) in enumerate(pairs):
            share = allowance.draw(allowance.remaining // (len(pairs) - i + reserve))
            verdict = self._decomposer.compare_classical(part_a.code, part_b.code, share)
            allowance.charge(_search_expansions(verdict))
            logger.debug(
                "decide_step",
                step="classical",
                components=list(part_a.components),
                verdict=verdict.kind.value,
            )
            if verdict.kind is VerdictKind.DISTINCT:
                return self._part_distinct(a, b, part_a.components, verdict, allowance.budget)
            verdicts.append(verdict)

        if covering and len(pairs) == 1:
            return verdicts[0]  # the one part is the whole link
        if covering and all(v.kind is VerdictKind.EQUIVALENT for v in verdicts):
            return _join_parts(a, b, pairs, verdicts, allowance.budget)
        return None

    def _part_distinct(
        self,
        a: GaussCode,
        b: GaussCode,
        components: tuple[int, ...],
        verdict: Verdict,
        budget: Budget,
    ) -> Verdict:
        """Distinct verdict for the inputs from one separated pair of parts.

        The invariant is named for the whole links when it separates them too,
        otherwise for the sub-link the parts carry.
        """
        name = verdict.certificate["invariant"]
        value_a, value_b = invariant_value(name, a), invariant_value(name, b)
        if value_a == value_b:
            name = sublink_invariant_name(components, name)
            value_a, value_b = invariant_value(name, a), invariant_value(name, b)
        return distinct_verdict(name, value_a, value_b, budget)

    def _separate_remaining(
        self,
        a: GaussCode,
        b: GaussCode,
        split_a: SplitDecomposition,
        split_b: SplitDecomposition,
        budget: Budget,
    ) -> Verdict | None:
        """Distinct verdict from the invariants, guided by the remaining parts."""
        name = self._part_hint(split_a.other_parts(), split_b.other_parts())
        if name is not None:
            value_a, value_b = invariant_value(name, a), invariant_value(name, b)
            if value_a != value_b:
                logger.debug("decide_step", step="parts", invariant=name)
                return distinct_verdict(name, value_a, value_b, budget)

        verdict = separate(self._fingerprint(a), self._fingerprint(b), budget)
        if verdict is not None:
            logger.debug("decide_step", step="fingerprint")
        return verdict

    def _part_hint(self, parts_a: list[Part], parts_b: list[Part]) -> str | None:
        """Invariant separating the parts under every matching, if one does.

        Part-level differences only choose which whole-link invariant is checked;
        unequal part counts give no hint since diagram-level splitting is incomplete.
        """
        if not parts_a or len(parts_a) != len(parts_b) or len(parts_a) > MAX_MATCHED_PARTS:
            return None
        prints_a = [self._fingerprint(part.code) for part in parts_a]
        prints_b = [self._fingerprint(part.code) for part in parts_b]
        first: str | None = None
        for matching in permutations(range(len(prints_b))):
            difference = None
            for i, j in enumerate(matching):
                difference = prints_a[i].first_difference(prints_b[j])
                if difference is not None:
                    break
            if difference is None:
                return None
            first = first or difference[0]
        return first


def _part_summary(split: SplitDecomposition) -> list[dict[str, Any]]:
    return [
        {
            "components": list(part.components),
            "classification": part.result.classification.value if part.result else None,
        }
        for part in split.parts
    ]


def _search_expansions(verdict: Verdict) -> int:
    return sum(verdict.explored.get("expansions", {}).values())


def _join_parts(
    a: GaussCode,
    b: GaussCode,
    pairs: list[tuple[Part, Part]],
    verdicts: list[Verdict],
    budget: Budget,
) -> Verdict | None:
    """Equivalent verdict from one Equivalent certificate per pair of parts.

    Part traces only touch their own components, so they run one after another on the
    whole links. Returns None if the joined certificate does not replay.
    """
    steps_a: list[MoveSpec] = []
    steps_b: list[MoveSpec] = []
    for (part_a, part_b), verdict in zip(pairs, verdicts, strict=True):
        trace_a = MoveTrace.from_dict(verdict.certificate["trace_a"])
        trace_b = MoveTrace.from_dict(verdict.certificate["trace_b"])
        steps_a.extend(lift_move(m, part_a.components) for m in trace_a.steps)
        steps_b.extend(lift_move(m, part_b.components) for m in trace_b.steps)
    joined_a, joined_b = MoveTrace(a, tuple(steps_a)), MoveTrace(b, tuple(steps_b))
    try:
        meeting = replay(joined_a)
    except MoveError as e:
        logger.error("joined_trace_rejected", error=str(e))
        return None
    certificate = {
        "meeting": serialize_gauss(meeting),
        "trace_a": joined_a.to_dict(),
        "trace_b": joined_b.to_dict(),
    }
    if not check_equivalence_certificate(certificate):
        logger.error("joined_trace_rejected", meeting=certificate["meeting"])
        return None
    logger.debug("decide_step", step="joined", parts=len(pairs))
    return Verdict(VerdictKind.EQUIVALENT, certificate, budget)


def get_decider_service(config: DeciderConfig | None = None) -> DeciderService:
    """Get decider service instance."""
    return DeciderService(config)


def resolve_budget(
    settings: Settings,
    *codes: GaussCode,
    max_crossings: int | None = None,
    max_expansions: int | None = None,
) -> Budget:
    """Budget from explicit values, falling back to the configured defaults.

    The default crossing cap is the largest input size plus ``extra_crossings``.
    """
    if max_crossings is None:
        largest = max((code.crossing_count for code in codes), default=0)
        max_crossings = largest + settings.extra_crossings
    if max_expansions is None:
        max_expansions = settings.max_expansions
    return Budget(max_crossings=max_crossings, max_expansions=max_expansions)


def decider_config(settings: Settings) -> DeciderConfig:
    """Decider configuration from application settings."""
    return DeciderConfig(
        workers=settings.search_workers,
        coloring_exhaustive_limit=settings.coloring_exhaustive_limit,
    )
