"""Bounded breadth-first searches over Reidemeister moves.

Codes are identified by their canonical form, so base points and labels never
split a search node. Frontiers are processed in a fixed order and every step is
deterministic for a given budget, including with a worker pool.
"""

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import structlog
from pydantic import BaseModel, ConfigDict, Field

from virtual_links.topology.codes import GaussCode, canonical_key
from virtual_links.topology.moves import MoveSpec, MoveTrace, enumerate_moves
from virtual_links.topology.surface_embed import total_genus

logger = structlog.get_logger(__name__)

ExpansionHook = Callable[[str], None]


class Budget(BaseModel):
    """Caps on a move search."""

    model_config = ConfigDict(frozen=True)

    max_crossings: int = Field(ge=0, description="Largest crossing number of any explored code")
    max_expansions: int = Field(ge=0, description="Total node expansions across both sides")


@dataclass
class ExpansionAllowance:
    """Expansions left under one budget.

    Searches run on budgets drawn from the allowance and are charged what they used,
    so a pipeline of searches never expands more than ``budget.max_expansions`` codes.
    """

    budget: Budget
    spent: int = 0

    @property
    def remaining(self) -> int:
        return max(self.budget.max_expansions - self.spent, 0)

    def draw(self, cap: int | None = None) -> Budget:
        """Budget for the next search, at most ``cap`` expansions."""
        limit = self.remaining if cap is None else min(cap, self.remaining)
        return self.budget.model_copy(update={"max_expansions": limit})

    def charge(self, expansions: int) -> None:
        self.spent += expansions


@dataclass
class _Node:
    code: GaussCode
    parent: str | None
    move: MoveSpec | None


@dataclass
class _Side:
    name: str
    start: GaussCode
    nodes: dict[str, _Node] = field(default_factory=dict)
    frontier: list[str] = field(default_factory=list)
    expansions: int = 0
    depth: int = 0
    min_genus: int | None = None

    def trace_to(self, key: str) -> MoveTrace:
        steps: list[MoveSpec] = []
        node = self.nodes[key]
        while node.parent is not None:
            assert node.move is not None
            steps.append(node.move)
            node = self.nodes[node.parent]
        return MoveTrace(self.start, tuple(reversed(steps)))


@dataclass
class SearchStats:
    """What a search explored."""

    expansions: dict[str, int] = field(default_factory=dict)
    visited: dict[str, int] = field(default_factory=dict)
    depth: dict[str, int] = field(default_factory=dict)
    min_genus: dict[str, int | None] = field(default_factory=dict)
    budget_exhausted: bool = False

    @property
    def total_expansions(self) -> int:
        return sum(self.expansions.values())


@dataclass
class Meeting:
    """Two traces ending at codes with the same canonical form."""

    meeting: GaussCode
    trace_a: MoveTrace
    trace_b: MoveTrace


def _children(
    codes: Sequence[GaussCode], max_crossings: int, workers: int
) -> list[list[tuple[MoveSpec, GaussCode]]]:
    if workers <= 1 or len(codes) < 2:
        return [enumerate_moves(code, max_crossings) for code in codes]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda code: enumerate_moves(code, max_crossings), codes))


def _expand_level(
    side: _Side,
    other: _Side | None,
    remaining: int,
    max_crossings: int,
    workers: int,
    track_genus: bool,
    on_expand: ExpansionHook | None,
) -> tuple[str | None, bool]:
    """Expand one BFS level of ``side``.

    Returns:
        (key shared with ``other`` if the sides met, whether the budget ran out)
    """
    batch = side.frontier[:remaining]
    cut = len(batch) < len(side.frontier)
    expanded = _children([side.nodes[key].code for key in batch], max_crossings, workers)
    next_frontier: list[tuple[int, str]] = []
    for key, children in zip(batch, expanded, strict=True):
        side.expansions += 1
        if on_expand is not None:
            on_expand(side.name)
        for move, child in children:
            child_key = canonical_key(child)
            if child_key in side.nodes:
                continue
            side.nodes[child_key] = _Node(child, key, move)
            if track_genus:
                genus = total_genus(child)
                side.min_genus = genus if side.min_genus is None else min(side.min_genus, genus)
            if other is not None and child_key in other.nodes:
                return child_key, cut
            next_frontier.append((child.crossing_count, child_key))
    side.frontier = [key for _, key in sorted(next_frontier)]
    side.depth += 1
    logger.debug("search_level", side=side.name, depth=side.depth, frontier=len(side.frontier))
    return None, cut


def _start(name: str, code: GaussCode, track_genus: bool) -> _Side:
    key = canonical_key(code)
    side = _Side(name, code, {key: _Node(code, None, None)}, [key])
    if track_genus:
        side.min_genus = total_genus(code)
    return side


def _stats(sides: Sequence[_Side], exhausted: bool) -> SearchStats:
    return SearchStats(
        expansions={s.name: s.expansions for s in sides},
        visited={s.name: len(s.nodes) for s in sides},
        depth={s.name: s.depth for s in sides},
        min_genus={s.name: s.min_genus for s in sides},
        budget_exhausted=exhausted,
    )


def _expand_first(a: _Side, b: _Side) -> bool:
    """Smaller frontier first; on equal sizes the side holding larger codes."""

    def order(side: _Side) -> tuple[int, int]:
        return (len(side.frontier), -side.nodes[side.frontier[0]].code.crossing_count)

    return order(a) <= order(b)


def bidirectional_search(
    a: GaussCode,
    b: GaussCode,
    budget: Budget,
    workers: int = 1,
    track_genus: bool = True,
    on_expand: ExpansionHook | None = None,
) -> tuple[Meeting | None, SearchStats]:
    """Grow move neighbourhoods of ``a`` and ``b`` until they share a canonical form.

    The side with the smaller frontier is expanded a whole level at a time; on equal
    frontier sizes the side whose smallest frontier code has more crossings goes first,
    then ``a``. Expansions across both sides never exceed ``budget.max_expansions``.
    """
    side_a = _start("a", a, track_genus)
    side_b = _start("b", b, track_genus)
    shared = canonical_key(a) if canonical_key(a) in side_b.nodes else None
    exhausted = False
    while shared is None and side_a.frontier and side_b.frontier:
        remaining = budget.max_expansions - side_a.expansions - side_b.expansions
        if remaining <= 0:
            exhausted = True
            break
        side, other = (side_a, side_b) if _expand_first(side_a, side_b) else (side_b, side_a)
        shared, cut = _expand_level(
            side, other, remaining, budget.max_crossings, workers, track_genus, on_expand
        )
        if cut and shared is None:
            exhausted = True
            break

    stats = _stats((side_a, side_b), exhausted)
    if shared is None:
        if exhausted:
            logger.info("search_budget_exhausted", expansions=stats.total_expansions)
        return None, stats
    meeting = Meeting(side_a.nodes[shared].code, side_a.trace_to(shared), side_b.trace_to(shared))
    logger.info(
        "search_met",
        meeting=str(meeting.meeting),
        steps_a=len(meeting.trace_a),
        steps_b=len(meeting.trace_b),
        expansions=stats.total_expansions,
    )
    return meeting, stats


@dataclass
class MinimumResult:
    """Best representative found by :func:`canonical_minimum`."""

    code: GaussCode
    genus: int
    trace: MoveTrace
    complete: bool  # the capped neighbourhood was explored entirely
    stats: SearchStats


def canonical_minimum(
    code: GaussCode,
    budget: Budget,
    workers: int = 1,
    stop: Callable[[GaussCode, int], bool] | None = None,
    on_expand: ExpansionHook | None = None,
) -> MinimumResult:
    """Least (genus, crossings, canonical text) code reachable within the budget.

    ``stop`` ends the search as soon as a visited code satisfies it. Reaching a
    crossing-free code of genus 0 also ends it; that code is the unique least one, so
    the result is reported complete.
    """
    side = _start("a", code, track_genus=False)

    def rank(key: str) -> tuple[int, int, str]:
        node = side.nodes[key]
        return (total_genus(node.code), node.code.crossing_count, key)

    best_key = side.frontier[0]
    best = rank(best_key)
    exhausted = False
    stopped = stop is not None and stop(code, best[0])
    floor = best[:2] == (0, 0)
    seen = 1
    while not (stopped or floor) and side.frontier:
        remaining = budget.max_expansions - side.expansions
        if remaining <= 0:
            exhausted = True
            break
        _, cut = _expand_level(side, None, remaining, budget.max_crossings, workers, False, on_expand)
        for key in list(side.nodes)[seen:]:
            candidate = rank(key)
            if candidate < best:
                best_key, best = key, candidate
                floor = best[:2] == (0, 0)
                if floor:
                    break
            if stop is not None and stop(side.nodes[key].code, candidate[0]):
                best_key, best = key, candidate
                stopped = True
                break
        seen = len(side.nodes)
        if floor:
            break
        if cut:
            exhausted = True
            break

    side.min_genus = best[0]
    stats = _stats((side,), exhausted)
    if exhausted:
        logger.info("search_budget_exhausted", expansions=stats.total_expansions)
    return MinimumResult(
        code=side.nodes[best_key].code,
        genus=best[0],
        trace=side.trace_to(best_key),
        complete=floor or (not exhausted and not stopped),
        stats=stats,
    )
