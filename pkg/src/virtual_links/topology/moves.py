"""Reidemeister moves as local rewrites of Gauss codes.

Sites are ``(component, offset)`` positions. Additions are described by where the new
symbols sit in the *result*: a pair at offset ``o`` occupies offsets ``o`` and
``o + 1`` (cyclically) of the rewritten component. Removals name the same offsets in the
input, so every move has an exact inverse.
"""

from collections import defaultdict
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, replace
from enum import StrEnum
from typing import Any

from virtual_links.topology.codes import (
    GaussCode,
    GaussCodeError,
    Passage,
    Position,
    Symbol,
    canonical_form,
    canonical_relabel,
    parse_gauss,
    serialize_gauss,
    validate,
)


class MoveError(Exception):
    """Base exception for move handling."""


class InapplicableMoveError(MoveError):
    """Raised when a move does not match the code at its site."""


class MoveKind(StrEnum):
    R1_ADD = "R1_add"
    R1_REMOVE = "R1_remove"
    R2_ADD = "R2_add"
    R2_REMOVE = "R2_remove"
    R3 = "R3"


@dataclass(frozen=True)
class MoveSpec:
    """One Reidemeister move at a fixed site.

    R1_add uses ``sign`` and ``passage`` (the passage placed first). R2 moves pair the
    Over strand at ``site`` with the Under strand at ``partner``; R2_add also uses ``sign``
    (sign of the first new crossing) and ``reversed`` (Under strand meets the crossings in
    the opposite order). R3 names the all-Over pair, the mixed pair and the all-Under pair.
    """

    kind: MoveKind
    site: Position
    sign: int | None = None
    passage: Passage | None = None
    partner: Position | None = None
    third: Position | None = None
    reversed: bool = False

    def params(self) -> dict[str, Any]:
        """Kind-specific parameters as plain JSON values."""
        params: dict[str, Any] = {}
        if self.kind is MoveKind.R1_ADD:
            params = {"sign": self.sign, "passage": self.passage.value if self.passage else None}
        elif self.kind is MoveKind.R2_ADD:
            params = {"partner": list(self.partner or ()), "sign": self.sign, "reversed": self.reversed}
        elif self.kind is MoveKind.R2_REMOVE:
            params = {"partner": list(self.partner or ())}
        elif self.kind is MoveKind.R3:
            params = {"partner": list(self.partner or ()), "third": list(self.third or ())}
        return params

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "site": list(self.site), "params": self.params()}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MoveSpec":
        """Rebuild a move from its JSON form.

        Raises:
            MoveError: If the document is malformed
        """
        try:
            kind = MoveKind(data["kind"])
            params = data.get("params") or {}
            site = _position(data["site"])
            passage = params.get("passage")
            return cls(
                kind=kind,
                site=site,
                sign=params.get("sign"),
                passage=Passage(passage) if passage else None,
                partner=_position(params["partner"]) if params.get("partner") else None,
                third=_position(params["third"]) if params.get("third") else None,
                reversed=bool(params.get("reversed", False)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise MoveError(f"malformed move {data!r}: {e}") from e

    def __str__(self) -> str:
        c, o = self.site
        extras = ",".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.kind.value}@{c}.{o}" + (f"[{extras}]" if extras else "")


def _position(value: Sequence[int]) -> Position:
    c, o = value
    return (int(c), int(o))


@dataclass(frozen=True)
class MoveTrace:
    """A start code and the moves that rewrite it."""

    start: GaussCode
    steps: tuple[MoveSpec, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def to_dict(self) -> dict[str, Any]:
        return {"start": serialize_gauss(self.start), "steps": [step.to_dict() for step in self.steps]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MoveTrace":
        """Rebuild a trace from its JSON form.

        Raises:
            GaussCodeError: If the start code is invalid
            MoveError: If a step is malformed
        """
        return cls(parse_gauss(data["start"]), tuple(MoveSpec.from_dict(s) for s in data.get("steps", [])))


@dataclass
class TraceCheck:
    """Outcome of replaying a trace."""

    ok: bool
    failed_step: int | None = None
    message: str = ""
    end: GaussCode | None = None


# --- sequence helpers ------------------------------------------------------


def _place(seq: Sequence[Symbol], placements: Mapping[int, Symbol]) -> tuple[Symbol, ...]:
    """Insert symbols so that they end up at the given result offsets."""
    size = len(seq) + len(placements)
    if any(not 0 <= i < size for i in placements):
        raise InapplicableMoveError(f"placement offsets {sorted(placements)} outside 0..{size - 1}")
    rest = iter(seq)
    return tuple(placements[i] if i in placements else next(rest) for i in range(size))


def _drop(seq: Sequence[Symbol], indices: set[int]) -> tuple[Symbol, ...]:
    return tuple(s for i, s in enumerate(seq) if i not in indices)


def _component(code: GaussCode, c: int) -> tuple[Symbol, ...]:
    if not 0 <= c < code.component_count:
        raise InapplicableMoveError(f"component {c} does not exist")
    return code.components[c]


def _pair(code: GaussCode, position: Position) -> tuple[int, int, Symbol, Symbol]:
    """Offsets and symbols of the adjacent pair starting at ``position``."""
    c, o = position
    component = _component(code, c)
    size = len(component)
    if size < 2 or not 0 <= o < size:
        raise InapplicableMoveError(f"no adjacent pair at {c}.{o}")
    nxt = (o + 1) % size
    return o, nxt, component[o], component[nxt]


def _replace_components(code: GaussCode, updates: Mapping[int, tuple[Symbol, ...]]) -> GaussCode:
    return GaussCode(tuple(updates.get(c, comp) for c, comp in enumerate(code.components)))


def adjacent_pairs(code: GaussCode) -> Iterator[tuple[Position, Symbol, Symbol]]:
    """Every cyclically adjacent pair of symbols in position order.

    A two-symbol component has two arcs, read as (x, y) at offset 0 and (y, x) at
    offset 1; a one-symbol component has none.
    """
    for c, component in enumerate(code.components):
        size = len(component)
        offsets = range(size) if size >= 2 else range(0)
        for o in offsets:
            yield (c, o), component[o], component[(o + 1) % size]


def _gaps(size: int) -> range:
    return range(size) if size else range(1)


# --- application -----------------------------------------------------------


def apply_move(code: GaussCode, m: MoveSpec) -> GaussCode:
    """Apply one move.

    Raises:
        InapplicableMoveError: If the move does not match the code at its site
    """
    handler = _APPLY[m.kind]
    result = handler(code, m)
    report = validate(result)
    if report.issues:
        raise InapplicableMoveError(f"{m} produced an invalid code: {report.issues[0].message}")
    return result


def _apply_r1_remove(code: GaussCode, m: MoveSpec) -> GaussCode:
    o, nxt, first, second = _pair(code, m.site)
    if first.label != second.label:
        raise InapplicableMoveError(f"{m}: offsets {o} and {nxt} do not form a kink")
    c = m.site[0]
    return _replace_components(code, {c: _drop(code.components[c], {o, nxt})})


def _apply_r1_add(code: GaussCode, m: MoveSpec) -> GaussCode:
    if m.sign not in (1, -1) or m.passage is None:
        raise InapplicableMoveError(f"{m}: R1_add needs a sign and a passage")
    c, o = m.site
    component = _component(code, c)
    size = len(component) + 2
    if not 0 <= o < size:
        raise InapplicableMoveError(f"{m}: offset outside 0..{size - 1}")
    label = code.max_label() + 1
    placed = _place(
        component,
        {o: Symbol(label, m.passage, m.sign), (o + 1) % size: Symbol(label, m.passage.opposite, m.sign)},
    )
    return _replace_components(code, {c: placed})


def _apply_r2_remove(code: GaussCode, m: MoveSpec) -> GaussCode:
    if m.partner is None:
        raise InapplicableMoveError(f"{m}: R2_remove needs a partner pair")
    o1, n1, a, b = _pair(code, m.site)
    o2, n2, x, y = _pair(code, m.partner)
    if a.passage is not Passage.OVER or b.passage is not Passage.OVER:
        raise InapplicableMoveError(f"{m}: site pair is not Over-Over")
    if x.passage is not Passage.UNDER or y.passage is not Passage.UNDER:
        raise InapplicableMoveError(f"{m}: partner pair is not Under-Under")
    if a.label == b.label or {a.label, b.label} != {x.label, y.label}:
        raise InapplicableMoveError(f"{m}: pairs do not share two crossings")
    if a.sign != -b.sign:
        raise InapplicableMoveError(f"{m}: crossings do not cancel")
    (c1, _), (c2, _) = m.site, m.partner
    if c1 == c2:
        return _replace_components(code, {c1: _drop(code.components[c1], {o1, n1, o2, n2})})
    return _replace_components(
        code,
        {c1: _drop(code.components[c1], {o1, n1}), c2: _drop(code.components[c2], {o2, n2})},
    )


def _apply_r2_add(code: GaussCode, m: MoveSpec) -> GaussCode:
    if m.partner is None or m.sign not in (1, -1):
        raise InapplicableMoveError(f"{m}: R2_add needs a partner and a sign")
    (c1, o1), (c2, o2) = m.site, m.partner
    first = code.max_label() + 1
    second = first + 1
    over = [Symbol(first, Passage.OVER, m.sign), Symbol(second, Passage.OVER, -m.sign)]
    under = [Symbol(first, Passage.UNDER, m.sign), Symbol(second, Passage.UNDER, -m.sign)]
    if m.reversed:
        under.reverse()
    if c1 == c2:
        component = _component(code, c1)
        size = len(component) + 4
        offsets = [o1 % size, (o1 + 1) % size, o2 % size, (o2 + 1) % size]
        if len(set(offsets)) != 4 or not (0 <= o1 < size and 0 <= o2 < size):
            raise InapplicableMoveError(f"{m}: Over and Under pairs overlap")
        placed = _place(component, dict(zip(offsets, over + under, strict=True)))
        return _replace_components(code, {c1: placed})
    comp1, comp2 = _component(code, c1), _component(code, c2)
    size1, size2 = len(comp1) + 2, len(comp2) + 2
    if not (0 <= o1 < size1 and 0 <= o2 < size2):
        raise InapplicableMoveError(f"{m}: offset out of range")
    return _replace_components(
        code,
        {
            c1: _place(comp1, {o1: over[0], (o1 + 1) % size1: over[1]}),
            c2: _place(comp2, {o2: under[0], (o2 + 1) % size2: under[1]}),
        },
    )


def _r3_roles(code: GaussCode, m: MoveSpec) -> list[tuple[int, int, int]]:
    """Check the triangle pattern and return the three pairs as (component, offset, next)."""
    if m.partner is None or m.third is None:
        raise InapplicableMoveError(f"{m}: R3 needs three pairs")
    t0, t1, ta, tb = _pair(code, m.site)
    m0, m1, ma, mb = _pair(code, m.partner)
    b0, b1, ba, bb = _pair(code, m.third)
    if not (ta.passage is tb.passage is Passage.OVER):
        raise InapplicableMoveError(f"{m}: top pair is not Over-Over")
    if not (ba.passage is bb.passage is Passage.UNDER):
        raise InapplicableMoveError(f"{m}: bottom pair is not Under-Under")
    if ma.passage is mb.passage:
        raise InapplicableMoveError(f"{m}: middle pair is not mixed")
    m_under, m_over = (ma, mb) if ma.passage is Passage.UNDER else (mb, ma)
    tm, mb_label = m_under.label, m_over.label
    if tm not in (ta.label, tb.label):
        raise InapplicableMoveError(f"{m}: middle strand does not pass under the top strand")
    tb_label = tb.label if ta.label == tm else ta.label
    if {ba.label, bb.label} != {tb_label, mb_label} or len({tm, tb_label, mb_label}) != 3:
        raise InapplicableMoveError(f"{m}: pairs do not form a triangle")
    t = 1 if ta.label == tm else -1
    m_order = 1 if ma.label == tm else -1
    b = 1 if ba.label == tb_label else -1
    s_tm, s_tb, s_mb = code.sign(tm), code.sign(tb_label), code.sign(mb_label)
    if s_tm * s_tb != m_order * b or s_tm * s_mb != t * b:
        raise InapplicableMoveError(f"{m}: sign pattern does not admit a third move")
    return [(m.site[0], t0, t1), (m.partner[0], m0, m1), (m.third[0], b0, b1)]


def _apply_r3(code: GaussCode, m: MoveSpec) -> GaussCode:
    components = [list(component) for component in code.components]
    for c, first, second in _r3_roles(code, m):
        components[c][first], components[c][second] = components[c][second], components[c][first]
    return GaussCode.of(components)


_APPLY = {
    MoveKind.R1_REMOVE: _apply_r1_remove,
    MoveKind.R1_ADD: _apply_r1_add,
    MoveKind.R2_REMOVE: _apply_r2_remove,
    MoveKind.R2_ADD: _apply_r2_add,
    MoveKind.R3: _apply_r3,
}


def inverse_move(code: GaussCode, m: MoveSpec) -> MoveSpec:
    """The move that undoes ``m`` applied to ``code``.

    Raises:
        InapplicableMoveError: If ``m`` does not apply to ``code``
    """
    if m.kind is MoveKind.R1_ADD:
        return MoveSpec(MoveKind.R1_REMOVE, m.site)
    if m.kind is MoveKind.R2_ADD:
        return MoveSpec(MoveKind.R2_REMOVE, m.site, partner=m.partner)
    if m.kind is MoveKind.R3:
        _r3_roles(code, m)
        return m
    if m.kind is MoveKind.R1_REMOVE:
        _, _, first, second = _pair(code, m.site)
        if first.label != second.label:
            raise InapplicableMoveError(f"{m}: not a kink")
        return MoveSpec(MoveKind.R1_ADD, m.site, sign=first.sign, passage=first.passage)
    apply_move(code, m)
    _, _, a, _ = _pair(code, m.site)
    assert m.partner is not None
    _, _, x, _ = _pair(code, m.partner)
    return MoveSpec(MoveKind.R2_ADD, m.site, sign=a.sign, partner=m.partner, reversed=x.label != a.label)


def lift_move(m: MoveSpec, components: Sequence[int]) -> MoveSpec:
    """The same move on a link holding this one as the sub-link ``components``.

    Offsets are unchanged; component ``c`` of the sub-link is ``components[c]`` of the
    whole link. New crossings take fresh labels of the whole link when applied.
    """

    def lift(position: Position) -> Position:
        c, o = position
        return (components[c], o)

    return replace(
        m,
        site=lift(m.site),
        partner=lift(m.partner) if m.partner is not None else None,
        third=lift(m.third) if m.third is not None else None,
    )


# --- enumeration -----------------------------------------------------------


def _r1_removals(code: GaussCode) -> Iterator[MoveSpec]:
    for site, first, second in adjacent_pairs(code):
        if first.label == second.label:
            yield MoveSpec(MoveKind.R1_REMOVE, site)


def _pairs_by_labels(code: GaussCode) -> dict[tuple[str, frozenset[int]], list[tuple[Position, Symbol, Symbol]]]:
    index: dict[tuple[str, frozenset[int]], list[tuple[Position, Symbol, Symbol]]] = defaultdict(list)
    for site, first, second in adjacent_pairs(code):
        if first.label == second.label:
            continue
        kind = "".join(sorted((first.passage.value, second.passage.value)))
        index[(kind, frozenset((first.label, second.label)))].append((site, first, second))
    return index


def _r2_removals(code: GaussCode, index: Mapping[tuple[str, frozenset[int]], list[Any]]) -> Iterator[MoveSpec]:
    for site, first, second in adjacent_pairs(code):
        if first.passage is not Passage.OVER or second.passage is not Passage.OVER:
            continue
        if first.label == second.label or first.sign != -second.sign:
            continue
        for partner, _, _ in index.get(("UU", frozenset((first.label, second.label))), []):
            yield MoveSpec(MoveKind.R2_REMOVE, site, partner=partner)


def _r3_moves(code: GaussCode, index: Mapping[tuple[str, frozenset[int]], list[Any]]) -> Iterator[MoveSpec]:
    mixed_by_under: dict[int, list[tuple[Position, Symbol, Symbol]]] = defaultdict(list)
    for (kind, _), pairs in index.items():
        if kind == "OU":
            for site, first, second in pairs:
                under = first if first.passage is Passage.UNDER else second
                mixed_by_under[under.label].append((site, first, second))
    for site, first, second in adjacent_pairs(code):
        if first.passage is not Passage.OVER or second.passage is not Passage.OVER or first.label == second.label:
            continue
        for tm, tb in ((first.label, second.label), (second.label, first.label)):
            for partner, ma, mb in sorted(mixed_by_under.get(tm, []), key=lambda p: p[0]):
                mb_label = mb.label if ma.label == tm else ma.label
                if mb_label == tb:
                    continue
                for third, _, _ in index.get(("UU", frozenset((tb, mb_label))), []):
                    move = MoveSpec(MoveKind.R3, site, partner=partner, third=third)
                    try:
                        _r3_roles(code, move)
                    except InapplicableMoveError:
                        continue
                    yield move


def _r1_additions(code: GaussCode) -> Iterator[MoveSpec]:
    for c, component in enumerate(code.components):
        for o in _gaps(len(component)):
            for sign in (1, -1):
                for passage in (Passage.OVER, Passage.UNDER):
                    yield MoveSpec(MoveKind.R1_ADD, (c, o), sign=sign, passage=passage)


def _r2_sites(code: GaussCode) -> Iterator[tuple[Position, Position]]:
    sizes = [len(component) for component in code.components]
    for c1, size1 in enumerate(sizes):
        for c2, size2 in enumerate(sizes):
            if c1 != c2:
                for g1 in _gaps(size1):
                    for g2 in _gaps(size2):
                        yield (c1, g1), (c2, g2)
                continue
            for g1 in _gaps(size1):
                for g2 in _gaps(size1):
                    if g1 < g2:
                        yield (c1, g1), (c1, g2 + 2)
                    elif g1 > g2:
                        yield (c1, g1 + 2), (c1, g2)
                    else:
                        yield (c1, g1), (c1, g1 + 2)
                        if size1:
                            yield (c1, g1 + 2), (c1, g1)


def _r2_additions(code: GaussCode) -> Iterator[MoveSpec]:
    for site, partner in _r2_sites(code):
        for sign in (1, -1):
            for reversed_ in (False, True):
                yield MoveSpec(MoveKind.R2_ADD, site, sign=sign, partner=partner, reversed=reversed_)


def enumerate_moves(code: GaussCode, max_crossings: int | None = None) -> list[tuple[MoveSpec, GaussCode]]:
    """All applicable moves with their results, in a fixed order.

    Removals come first (R1, R2), then R3, then additions (R1, R2). Additions whose
    result would exceed ``max_crossings`` are skipped, and a move whose result repeats
    an earlier one is dropped.
    """
    index = _pairs_by_labels(code)
    crossings = code.crossing_count
    moves: list[MoveSpec] = [*_r1_removals(code), *_r2_removals(code, index), *_r3_moves(code, index)]
    if max_crossings is None or crossings + 1 <= max_crossings:
        moves.extend(_r1_additions(code))
    if max_crossings is None or crossings + 2 <= max_crossings:
        moves.extend(_r2_additions(code))
    results: list[tuple[MoveSpec, GaussCode]] = []
    seen: set[GaussCode] = set()
    for m in moves:
        child = apply_move(code, m)
        if child not in seen:
            seen.add(child)
            results.append((m, child))
    return results


# --- traces ----------------------------------------------------------------


def replay(trace: MoveTrace) -> GaussCode:
    """Apply every step of a trace from its start.

    Raises:
        MoveError: If a step does not apply
    """
    code = trace.start
    for step in trace.steps:
        code = apply_move(code, step)
    return code


def verify_trace(trace: MoveTrace, expected_end: GaussCode, up_to_rotation: bool = False) -> TraceCheck:
    """Replay a trace and compare its end with ``expected_end``.

    Ends are compared after canonical relabeling; with ``up_to_rotation`` the cyclic
    base point of every component is ignored as well.
    """
    code = trace.start
    for i, step in enumerate(trace.steps):
        try:
            code = apply_move(code, step)
        except (MoveError, GaussCodeError, KeyError) as e:
            return TraceCheck(ok=False, failed_step=i, message=str(e))
    normalize = canonical_form if up_to_rotation else canonical_relabel
    if normalize(code) != normalize(expected_end):
        return TraceCheck(
            ok=False,
            failed_step=len(trace.steps),
            message=f"trace ends at {code}, expected {expected_end}",
            end=code,
        )
    return TraceCheck(ok=True, end=code)
