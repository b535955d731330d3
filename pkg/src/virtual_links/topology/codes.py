"""Signed Gauss codes for oriented virtual links.

Text grammar: a symbol is ``O`` or ``U``, a positive decimal label and ``+`` or ``-``;
components are joined by ``/`` and ``0`` stands for a crossing-free component.
Whitespace is ignored. Virtual crossings are not recorded.
"""

import re
from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum

from virtual_links.topology.report import ValidationReport

_SYMBOL = re.compile(r"([OU])([1-9][0-9]*)([+-])")


class GaussCodeError(Exception):
    """Base exception for Gauss-code handling."""


class GaussCodeSyntaxError(GaussCodeError):
    """Raised when code text does not follow the grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GaussCodeValidationError(GaussCodeError):
    """Raised when a parsed code violates the double-occurrence invariants."""

    def __init__(self, report: ValidationReport) -> None:
        super().__init__("; ".join(issue.message for issue in report.issues))
        self.report = report


class Passage(str, Enum):
    """How a component passes through a crossing."""

    OVER = "O"
    UNDER = "U"

    @property
    def opposite(self) -> "Passage":
        """The other passage at the same crossing."""
        return Passage.UNDER if self is Passage.OVER else Passage.OVER


@dataclass(frozen=True, order=True)
class Symbol:
    """One passage of a component through a crossing."""

    label: int
    passage: Passage
    sign: int

    def __str__(self) -> str:
        return f"{self.passage.value}{self.label}{'+' if self.sign > 0 else '-'}"


Component = tuple[Symbol, ...]
Position = tuple[int, int]  # (component index, offset)


@dataclass(frozen=True)
class GaussCode:
    """An ordered multi-component signed Gauss code.

    Values are immutable; every operation returns a new code.
    """

    components: tuple[Component, ...]

    @classmethod
    def of(cls, components: Iterable[Iterable[Symbol]]) -> "GaussCode":
        """Build a code from any nested iterables of symbols."""
        return cls(tuple(tuple(component) for component in components))

    def __str__(self) -> str:
        return serialize_gauss(self)

    @property
    def component_count(self) -> int:
        """Number of link components."""
        return len(self.components)

    @property
    def crossing_count(self) -> int:
        """Number of crossings (labels)."""
        return len(self.labels())

    def labels(self) -> list[int]:
        """Sorted distinct crossing labels."""
        return sorted({symbol.label for symbol in self.symbols()})

    def max_label(self) -> int:
        """Largest label in use, 0 for a crossing-free link."""
        return max((symbol.label for symbol in self.symbols()), default=0)

    def symbols(self) -> Iterator[Symbol]:
        """All symbols, components in order."""
        for component in self.components:
            yield from component

    def positions(self) -> Iterator[tuple[Position, Symbol]]:
        """All symbols with their (component, offset) position."""
        for c, component in enumerate(self.components):
            for o, symbol in enumerate(component):
                yield (c, o), symbol

    def sign(self, label: int) -> int:
        """Sign of the crossing with the given label."""
        for symbol in self.symbols():
            if symbol.label == label:
                return symbol.sign
        raise KeyError(label)

    def locate(self, label: int) -> dict[Passage, Position]:
        """Positions of the Over and Under passages of a crossing."""
        found = {symbol.passage: position for position, symbol in self.positions() if symbol.label == label}
        if not found:
            raise KeyError(label)
        return found

    def relabel(self, mapping: Mapping[int, int]) -> "GaussCode":
        """Rename crossing labels via ``mapping``."""
        return GaussCode.of(
            (Symbol(mapping[s.label], s.passage, s.sign) for s in component)
            for component in self.components
        )

    def rotate(self, shifts: Sequence[int]) -> "GaussCode":
        """Cyclically rotate each component word so that offset ``shifts[c]`` comes first."""
        rotated = []
        for component, shift in zip(self.components, shifts, strict=True):
            k = shift % len(component) if component else 0
            rotated.append(component[k:] + component[:k])
        return GaussCode(tuple(rotated))

    def subcode(self, indices: Iterable[int]) -> "GaussCode":
        """The sub-link made of the given components, in the given order."""
        return GaussCode(tuple(self.components[i] for i in indices))


def parse_gauss(text: str) -> GaussCode:
    """Parse code text into a validated GaussCode.

    Args:
        text: Code text such as ``"O1+U2+O3+U1+O2+U3+"`` or ``"O1+/U1+"``

    Returns:
        The parsed code, component order preserved

    Raises:
        GaussCodeSyntaxError: If the text does not follow the grammar
        GaussCodeValidationError: If the code violates the double-occurrence invariants
    """
    offsets = [i for i, ch in enumerate(text) if not ch.isspace()]
    compact = "".join(text[i] for i in offsets)

    def origin(index: int) -> int:
        return offsets[index] if index < len(offsets) else len(text)

    if not compact:
        raise GaussCodeSyntaxError("empty link: at least one component is required", 0)

    components: list[Component] = []
    index = 0
    while True:
        symbols: list[Symbol] = []
        if compact[index] == "0" and (index + 1 == len(compact) or compact[index + 1] == "/"):
            index += 1
        else:
            while index < len(compact) and compact[index] != "/":
                match = _SYMBOL.match(compact, index)
                if match is None:
                    raise GaussCodeSyntaxError(
                        f"expected a symbol like 'O1+' but found {compact[index]!r}", origin(index)
                    )
                passage, label, sign = match.groups()
                symbols.append(Symbol(int(label), Passage(passage), 1 if sign == "+" else -1))
                index = match.end()
            if not symbols:
                raise GaussCodeSyntaxError(
                    "empty component; write '0' for a crossing-free component", origin(index)
                )
        components.append(tuple(symbols))
        if index == len(compact):
            break
        index += 1  # skip "/"
        if index == len(compact):
            raise GaussCodeSyntaxError("missing component after '/'", origin(index))

    code = GaussCode(tuple(components))
    report = validate(code)
    if report.issues:
        raise GaussCodeValidationError(report)
    return code


def validate(code: GaussCode) -> ValidationReport:
    """Check the double-occurrence invariants; the report lists every violation."""
    report = ValidationReport()
    if not code.components:
        report.add("empty-link", "a link needs at least one component")

    occurrences: dict[int, list[Symbol]] = defaultdict(list)
    for symbol in code.symbols():
        occurrences[symbol.label].append(symbol)

    for label in sorted(occurrences):
        found = occurrences[label]
        if label < 1:
            report.add("bad-label", f"label {label} is not a positive integer", label)
        overs = sum(1 for s in found if s.passage is Passage.OVER)
        unders = len(found) - overs
        if overs > 1:
            report.add("duplicate-over", f"label {label} occurs {overs} times as Over", label)
        if unders > 1:
            report.add("duplicate-under", f"label {label} occurs {unders} times as Under", label)
        if overs == 0:
            report.add("missing-over", f"label {label} has no Over occurrence", label)
        if unders == 0:
            report.add("missing-under", f"label {label} has no Under occurrence", label)
        signs = {s.sign for s in found}
        if not signs <= {1, -1}:
            report.add("bad-sign", f"label {label} carries a sign other than +1/-1", label)
        elif len(signs) > 1:
            report.add("sign-mismatch", f"sign mismatch on label {label}", label)
    return report


def serialize_gauss(code: GaussCode) -> str:
    """Render a code in its unique text spelling."""
    return "/".join("".join(str(s) for s in component) or "0" for component in code.components)


def first_appearance_mapping(code: GaussCode) -> dict[int, int]:
    """Map each label to its rank by first appearance."""
    mapping: dict[int, int] = {}
    for symbol in code.symbols():
        if symbol.label not in mapping:
            mapping[symbol.label] = len(mapping) + 1
    return mapping


def canonical_relabel(code: GaussCode) -> GaussCode:
    """Renumber labels 1..n in order of first appearance; idempotent."""
    return code.relabel(first_appearance_mapping(code))


def canonical_form(code: GaussCode) -> GaussCode:
    """Minimum over per-component cyclic rotations of the canonically relabeled code.

    Codes that differ only by base points and labels share a canonical form; the
    component order is kept. The serialization is minimised one component at a time,
    keeping every rotation prefix that ties; a component's text only depends on the
    labels numbered by the components before it.
    """
    prefixes: list[tuple[tuple[int, ...], dict[int, int]]] = [((), {})]
    for component in code.components:
        best_text: str | None = None
        tied: dict[tuple[tuple[int, int], ...], tuple[tuple[int, ...], dict[int, int]]] = {}
        for shifts, mapping in prefixes:
            for shift in range(max(len(component), 1)):
                rotated = component[shift:] + component[:shift]
                extended = dict(mapping)
                for symbol in rotated:
                    extended.setdefault(symbol.label, len(extended) + 1)
                text = "".join(str(Symbol(extended[s.label], s.passage, s.sign)) for s in rotated)
                if best_text is not None and text > best_text:
                    continue
                if best_text is None or text < best_text:
                    best_text, tied = text, {}
                tied.setdefault(tuple(sorted(extended.items())), ((*shifts, shift), extended))
        prefixes = list(tied.values())
    shifts, _ = prefixes[0]
    return canonical_relabel(code.rotate(shifts))


def canonical_key(code: GaussCode) -> str:
    """Text of the canonical form, used as a dictionary key by the searches."""
    return serialize_gauss(canonical_form(code))
