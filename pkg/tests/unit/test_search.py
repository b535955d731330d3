"""Tests for bounded move searches."""

import pytest
from pydantic import ValidationError
from tests.conftest import KINKED_UNKNOT, TREFOIL, UNKNOT, VIRTUAL_TREFOIL
from virtual_links.topology.codes import parse_gauss
from virtual_links.topology.moves import verify_trace
from virtual_links.topology.search import Budget, ExpansionAllowance, bidirectional_search, canonical_minimum


class TestBudget:
    """Tests for Budget."""

    def test_negative_rejected(self) -> None:
        """Test caps must be non-negative."""
        with pytest.raises(ValidationError):
            Budget(max_crossings=-1, max_expansions=10)

    def test_frozen(self) -> None:
        """Test budgets are immutable."""
        budget = Budget(max_crossings=3, max_expansions=10)

        with pytest.raises(ValidationError):
            budget.max_crossings = 4  # type: ignore[misc]


class TestExpansionAllowance:
    """Tests for ExpansionAllowance."""

    def test_draw_and_charge(self) -> None:
        """Test drawn budgets shrink as expansions are charged."""
        allowance = ExpansionAllowance(Budget(max_crossings=3, max_expansions=10))

        assert allowance.draw(4) == Budget(max_crossings=3, max_expansions=4)
        allowance.charge(7)

        assert allowance.remaining == 3
        assert allowance.draw().max_expansions == 3
        assert allowance.draw(5).max_expansions == 3

    def test_overspend_leaves_nothing(self) -> None:
        """Test remaining never goes below zero."""
        allowance = ExpansionAllowance(Budget(max_crossings=3, max_expansions=2))
        allowance.charge(5)

        assert allowance.remaining == 0
        assert allowance.draw().max_expansions == 0


class TestBidirectionalSearch:
    """Tests for bidirectional_search."""

    def test_same_canonical_form_meets_immediately(self) -> None:
        """Test rotations of one code meet without expanding."""
        a = parse_gauss(TREFOIL)
        b = parse_gauss("U1+O2+U3+O1+U2+O3+")

        meeting, stats = bidirectional_search(a, b, Budget(max_crossings=3, max_expansions=0))

        assert meeting is not None
        assert len(meeting.trace_a) == len(meeting.trace_b) == 0
        assert stats.total_expansions == 0

    def test_kink_removed(self) -> None:
        """Test the kinked side is expanded and meets the circle."""
        a, b = parse_gauss(UNKNOT), parse_gauss(KINKED_UNKNOT)
        expansions: list[str] = []

        meeting, stats = bidirectional_search(
            a, b, Budget(max_crossings=3, max_expansions=10), on_expand=expansions.append
        )

        assert meeting is not None
        assert str(meeting.meeting) == UNKNOT
        assert len(meeting.trace_a) == 0
        assert [step.kind.value for step in meeting.trace_b.steps] == ["R1_remove"]
        assert expansions == ["b"]
        assert stats.expansions == {"a": 0, "b": 1}
        assert verify_trace(meeting.trace_b, meeting.meeting, up_to_rotation=True).ok

    def test_budget_exhausted(self) -> None:
        """Test a zero budget stops before any expansion."""
        meeting, stats = bidirectional_search(
            parse_gauss(UNKNOT), parse_gauss(KINKED_UNKNOT), Budget(max_crossings=3, max_expansions=0)
        )

        assert meeting is None
        assert stats.budget_exhausted
        assert stats.min_genus == {"a": 0, "b": 0}

    def test_crossing_cap_limits_neighbourhood(self) -> None:
        """Test a neighbourhood that runs out without meeting is not a budget stop."""
        meeting, stats = bidirectional_search(
            parse_gauss(TREFOIL), parse_gauss(UNKNOT), Budget(max_crossings=0, max_expansions=100)
        )

        assert meeting is None
        assert not stats.budget_exhausted

    def test_deterministic(self) -> None:
        """Test repeated searches explore the same nodes."""
        a, b = parse_gauss(KINKED_UNKNOT), parse_gauss("O1-U1-")
        budget = Budget(max_crossings=3, max_expansions=40)

        first = bidirectional_search(a, b, budget)
        second = bidirectional_search(a, b, budget)

        assert first[1] == second[1]
        assert (first[0] is None) == (second[0] is None)
        if first[0] is not None and second[0] is not None:
            assert first[0].trace_a == second[0].trace_a
            assert first[0].trace_b == second[0].trace_b

    def test_workers_do_not_change_result(self) -> None:
        """Test a worker pool explores exactly the same way."""
        a, b = parse_gauss(KINKED_UNKNOT), parse_gauss("O1-U1-")
        budget = Budget(max_crossings=3, max_expansions=40)

        serial = bidirectional_search(a, b, budget)
        pooled = bidirectional_search(a, b, budget, workers=3)

        assert serial[1] == pooled[1]


class TestCanonicalMinimum:
    """Tests for canonical_minimum."""

    def test_kink_reduces_to_circle(self) -> None:
        """Test the least code found for a kink is the circle."""
        result = canonical_minimum(parse_gauss(KINKED_UNKNOT), Budget(max_crossings=1, max_expansions=10))

        assert str(result.code) == UNKNOT
        assert result.genus == 0
        assert result.complete
        assert len(result.trace) == 1

    def test_crossing_free_circle_ends_search(self) -> None:
        """Test the search stops at the circle however large the budget."""
        result = canonical_minimum(parse_gauss(KINKED_UNKNOT), Budget(max_crossings=5, max_expansions=200_000))

        assert str(result.code) == UNKNOT
        assert result.complete
        assert result.stats.total_expansions == 1

    def test_crossing_free_start_is_complete(self) -> None:
        """Test a crossing-free sphere code needs no expansion."""
        result = canonical_minimum(parse_gauss("0/0"), Budget(max_crossings=2, max_expansions=0))

        assert str(result.code) == "0/0"
        assert result.complete
        assert result.stats.total_expansions == 0

    def test_stop_ends_search(self) -> None:
        """Test the stop predicate ends the search at once."""
        result = canonical_minimum(
            parse_gauss(TREFOIL),
            Budget(max_crossings=5, max_expansions=100),
            stop=lambda _, genus: genus == 0,
        )

        assert result.genus == 0
        assert not result.complete
        assert result.stats.total_expansions == 0

    def test_budget_bounds_result(self) -> None:
        """Test an exhausted search reports an upper bound."""
        result = canonical_minimum(parse_gauss(VIRTUAL_TREFOIL), Budget(max_crossings=4, max_expansions=2))

        assert not result.complete
        assert result.stats.budget_exhausted
        assert result.stats.total_expansions <= 2
        assert result.genus == 1
