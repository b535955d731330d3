"""Tests for the end-to-end decider."""

import random
from unittest.mock import patch

import pytest
from tests.conftest import (
    CORPUS,
    HOPF,
    KINKED_UNKNOT,
    MIRROR_TREFOIL,
    R2_BIGON,
    TREFOIL,
    UNKNOT,
    VIRTUAL_HOPF,
    VIRTUAL_TREFOIL,
)
from virtual_links.config import Settings
from virtual_links.core.metrics import SEARCH_EXPANSIONS_TOTAL, VERDICTS_TOTAL, get_metric_value
from virtual_links.services import (
    DeciderConfig,
    DeciderService,
    DecomposeService,
    VerdictKind,
    decider_config,
    get_decider_service,
    resolve_budget,
)
from virtual_links.services.verdict import check_equivalence_certificate
from virtual_links.topology.codes import GaussCode, parse_gauss
from virtual_links.topology.moves import enumerate_moves
from virtual_links.topology.search import Budget

BUDGET = Budget(max_crossings=6, max_expansions=200)
EQUIVALENT_PAIRS = {frozenset((UNKNOT, KINKED_UNKNOT))}


@pytest.fixture
def decider() -> DeciderService:
    """Decider with default configuration."""
    return get_decider_service()


def _decide(decider: DeciderService, a: str, b: str, budget: Budget = BUDGET) -> VerdictKind:
    return decider.decide(parse_gauss(a), parse_gauss(b), budget).kind


def _random_walk(code: GaussCode, rng: random.Random, steps: int, cap: int) -> GaussCode:
    for _ in range(steps):
        moves = enumerate_moves(code, cap)
        if not moves:
            break
        _, code = moves[rng.randrange(len(moves))]
    return code


class TestTruthTable:
    """Pairwise verdicts on a small corpus."""

    @pytest.mark.parametrize("a", CORPUS)
    @pytest.mark.parametrize("b", CORPUS)
    def test_pair(self, decider: DeciderService, a: str, b: str) -> None:
        """Test every pair gets the known verdict."""
        expected = (
            VerdictKind.EQUIVALENT
            if a == b or frozenset((a, b)) in EQUIVALENT_PAIRS
            else VerdictKind.DISTINCT
        )

        assert _decide(decider, a, b) is expected


class TestCertificates:
    """Tests for verdict certificates."""

    @pytest.mark.parametrize(
        ("a", "b", "invariant"),
        [
            (TREFOIL, UNKNOT, "coloring_count(3)"),
            (VIRTUAL_TREFOIL, TREFOIL, "odd_writhe"),
            (HOPF, VIRTUAL_HOPF, "linking_matrix"),
            (TREFOIL, MIRROR_TREFOIL, "f_polynomial"),
            (UNKNOT, HOPF, "component_count"),
        ],
    )
    def test_distinct_names_invariant(self, decider: DeciderService, a: str, b: str, invariant: str) -> None:
        """Test a Distinct verdict names the separating invariant."""
        verdict = decider.decide(parse_gauss(a), parse_gauss(b), BUDGET)

        assert verdict.kind is VerdictKind.DISTINCT
        assert verdict.certificate["invariant"] == invariant
        assert verdict.certificate["value_a"] != verdict.certificate["value_b"]

    def test_equivalent_traces_replay(self, decider: DeciderService) -> None:
        """Test both traces of an Equivalent verdict replay to the meeting code."""
        verdict = decider.decide(parse_gauss(UNKNOT), parse_gauss(KINKED_UNKNOT), BUDGET)

        assert verdict.kind is VerdictKind.EQUIVALENT
        assert verdict.certificate["meeting"] == UNKNOT
        assert verdict.certificate["trace_b"]["steps"][0]["kind"] == "R1_remove"
        assert check_equivalence_certificate(verdict.certificate)

    def test_tampered_certificate_fails(self, decider: DeciderService) -> None:
        """Test a certificate whose trace is altered no longer checks."""
        verdict = decider.decide(parse_gauss(UNKNOT), parse_gauss(KINKED_UNKNOT), BUDGET)
        certificate = dict(verdict.certificate)
        certificate["trace_b"] = {"start": KINKED_UNKNOT, "steps": []}

        assert not check_equivalence_certificate(certificate)

    def test_unknown_when_budget_is_zero(self, decider: DeciderService) -> None:
        """Test an inconclusive search reports Unknown, never a guess."""
        budget = Budget(max_crossings=3, max_expansions=0)

        verdict = decider.decide(parse_gauss(UNKNOT), parse_gauss(KINKED_UNKNOT), budget)

        assert verdict.kind is VerdictKind.UNKNOWN
        assert not verdict.is_certified
        assert "completeness not claimed" in verdict.certificate["note"]
        assert verdict.explored["budget_exhausted"] is True

    def test_split_link_parts(self, decider: DeciderService) -> None:
        """Test split links report their classified parts."""
        verdict = decider.decide(parse_gauss(f"{TREFOIL}/0"), parse_gauss(f"{MIRROR_TREFOIL}/0"), BUDGET)

        assert verdict.kind is VerdictKind.DISTINCT
        assert verdict.certificate["invariant"] == "f_polynomial"
        assert verdict.explored["parts"]["a"] == [
            {"components": [0], "classification": "classical"},
            {"components": [1], "classification": "classical"},
        ]

    def test_classical_parts_joined(self, decider: DeciderService) -> None:
        """Test matching classical parts are compared and their traces joined."""
        a, b = parse_gauss(f"{TREFOIL}/O4+U4+"), parse_gauss(f"{TREFOIL}/0")
        compare = DecomposeService.compare_classical

        with patch.object(DecomposeService, "compare_classical", autospec=True, side_effect=compare) as spy:
            verdict = decider.decide(a, b, BUDGET)

        assert spy.call_count == 2
        assert verdict.kind is VerdictKind.EQUIVALENT
        assert check_equivalence_certificate(verdict.certificate)
        assert "expansions" not in verdict.explored
        steps = verdict.certificate["trace_a"]["steps"] + verdict.certificate["trace_b"]["steps"]
        assert [step["site"][0] for step in steps] == [1]

    def test_to_dict(self, decider: DeciderService) -> None:
        """Test the JSON document of a verdict."""
        data = decider.decide(parse_gauss(TREFOIL), parse_gauss(UNKNOT), BUDGET).to_dict()

        assert data["verdict"] == "distinct"
        assert data["budget"] == {"max_crossings": 6, "max_expansions": 200}
        assert set(data) == {"verdict", "certificate", "budget", "explored"}


class TestBudgets:
    """Tests for budget handling."""

    def test_clamp_raises_crossing_cap(self, decider: DeciderService) -> None:
        """Test the crossing cap is raised to the input size."""
        verdict = decider.decide(
            parse_gauss(TREFOIL), parse_gauss(TREFOIL), Budget(max_crossings=0, max_expansions=0)
        )

        assert verdict.budget.max_crossings == 3
        assert verdict.kind is VerdictKind.EQUIVALENT

    def test_resolve_budget_defaults(self) -> None:
        """Test defaults come from settings."""
        settings = Settings(max_expansions=77, extra_crossings=2)

        budget = resolve_budget(settings, parse_gauss(TREFOIL), parse_gauss(UNKNOT))

        assert budget == Budget(max_crossings=5, max_expansions=77)
        assert resolve_budget(settings, max_crossings=9).max_crossings == 9

    def test_decider_config(self) -> None:
        """Test the decider configuration mirrors settings."""
        config = decider_config(Settings(search_workers=3, coloring_exhaustive_limit=10))

        assert config == DeciderConfig(workers=3, coloring_exhaustive_limit=10)

    @pytest.mark.parametrize("max_expansions", [0, 1, 2, 3, 4, 8])
    @pytest.mark.parametrize(("a", "b"), [(R2_BIGON, KINKED_UNKNOT), (KINKED_UNKNOT, R2_BIGON), (R2_BIGON, UNKNOT)])
    def test_total_expansions_within_budget(
        self, decider: DeciderService, a: str, b: str, max_expansions: int
    ) -> None:
        """Test classification and searches together stay within one expansion budget."""
        sides = ("a", "b", "part")
        before = sum(get_metric_value(SEARCH_EXPANSIONS_TOTAL, {"side": side}) for side in sides)

        verdict = decider.decide(parse_gauss(a), parse_gauss(b), Budget(max_crossings=3, max_expansions=max_expansions))

        spent = sum(get_metric_value(SEARCH_EXPANSIONS_TOTAL, {"side": side}) for side in sides) - before
        assert spent == verdict.explored["spent"]
        assert spent <= max_expansions

    def test_classification_draws_from_budget(self, decider: DeciderService) -> None:
        """Test classifying a part is charged to the decision."""
        before = get_metric_value(SEARCH_EXPANSIONS_TOTAL, {"side": "part"})

        verdict = decider.decide(
            parse_gauss(R2_BIGON), parse_gauss(KINKED_UNKNOT), Budget(max_crossings=3, max_expansions=8)
        )

        part_spent = get_metric_value(SEARCH_EXPANSIONS_TOTAL, {"side": "part"}) - before
        assert verdict.kind is VerdictKind.EQUIVALENT
        assert verdict.explored["parts"]["a"] == [{"components": [0], "classification": "classical"}]
        assert part_spent >= 1
        assert verdict.explored["spent"] <= 8

    @pytest.mark.parametrize("a", CORPUS + [R2_BIGON])
    @pytest.mark.parametrize("b", CORPUS + [R2_BIGON])
    def test_larger_budget_keeps_verdict(self, decider: DeciderService, a: str, b: str) -> None:
        """Test a certified verdict survives every larger budget."""
        certified: VerdictKind | None = None
        for max_expansions in (0, 2, 20):
            kind = _decide(decider, a, b, Budget(max_crossings=4, max_expansions=max_expansions))
            if certified is not None:
                assert kind is certified, max_expansions
            elif kind is not VerdictKind.UNKNOWN:
                certified = kind

    def test_canonical_minimum(self, decider: DeciderService) -> None:
        """Test the least representative of a kink is the circle."""
        result = decider.canonical_minimum(parse_gauss(KINKED_UNKNOT), Budget(max_crossings=0, max_expansions=5))

        assert str(result.code) == UNKNOT
        assert result.genus == 0


class TestSoundness:
    """Verdicts on codes related by random move sequences."""

    @pytest.mark.parametrize("seed", range(2))
    @pytest.mark.parametrize("text", CORPUS)
    def test_never_distinct(self, text: str, seed: int) -> None:
        """Test move-equivalent codes are never called Distinct."""
        rng = random.Random(seed)
        code = parse_gauss(text)
        walked = _random_walk(code, rng, steps=3, cap=code.crossing_count + 2)
        decider = DeciderService(DeciderConfig(classify_parts=False))
        budget = Budget(max_crossings=walked.crossing_count, max_expansions=10)

        verdict = decider.decide(code, walked, budget)

        assert verdict.kind is not VerdictKind.DISTINCT, verdict.certificate
        if verdict.kind is VerdictKind.EQUIVALENT:
            assert check_equivalence_certificate(verdict.certificate)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(143))
    @pytest.mark.parametrize("text", CORPUS)
    def test_never_distinct_long_walks(self, text: str, seed: int) -> None:
        """Test longer walks with the full pipeline."""
        rng = random.Random(1000 + seed)
        code = parse_gauss(text)
        walked = _random_walk(code, rng, steps=8, cap=code.crossing_count + 4)

        budget = Budget(max_crossings=code.crossing_count + 4, max_expansions=500)

        verdict = get_decider_service().decide(code, walked, budget)

        assert verdict.kind is not VerdictKind.DISTINCT, verdict.certificate

    def test_deterministic(self, decider: DeciderService) -> None:
        """Test repeated decisions give identical documents."""
        a, b = parse_gauss(KINKED_UNKNOT), parse_gauss("O1-U1-")
        budget = Budget(max_crossings=3, max_expansions=30)

        assert decider.decide(a, b, budget).to_dict() == decider.decide(a, b, budget).to_dict()

    @pytest.mark.parametrize("seed", range(3))
    @pytest.mark.parametrize("text", [KINKED_UNKNOT, TREFOIL, f"{TREFOIL}/O4+U4+"])
    def test_workers_do_not_change_result(self, text: str, seed: int) -> None:
        """Test serial and threaded decisions give identical documents, traces included."""
        code = parse_gauss(text)
        walked = _random_walk(code, random.Random(seed), steps=3, cap=code.crossing_count + 2)
        budget = Budget(max_crossings=code.crossing_count + 2, max_expansions=20)

        serial = DeciderService(DeciderConfig(workers=1)).decide(code, walked, budget)
        threaded = DeciderService(DeciderConfig(workers=4)).decide(code, walked, budget)

        assert serial.to_dict() == threaded.to_dict()


class TestMetrics:
    """Tests for decider metrics."""

    def test_verdict_counted(self, decider: DeciderService) -> None:
        """Test every verdict increments its counter."""
        before = get_metric_value(VERDICTS_TOTAL, {"kind": "distinct"})

        _decide(decider, TREFOIL, UNKNOT)

        assert get_metric_value(VERDICTS_TOTAL, {"kind": "distinct"}) == before + 1
