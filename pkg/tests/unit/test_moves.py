"""Tests for Reidemeister moves on Gauss codes."""

import random

import pytest
from tests.conftest import CORPUS, KINKED_UNKNOT, R2_BIGON, TREFOIL, UNKNOT
from virtual_links.topology.codes import Passage, canonical_key, parse_gauss
from virtual_links.topology.invariants import fingerprint
from virtual_links.topology.moves import (
    InapplicableMoveError,
    MoveError,
    MoveKind,
    MoveSpec,
    MoveTrace,
    apply_move,
    enumerate_moves,
    inverse_move,
    lift_move,
    replay,
    verify_trace,
)

# Three strands forming an R3 triangle: the first passes over both others
TRIANGLE = "O1+O2+/U1+O3+/U2+U3+"


def _moves_of_kind(text: str, kind: MoveKind, max_crossings: int | None = None) -> list[str]:
    code = parse_gauss(text)
    return [str(child) for move, child in enumerate_moves(code, max_crossings) if move.kind is kind]


class TestApplyMove:
    """Tests for apply_move."""

    def test_r1_remove(self) -> None:
        """Test removing a kink."""
        result = apply_move(parse_gauss(KINKED_UNKNOT), MoveSpec(MoveKind.R1_REMOVE, (0, 0)))

        assert str(result) == UNKNOT

    def test_r1_add_on_circle(self) -> None:
        """Test adding a kink to a crossing-free component."""
        move = MoveSpec(MoveKind.R1_ADD, (0, 0), sign=-1, passage=Passage.UNDER)

        assert str(apply_move(parse_gauss(UNKNOT), move)) == "U1-O1-"

    def test_r1_add_uses_fresh_label(self) -> None:
        """Test a new crossing takes the next free label."""
        move = MoveSpec(MoveKind.R1_ADD, (0, 6), sign=1, passage=Passage.OVER)

        assert str(apply_move(parse_gauss(TREFOIL), move)) == "O1+U2+O3+U1+O2+U3+O4+U4+"

    def test_r2_remove(self) -> None:
        """Test removing a bigon across the base point."""
        move = MoveSpec(MoveKind.R2_REMOVE, (0, 3), partner=(0, 1))

        assert str(apply_move(parse_gauss(R2_BIGON), move)) == UNKNOT

    def test_r2_add_between_components(self) -> None:
        """Test a bigon between two circles links them."""
        move = MoveSpec(MoveKind.R2_ADD, (0, 0), sign=1, partner=(1, 0), reversed=True)

        assert str(apply_move(parse_gauss("0/0"), move)) == "O1+O2-/U2-U1+"

    def test_r3_swaps_each_pair(self) -> None:
        """Test the triangle move reverses all three pairs."""
        move = MoveSpec(MoveKind.R3, (0, 0), partner=(1, 0), third=(2, 0))

        assert str(apply_move(parse_gauss(TRIANGLE), move)) == "O2+O1+/O3+U1+/U3+U2+"

    def test_r3_sign_pattern(self) -> None:
        """Test a triangle whose signs do not admit the move is rejected."""
        move = MoveSpec(MoveKind.R3, (0, 0), partner=(1, 0), third=(2, 0))

        with pytest.raises(InapplicableMoveError, match="sign pattern"):
            apply_move(parse_gauss("O1+O2+/U1+O3-/U2+U3-"), move)

    @pytest.mark.parametrize(
        "move",
        [
            MoveSpec(MoveKind.R1_REMOVE, (0, 0)),
            MoveSpec(MoveKind.R1_REMOVE, (3, 0)),
            MoveSpec(MoveKind.R2_REMOVE, (0, 0), partner=(0, 3)),
            MoveSpec(MoveKind.R1_ADD, (0, 0)),
            MoveSpec(MoveKind.R3, (0, 0), partner=(0, 2)),
        ],
    )
    def test_inapplicable(self, move: MoveSpec) -> None:
        """Test moves that do not match the code are rejected."""
        with pytest.raises(InapplicableMoveError):
            apply_move(parse_gauss(TREFOIL), move)


class TestEnumerateMoves:
    """Tests for enumerate_moves."""

    def test_unknot_additions(self) -> None:
        """Test a circle admits four kinks and no removals."""
        results = _moves_of_kind(UNKNOT, MoveKind.R1_ADD)

        assert len(results) == 4
        assert _moves_of_kind(UNKNOT, MoveKind.R1_REMOVE) == []

    def test_r2_removal_found(self) -> None:
        """Test the cancelling bigon is found, including across the base point."""
        assert UNKNOT in _moves_of_kind(R2_BIGON, MoveKind.R2_REMOVE)

    def test_r3_found(self) -> None:
        """Test the triangle move is offered."""
        assert _moves_of_kind(TRIANGLE, MoveKind.R3) == ["O2+O1+/O3+U1+/U3+U2+"]

    def test_r3_on_second_arc(self) -> None:
        """Test the arc across the base point of a two-symbol component is offered."""
        assert _moves_of_kind("O2+O1+/U1+O3+/U2+U3+", MoveKind.R3) == ["O1+O2+/O3+U1+/U3+U2+"]

    def test_repeated_results_dropped(self) -> None:
        """Test both arcs of a kink give one removal."""
        assert _moves_of_kind(KINKED_UNKNOT, MoveKind.R1_REMOVE) == [UNKNOT]

    def test_crossing_cap(self) -> None:
        """Test additions above the cap are skipped."""
        code = parse_gauss(KINKED_UNKNOT)

        assert all(child.crossing_count <= 1 for _, child in enumerate_moves(code, 1))
        assert any(child.crossing_count == 3 for _, child in enumerate_moves(code, 3))

    def test_removals_first(self) -> None:
        """Test removals precede additions."""
        kinds = [move.kind for move, _ in enumerate_moves(parse_gauss(KINKED_UNKNOT), 3)]

        assert kinds[0] is MoveKind.R1_REMOVE
        assert kinds.index(MoveKind.R1_ADD) < kinds.index(MoveKind.R2_ADD)

    def test_deterministic(self) -> None:
        """Test enumeration order is fixed."""
        code = parse_gauss(TREFOIL)

        assert enumerate_moves(code, 5) == enumerate_moves(code, 5)

    @pytest.mark.parametrize("text", CORPUS + [R2_BIGON, TRIANGLE])
    def test_inverse_undoes_move(self, text: str) -> None:
        """Test every move is undone by its inverse, up to relabeling."""
        code = parse_gauss(text)
        for move, child in enumerate_moves(code, code.crossing_count + 2):
            back = apply_move(child, inverse_move(code, move))

            assert canonical_key(back) == canonical_key(code), str(move)


class TestInvariance:
    """Fingerprints along random move sequences."""

    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("text", CORPUS)
    def test_fingerprint_unchanged(self, text: str, seed: int) -> None:
        """Test a random walk of moves keeps every invariant."""
        rng = random.Random(seed)
        code = parse_gauss(text)
        expected = fingerprint(code)
        cap = code.crossing_count + 2
        for _ in range(4):
            moves = enumerate_moves(code, cap)
            if not moves:
                break
            move, code = moves[rng.randrange(len(moves))]

            assert fingerprint(code).first_difference(expected) is None, str(move)


class TestTraces:
    """Tests for move traces."""

    def _trace(self) -> MoveTrace:
        start = parse_gauss(UNKNOT)
        return MoveTrace(
            start,
            (
                MoveSpec(MoveKind.R1_ADD, (0, 0), sign=1, passage=Passage.OVER),
                MoveSpec(MoveKind.R1_REMOVE, (0, 0)),
                MoveSpec(MoveKind.R1_ADD, (0, 0), sign=1, passage=Passage.UNDER),
            ),
        )

    def test_lift_move(self) -> None:
        """Test a move on a sub-link applies to the whole link."""
        move = MoveSpec(MoveKind.R1_REMOVE, (0, 0))

        lifted = lift_move(move, [1])

        assert lifted.site == (1, 0)
        assert str(apply_move(parse_gauss(f"{TREFOIL}/O4+U4+"), lifted)) == f"{TREFOIL}/0"

    def test_replay(self) -> None:
        """Test replaying applies every step."""
        assert str(replay(self._trace())) == "U1+O1+"

    def test_verify_exact_and_rotated(self) -> None:
        """Test ends are compared exactly or up to rotation."""
        trace = self._trace()

        assert verify_trace(trace, parse_gauss("U7+O7+")).ok
        assert not verify_trace(trace, parse_gauss(KINKED_UNKNOT)).ok
        assert verify_trace(trace, parse_gauss(KINKED_UNKNOT), up_to_rotation=True).ok

    def test_verify_reports_failing_step(self) -> None:
        """Test a step that does not apply is reported."""
        trace = MoveTrace(parse_gauss(UNKNOT), (MoveSpec(MoveKind.R1_REMOVE, (0, 0)),))

        check = verify_trace(trace, parse_gauss(UNKNOT))

        assert not check.ok
        assert check.failed_step == 0

    def test_dict_round_trip(self) -> None:
        """Test the JSON form rebuilds the same trace."""
        trace = self._trace()

        data = trace.to_dict()

        assert data["steps"][0] == {
            "kind": "R1_add",
            "site": [0, 0],
            "params": {"sign": 1, "passage": "O"},
        }
        assert MoveTrace.from_dict(data) == trace

    def test_malformed_step(self) -> None:
        """Test an unknown kind is a MoveError."""
        with pytest.raises(MoveError):
            MoveSpec.from_dict({"kind": "R4", "site": [0, 0]})
