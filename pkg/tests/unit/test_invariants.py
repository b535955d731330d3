"""Tests for bracket, odd writhe, linking and coloring invariants."""

import numpy as np
import pytest
from tests.conftest import (
    CORPUS,
    HOPF,
    KINKED_UNKNOT,
    MIRROR_TREFOIL,
    TREFOIL,
    TRIVIAL_2_LINK,
    UNKNOT,
    VIRTUAL_HOPF,
    VIRTUAL_TREFOIL,
)
from virtual_links.topology.codes import GaussCode, parse_gauss
from virtual_links.topology.invariants import (
    InvariantError,
    NotAKnotError,
    UnsupportedPrimeError,
    arcs,
    bracket_by_skein,
    check_bracket,
    coloring_count,
    coloring_count_exhaustive,
    coloring_rank,
    f_polynomial,
    fingerprint,
    invariant_json,
    invariant_value,
    kauffman_bracket,
    linking_matrix,
    odd_writhe,
    sublink_invariant_name,
    writhe,
)
from virtual_links.topology.polynomial import LaurentPoly


class TestBracket:
    """Tests for the bracket and its normalization."""

    def test_unknot(self) -> None:
        """Test a circle has bracket 1."""
        assert kauffman_bracket(parse_gauss(UNKNOT)) == LaurentPoly.one()

    def test_trivial_link(self) -> None:
        """Test each extra circle multiplies by the loop value."""
        assert kauffman_bracket(parse_gauss(TRIVIAL_2_LINK)) == LaurentPoly.loop_value()

    def test_positive_kink(self) -> None:
        """Test a positive kink contributes -A^3."""
        assert kauffman_bracket(parse_gauss(KINKED_UNKNOT)) == LaurentPoly.monomial(3, -1)
        assert kauffman_bracket(parse_gauss("O1-U1-")) == LaurentPoly.monomial(-3, -1)

    def test_trefoil(self, trefoil: GaussCode) -> None:
        """Test the positive trefoil bracket."""
        assert kauffman_bracket(trefoil) == LaurentPoly({5: -1, -3: -1, -7: 1})
        assert f_polynomial(trefoil) == LaurentPoly({-4: 1, -12: 1, -16: -1})

    def test_mirror_trefoil(self) -> None:
        """Test mirroring substitutes A -> A^-1."""
        trefoil, mirror = parse_gauss(TREFOIL), parse_gauss(MIRROR_TREFOIL)

        assert f_polynomial(mirror) == f_polynomial(trefoil).mirror()
        assert f_polynomial(mirror) != f_polynomial(trefoil)

    def test_virtual_trefoil(self, virtual_trefoil: GaussCode) -> None:
        """Test the virtual trefoil f-polynomial."""
        assert kauffman_bracket(virtual_trefoil) == LaurentPoly({2: 1, 0: 1, -4: -1})
        assert f_polynomial(virtual_trefoil) == LaurentPoly({-4: 1, -6: 1, -10: -1})

    def test_hopf(self) -> None:
        """Test the positive Hopf link."""
        assert kauffman_bracket(parse_gauss(HOPF)) == LaurentPoly({4: -1, -4: -1})
        assert f_polynomial(parse_gauss(HOPF)) == LaurentPoly({-2: -1, -10: -1})

    def test_kink_normalizes_away(self) -> None:
        """Test kinks of either sign leave f unchanged."""
        assert f_polynomial(parse_gauss(KINKED_UNKNOT)) == LaurentPoly.one()
        assert f_polynomial(parse_gauss("O1-U1-")) == LaurentPoly.one()

    @pytest.mark.parametrize("text", CORPUS + [TRIVIAL_2_LINK, "O1+U2-U1+O2-", "O1+O2+/U1+O3+/U2+U3+"])
    def test_skein_agrees(self, text: str) -> None:
        """Test the state sum and the skein recursion agree."""
        code = parse_gauss(text)

        assert bracket_by_skein(code) == kauffman_bracket(code)
        assert check_bracket(code) == kauffman_bracket(code)

    def test_writhe(self) -> None:
        """Test the writhe sums crossing signs."""
        assert writhe(parse_gauss(TREFOIL)) == 3
        assert writhe(parse_gauss(MIRROR_TREFOIL)) == -3
        assert writhe(parse_gauss("O1+U2-U1+O2-")) == 0


class TestOddWrithe:
    """Tests for odd_writhe."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [(UNKNOT, 0), (KINKED_UNKNOT, 0), (TREFOIL, 0), (VIRTUAL_TREFOIL, 2), ("O1-O2-U1-U2-", -2)],
    )
    def test_values(self, text: str, expected: int) -> None:
        """Test odd writhe of knots."""
        assert odd_writhe(parse_gauss(text)) == expected

    def test_links_rejected(self) -> None:
        """Test odd writhe needs a knot."""
        with pytest.raises(NotAKnotError):
            odd_writhe(parse_gauss(HOPF))


class TestLinkingMatrix:
    """Tests for linking_matrix."""

    def test_classical_hopf_is_symmetric(self) -> None:
        """Test both Over counts agree for the classical Hopf link."""
        assert linking_matrix(parse_gauss(HOPF)) == (((0, 0), (1, 1)), ((1, 1), (0, 0)))

    def test_virtual_hopf_is_asymmetric(self) -> None:
        """Test the virtual Hopf link has only one Over crossing."""
        assert linking_matrix(parse_gauss(VIRTUAL_HOPF)) == (((0, 0), (1, 0)), ((0, 1), (0, 0)))

    def test_knot(self) -> None:
        """Test a knot has a 1x1 zero matrix."""
        assert linking_matrix(parse_gauss(TREFOIL)) == (((0, 0),),)


class TestColorings:
    """Tests for Fox colorings."""

    @pytest.mark.parametrize(
        ("text", "counts"),
        [
            (UNKNOT, (3, 5, 7)),
            (KINKED_UNKNOT, (3, 5, 7)),
            (TREFOIL, (9, 5, 7)),
            (MIRROR_TREFOIL, (9, 5, 7)),
            (VIRTUAL_TREFOIL, (3, 5, 7)),
            (HOPF, (3, 5, 7)),
            (VIRTUAL_HOPF, (3, 5, 7)),
            (TRIVIAL_2_LINK, (9, 25, 49)),
        ],
    )
    def test_counts(self, text: str, counts: tuple[int, int, int]) -> None:
        """Test coloring counts for p = 3, 5, 7."""
        code = parse_gauss(text)

        assert tuple(coloring_count(code, p) for p in (3, 5, 7)) == counts

    @pytest.mark.parametrize("text", CORPUS)
    def test_rank_matches_exhaustive(self, text: str) -> None:
        """Test the GF(p) rank count equals the exhaustive count."""
        code = parse_gauss(text)
        for p in (3, 5):
            assert coloring_count(code, p, exhaustive_limit=0) == coloring_count(code, p)

    def test_unsupported_prime(self, trefoil: GaussCode) -> None:
        """Test only 3, 5 and 7 are supported."""
        with pytest.raises(UnsupportedPrimeError):
            coloring_count(trefoil, 11)

    def test_arcs(self, trefoil: GaussCode) -> None:
        """Test the trefoil has three arcs, one per Under passage."""
        count, equations = arcs(trefoil)

        assert count == 3
        assert sorted(equations) == [1, 2, 3]
        assert all(len(set(arcs_)) == 3 for arcs_ in equations.values())

    def test_helpers(self) -> None:
        """Test the counting helpers on a hand-made system."""
        matrix = np.array([[2, -1, -1]])

        assert coloring_count_exhaustive(matrix, 3) == 9
        assert coloring_rank(matrix, 3) == 1
        assert coloring_rank(np.zeros((0, 2), dtype=np.int64), 3) == 0


class TestFingerprint:
    """Tests for fingerprints and named invariants."""

    def test_first_difference_order(self) -> None:
        """Test invariants are compared in a fixed order."""
        prints = {text: fingerprint(parse_gauss(text)) for text in CORPUS}

        assert prints[UNKNOT].first_difference(prints[KINKED_UNKNOT]) is None
        assert prints[UNKNOT].first_difference(prints[HOPF])[0] == "component_count"
        assert prints[TREFOIL].first_difference(prints[VIRTUAL_TREFOIL])[0] == "odd_writhe"
        assert prints[TREFOIL].first_difference(prints[UNKNOT]) == ("coloring_count(3)", 9, 3)
        assert prints[HOPF].first_difference(prints[VIRTUAL_HOPF])[0] == "linking_matrix"
        assert prints[TREFOIL].first_difference(prints[MIRROR_TREFOIL])[0] == "f_polynomial"

    def test_to_json(self, virtual_trefoil: GaussCode) -> None:
        """Test the JSON form of a fingerprint."""
        data = fingerprint(virtual_trefoil).to_json()

        assert data == {
            "components": 1,
            "f_poly": {"-10": -1, "-6": 1, "-4": 1},
            "odd_writhe": 2,
            "linking": [[[0, 0]]],
            "colorings": {"3": 3, "5": 5, "7": 7},
        }

    def test_invariant_value(self, trefoil: GaussCode) -> None:
        """Test named invariants are recomputed."""
        assert invariant_value("coloring_count(3)", trefoil) == 9
        assert invariant_value("odd_writhe", parse_gauss(HOPF)) is None
        assert invariant_json(invariant_value("linking_matrix", trefoil)) == [[[0, 0]]]
        with pytest.raises(InvariantError):
            invariant_value("jones", trefoil)

    def test_sublink_invariant(self) -> None:
        """Test invariants of a sub-link are named by its components."""
        code = parse_gauss(f"0/{TREFOIL}")
        name = sublink_invariant_name([1], "coloring_count(3)")

        assert name == "sublink(1):coloring_count(3)"
        assert invariant_value(name, code) == 9
        assert invariant_value("sublink(0):coloring_count(3)", code) == 3
        with pytest.raises(InvariantError):
            invariant_value("sublink(5):odd_writhe", code)
        with pytest.raises(InvariantError):
            invariant_value("sublink(x):odd_writhe", code)
