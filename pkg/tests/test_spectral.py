import random

import pytest
from hypothesis import given, settings

from msdigraph.canon import canonical_form
from msdigraph.core import Digraph, is_minimal_strong
from msdigraph.spectral import (
    INT128_MAX,
    CharPoly,
    CoefficientOverflow,
    char_poly,
    charpoly_masks,
    charpoly_of_code,
    first_collision,
    isospectral_classes,
    isospectral_tree_counts,
)

from pairs import ISO_A, ISO_POLY, ISO_B, MIXED_MIN, MIXED_POLY, MIXED_NONMIN
from oracles import brute_isomorphic, cofactor_charpoly
from strategies import digraphs


def two_cycles(d):
    return sum(1 for u, w in d.arcs if u < w and d.has_arc(w, u))


class TestCharPoly:
    def test_cycle(self):
        for n in range(2, 9):
            expected = [1] + [0] * (n - 1) + [-1]
            assert list(char_poly(Digraph.cycle(n)).descending()) == expected

    def test_single_vertex_and_complete(self):
        assert char_poly(Digraph(1, (0,))).coeffs == (0, 1)
        # det(xI - (J - I)) = (x - 2)(x + 1)^2 for K3
        assert char_poly(Digraph.complete(3)).descending() == (1, 0, -3, -2)

    def test_iso_pair(self):
        assert char_poly(ISO_A).descending() == ISO_POLY
        assert char_poly(ISO_B).descending() == ISO_POLY
        assert is_minimal_strong(ISO_A) and is_minimal_strong(ISO_B)
        assert not brute_isomorphic(ISO_A, ISO_B)

    def test_mixed_pair(self):
        assert char_poly(MIXED_MIN).descending() == MIXED_POLY
        assert char_poly(MIXED_NONMIN).descending() == MIXED_POLY
        assert [is_minimal_strong(MIXED_MIN), is_minimal_strong(MIXED_NONMIN)] == [True, False]

    def test_cofactor_oracle_on_catalog(self, msc_by_order):
        for n in range(1, 7):
            for d in msc_by_order[n]:
                assert char_poly(d).coeffs == cofactor_charpoly(d)

    @settings(max_examples=150, deadline=None)
    @given(digraphs(max_order=6))
    def test_cofactor_oracle_random(self, d):
        assert char_poly(d).coeffs == cofactor_charpoly(d)

    @settings(max_examples=200, deadline=None)
    @given(digraphs(max_order=10))
    def test_low_order_coefficients(self, d):
        p = char_poly(d)
        n = d.order
        assert p.degree == n and p.coeffs[n] == 1
        assert p.coeffs[n - 1] == 0
        if n >= 2:
            assert p.coeffs[n - 2] == -two_cycles(d)

    def test_relabel_invariant(self, msc_by_order):
        rng = random.Random(3)
        for d in msc_by_order[6]:
            perm = list(range(6))
            rng.shuffle(perm)
            assert char_poly(d.relabel(perm)) == char_poly(d)
            assert charpoly_of_code(canonical_form(d)) == char_poly(d)

    def test_overflow_guard(self, monkeypatch):
        n = 62
        big = charpoly_masks(Digraph.complete(n).out, n)
        assert max(abs(c) for c in big.coeffs) <= INT128_MAX
        # shrink the bound so a small digraph trips it
        monkeypatch.setattr("msdigraph.spectral.INT128_MAX", 10)
        with pytest.raises(CoefficientOverflow):
            charpoly_masks(Digraph.complete(5).out, 5)


class TestFormat:
    def test_str(self):
        assert str(CharPoly(tuple(reversed(ISO_POLY)))) == "x^5 - x^3 - 2x^2"
        assert str(CharPoly((-1, 0, 1))) == "x^2 - 1"
        assert str(CharPoly((3, -1, 1))) == "x^2 - x + 3"

    def test_csv_round_trip(self):
        p = char_poly(MIXED_MIN)
        assert p.csv() == "1,0,0,-3,0,0"
        assert CharPoly.from_csv(p.csv()) == p


class TestIsospectral:
    def test_order_five(self, catalogs):
        report = isospectral_classes(catalogs[5])
        assert report.total == 14
        assert report.delta == 0
        assert sum(len(ms) for _, ms in report.classes) == 15

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_no_collision_below_five(self, catalogs, n):
        assert first_collision(catalogs[n]) == []

    def test_first_collision_is_iso_pair(self, catalogs):
        pairs = first_collision(catalogs[5])
        assert len(pairs) == 1
        a, b, poly = pairs[0]
        assert poly.descending() == ISO_POLY
        assert {a, b} == {canonical_form(ISO_A), canonical_form(ISO_B)}

    def test_report_lines(self, catalogs):
        report = isospectral_classes(catalogs[5])
        lines = list(report.lines())
        assert len(lines) == 14
        (two,) = [ln for ln in lines if len(ln.split()) == 3]
        assert two.split()[0] == "1,0,-1,-2,0,0"

    def test_tree_counts(self, catalogs):
        reports = [isospectral_classes(catalogs[n]) for n in range(1, 8)]
        assert list(isospectral_tree_counts(reports).values()) == [1, 1, 2, 3, 6, 11]
