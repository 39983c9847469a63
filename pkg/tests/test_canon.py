import itertools
import random

import pytest
from hypothesis import given, settings

from msdigraph.canon import (
    are_isomorphic,
    canonical_digraph,
    canonical_form,
    canonical_labeling,
    equitable_partition,
    is_equitable,
)
from msdigraph.core import Digraph
from msdigraph.digraph6 import decode

from pairs import ISO_A, ISO_B
from oracles import all_digraphs, brute_isomorphic, brute_key
from strategies import digraphs


def random_relabel(d, rng):
    perm = list(range(d.order))
    rng.shuffle(perm)
    return d.relabel(perm)


class TestEquitablePartition:
    def test_cycle_is_one_cell(self):
        for n in range(2, 8):
            assert equitable_partition(Digraph.cycle(n)) == [list(range(n))]

    def test_star(self):
        star = Digraph.directed_tree(3, [(2, 0), (2, 1)])
        assert equitable_partition(star) == [[0, 1], [2]]

    def test_iso_a(self):
        # (out, in) degrees: 0,3 -> (1,1) fed by 1; 4 -> (1,1) fed by 2; 1 -> (2,1); 2 -> (2,3)
        cells = equitable_partition(ISO_A)
        assert sorted(map(sorted, cells)) == [[0, 3], [1], [2], [4]]
        by_vertex = {v: i for i, c in enumerate(cells) for v in c}
        assert len({by_vertex[0], by_vertex[1], by_vertex[2]}) == 3

    def test_initial_partition_respected(self):
        cells = equitable_partition(Digraph.cycle(4), [[0], [1, 2, 3]])
        # fragments of {1,2,3} ordered by (out-vector, in-vector): 2, then 1, then 3
        assert cells == [[0], [2], [1], [3]]

    def test_bad_initial(self):
        with pytest.raises(ValueError):
            equitable_partition(Digraph.cycle(3), [[0, 1]])

    @settings(max_examples=200, deadline=None)
    @given(digraphs())
    def test_output_equitable_and_stable(self, d):
        cells = equitable_partition(d)
        assert is_equitable(d, cells)
        assert equitable_partition(d, cells) == cells
        assert sorted(v for c in cells for v in c) == list(range(d.order))


class TestCanonicalForm:
    def test_c3_and_reverse(self):
        c3 = Digraph.cycle(3)
        rev = c3.reversed()
        assert brute_isomorphic(c3, rev)
        assert canonical_form(c3) == canonical_form(rev)

    def test_iso_pair_distinct(self):
        assert not brute_isomorphic(ISO_A, ISO_B)
        assert canonical_form(ISO_A) != canonical_form(ISO_B)

    def test_code_is_relabelled_digraph(self):
        d = ISO_A
        assert decode(canonical_form(d)) == canonical_digraph(d)
        assert brute_isomorphic(canonical_digraph(d), d)

    def test_code_length_depends_on_order_only(self):
        for n in range(1, 12):
            lengths = {len(canonical_form(Digraph.cycle(n) if n > 1 else Digraph(1, (0,))))}
            lengths.add(len(canonical_form(Digraph.complete(n))))
            assert lengths == {2 + -(-n * n // 6)}

    def test_relabel_invariance_over_catalog(self, msc_by_order):
        rng = random.Random(2024)
        for n in range(1, 6):
            for d in msc_by_order[n]:
                code = canonical_form(d)
                for _ in range(100):
                    assert canonical_form(random_relabel(d, rng)) == code

    @settings(max_examples=200, deadline=None)
    @given(digraphs(max_order=9))
    def test_relabel_invariance_random(self, d):
        rng = random.Random(d.size)
        code = canonical_form(d)
        for _ in range(5):
            assert canonical_form(random_relabel(d, rng)) == code

    def test_symmetric_digraphs_are_fast_and_invariant(self):
        rng = random.Random(5)
        star = Digraph.directed_tree(14, [(0, i) for i in range(1, 14)])
        k = Digraph.complete(8)
        for d in (star, k, Digraph.cycle(14)):
            code = canonical_form(d)
            for _ in range(10):
                assert canonical_form(random_relabel(d, rng)) == code

    def test_generators_are_automorphisms(self, msc_by_order):
        for n in range(2, 7):
            for d in msc_by_order[n]:
                for g in canonical_labeling(d).generators:
                    assert d.relabel(g) == d

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_complete_against_permutation_oracle(self, n):
        # equal codes <=> equal brute-force keys, for every labeled digraph
        key_to_code = {}
        code_to_key = {}
        for d in all_digraphs(n):
            key, code = brute_key(d), canonical_form(d)
            assert key_to_code.setdefault(key, code) == code
            assert code_to_key.setdefault(code, key) == key
        assert len(key_to_code) == {1: 1, 2: 3, 3: 16, 4: 218}[n]


class TestAreIsomorphic:
    def test_examples(self):
        c4 = Digraph.cycle(4)
        assert are_isomorphic(c4, c4.relabel([2, 1, 0, 3]))
        tree = Digraph.directed_tree(4, [(0, 1), (1, 2), (2, 3)])
        assert not are_isomorphic(c4, tree)

    def test_pairs_against_oracle(self):
        # all ordered pairs of order-3 digraphs plus a random sample at order 4
        ds = list(all_digraphs(3))
        for a, b in itertools.product(ds[::3], ds):
            assert are_isomorphic(a, b) == brute_isomorphic(a, b)
        rng = random.Random(11)
        d4 = list(all_digraphs(4))
        for _ in range(3000):
            a, b = rng.choice(d4), rng.choice(d4)
            if rng.random() < 0.5:
                b = random_relabel(a, rng)
            assert are_isomorphic(a, b) == brute_isomorphic(a, b)
