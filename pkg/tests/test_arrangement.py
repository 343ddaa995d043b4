from fractions import Fraction

import pytest

from ellarr import arrangement as arr_mod
from ellarr import braid
from ellarr.arrangement import Arrangement, ArrangementError


def braid_cols(n):
    return braid.braid_arrangement(n)


class TestValidation:
    def test_gcd_rejected(self):
        with pytest.raises(ArrangementError, match="gcd"):
            Arrangement(1, ((5,),))

    def test_zero_column_rejected(self):
        with pytest.raises(ArrangementError):
            Arrangement(2, ((0, 0),))

    def test_length_mismatch(self):
        with pytest.raises(ArrangementError):
            Arrangement(2, ((1,),))

    def test_offsets_reduced(self):
        a = Arrangement(1, ((1,),), ((Fraction(7, 5), Fraction(-1, 5)),))
        assert a.offsets[0] == (Fraction(2, 5), Fraction(4, 5))


class TestMatroidData:
    def test_example_independent_sets(self, example_arrangement):
        got = arr_mod.independent_sets(example_arrangement)
        expected = [(), (0,), (0, 1), (0, 2), (1,), (1, 2), (2,)]
        assert got == expected

    def test_single_column(self):
        a = Arrangement(1, ((1,),))
        assert arr_mod.independent_sets(a) == [(), (0,)]

    def test_braid3_independents(self):
        got = arr_mod.independent_sets(braid_cols(3))
        assert all(len(i) <= 2 for i in got)
        assert len(got) == 1 + 3 + 3

    def test_example_circuits(self, example_arrangement):
        assert arr_mod.circuits(example_arrangement) == [(0, 1, 2)]

    def test_braid3_circuits(self):
        assert arr_mod.circuits(braid_cols(3)) == [(0, 1, 2)]

    def test_parallel_columns(self):
        a = Arrangement(1, ((1,), (1,)))
        assert arr_mod.circuits(a) == [(0, 1)]

    def test_braid4_circuits_are_cycles(self):
        got = arr_mod.circuits(braid_cols(4))
        # 4 triangles plus 3 four-cycles in the complete graph on 4 vertices
        assert len(got) == 7
        assert sorted(len(c) for c in got) == [3, 3, 3, 3, 4, 4, 4]


class TestComponents:
    def test_empty_set(self, example_arrangement):
        layers = arr_mod.components_of(example_arrangement, ())
        assert len(layers) == 1 and layers[0].rank == 0

    def test_example_pair_25(self, example_arrangement):
        layers = arr_mod.components_of(example_arrangement, (0, 1))
        assert len(layers) == 25
        assert all(l.rank == 2 for l in layers)

    def test_braid_unimodular_single(self):
        layers = arr_mod.components_of(braid_cols(3), (0,))
        assert len(layers) == 1

    def test_dependent_faults(self, example_arrangement):
        with pytest.raises(ArrangementError):
            arr_mod.components_of(example_arrangement, (0, 1, 2))


class TestPoset:
    def test_single_divisor(self):
        poset = arr_mod.build_poset(Arrangement(1, ((1,),)))
        assert poset.counts_by_rank() == {0: 1, 1: 1}

    def test_example_29_layers(self, example_poset):
        assert example_poset.counts_by_rank() == {0: 1, 1: 3, 2: 25}
        assert example_poset.size == 29

    def test_braid3_five_layers(self):
        poset = arr_mod.build_poset(braid_cols(3))
        assert poset.counts_by_rank() == {0: 1, 1: 3, 2: 1}

    def test_graded(self, example_poset):
        poset = example_poset
        for a in range(poset.size):
            for b in range(poset.size):
                if a != b and poset.leq(a, b):
                    diff = poset.rank(b) - poset.rank(a)
                    assert diff > 0
                    if diff >= 2:
                        mid = [c for c in range(poset.size)
                               if poset.leq(a, c) and poset.leq(c, b)
                               and poset.rank(c) == poset.rank(a) + 1]
                        assert mid

    def test_dedup_by_point_sets(self, example_arrangement, example_poset):
        # the three pairwise intersections give the same 25 points
        families = [example_poset.layers_associated(pair)
                    for pair in ((0, 1), (0, 2), (1, 2))]
        assert all(len(f) == 25 for f in families)
        assert set(families[0]) == set(families[1]) == set(families[2])
        assert len(example_poset.by_rank[2]) == 25
        # and the witnesses really are the common torsion points
        for lid in families[0]:
            layer = example_poset.layers[lid]
            w1, w2 = layer.witness1, layer.witness2
            assert w1[0] == 0 and w2[0] == 0
            assert (5 * w1[1]).denominator == 1
            assert (5 * w2[1]).denominator == 1

    def test_exhaustive_membership_small(self):
        # dedup cross-checked against explicit torsion point sets
        a = Arrangement(1, ((1,), (1,)))
        poset = arr_mod.build_poset(a)
        assert poset.counts_by_rank() == {0: 1, 1: 1}

    def test_component_counts_squared_divisors(self, example_arrangement,
                                               example_poset):
        from ellarr import exactlin
        for ind in arr_mod.independent_sets(example_arrangement):
            if not ind:
                continue
            divisors = exactlin.elementary_divisors(
                example_arrangement.submatrix_t(ind))
            product = 1
            for d in divisors:
                product *= d
            assoc = example_poset.layers_associated(ind)
            assert len(assoc) == product ** 2

    def test_translated_divisors_disjoint(self):
        # two translates of the same divisor never meet
        a = Arrangement(1, ((1,), (1,)),
                        ((Fraction(0), Fraction(0)),
                         (Fraction(1, 2), Fraction(0))))
        poset = arr_mod.build_poset(a)
        assert poset.counts_by_rank() == {0: 1, 1: 2}
        assert poset.layers_associated((0, 1)) == ()


class TestEssentialUnimodular:
    def test_example(self, example_arrangement):
        assert arr_mod.is_essential(example_arrangement)
        assert not arr_mod.is_unimodular(example_arrangement)

    def test_braid(self):
        for n in (3, 4):
            a = braid_cols(n)
            assert not arr_mod.is_essential(a)
            assert arr_mod.is_unimodular(a)

    def test_empty(self):
        a = Arrangement(1, ())
        assert not arr_mod.is_essential(a)
        assert arr_mod.is_unimodular(a)


class TestNbc:
    def test_braid3_top(self):
        poset = arr_mod.build_poset(braid_cols(3))
        top = poset.layers[poset.by_rank[2][0]]
        assert arr_mod.nbc_sets(braid_cols(3), top) == [(0, 1), (0, 2)]

    def test_rank_one(self, example_arrangement, example_poset):
        for lid in example_poset.by_rank[1]:
            layer = example_poset.layers[lid]
            i = min(layer.flat)
            assert arr_mod.nbc_sets(example_arrangement, layer) == [(i,)]

    def test_example_points(self, example_arrangement, example_poset):
        for lid in example_poset.by_rank[2]:
            layer = example_poset.layers[lid]
            assert arr_mod.nbc_sets(example_arrangement, layer) == [(0, 1), (0, 2)]


class TestPosetIsomorphism:
    def test_example_pair(self, example_poset, example_prime_arrangement):
        other = arr_mod.build_poset(example_prime_arrangement)
        mapping = arr_mod.poset_isomorphic(example_poset, other)
        assert mapping is not None
        for a in range(example_poset.size):
            assert example_poset.rank(a) == other.rank(mapping[a])
            for b in range(example_poset.size):
                assert example_poset.leq(a, b) == other.leq(mapping[a], mapping[b])

    def test_chain_vs_antichain(self):
        chain = arr_mod.build_poset(Arrangement(1, ((1,),)))
        anti = arr_mod.build_poset(
            Arrangement(1, ((1,), (1,)),
                        ((Fraction(0), Fraction(0)),
                         (Fraction(1, 2), Fraction(0)))))
        assert arr_mod.poset_isomorphic(chain, anti) is None

    def test_self(self, example_poset):
        mapping = arr_mod.poset_isomorphic(example_poset, example_poset)
        assert mapping is not None


class TestBraidPartitionLattice:
    """The diagonal arrangement's poset is the partition lattice."""

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_layers_match_partitions(self, n):
        arr = braid_cols(n)
        poset = arr_mod.build_poset(arr)
        pairs = braid.braid_pairs(n)

        def partition_of(layer):
            parent = list(range(n + 1))

            def find(v):
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            for k in layer.flat:
                i, j = pairs[k]
                parent[find(i)] = find(j)
            return frozenset(frozenset(v for v in range(1, n + 1)
                                       if find(v) == r)
                             for r in range(1, n + 1) if find(r) == r)

        seen = {}
        for layer in poset.layers:
            part = partition_of(layer)
            assert part not in seen
            seen[part] = layer.index
            assert layer.rank == n - len(part)
        assert len(seen) == poset.size == braid.bell_number(n)

        # a layer sits below another exactly when its partition is finer
        def refines(p1, p2):
            return all(any(b1 <= b2 for b2 in p2) for b1 in p1)

        inv = {v: k for k, v in seen.items()}
        for a in range(poset.size):
            for b in range(poset.size):
                assert poset.leq(a, b) == refines(inv[a], inv[b])

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_counts_by_rank_stirling2(self, n):
        poset = arr_mod.build_poset(braid_cols(n))
        for q, count in poset.counts_by_rank().items():
            assert count == braid.stirling_second(n, n - q)
