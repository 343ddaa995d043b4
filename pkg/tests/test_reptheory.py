import random
from fractions import Fraction
from math import comb, factorial

import pytest

from ellarr import braid, cohomology, reptheory as rt


class TestPartitions:
    def test_count(self):
        assert [len(rt.partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]

    def test_conjugate(self):
        assert rt.conjugate_partition((3, 1)) == (2, 1, 1)
        assert rt.conjugate_partition((2, 2)) == (2, 2)
        assert rt.conjugate_partition(()) == ()

    def test_class_sizes_sum(self):
        for n in range(1, 8):
            assert sum(rt.class_size(mu) for mu in rt.partitions(n)) == factorial(n)


class TestIrreducibleCharacters:
    def test_trivial(self):
        chi = rt.irreducible_character((4,))
        assert all(v == 1 for v in chi.values())

    def test_sign(self):
        chi = rt.irreducible_character((1, 1, 1, 1))
        for cls, v in chi.items():
            assert v == rt.sign_of_class(cls)

    def test_standard_s3(self):
        chi = rt.irreducible_character((2, 1))
        assert chi[(1, 1, 1)] == 2
        assert chi[(2, 1)] == 0
        assert chi[(3,)] == -1

    @pytest.mark.parametrize("n", range(2, 8))
    def test_orthonormal(self, n):
        chars = {mu: rt.irreducible_character(mu) for mu in rt.partitions(n)}
        for mu in rt.partitions(n):
            for nu in rt.partitions(n):
                want = Fraction(1 if mu == nu else 0)
                assert rt.inner_product(chars[mu], chars[nu], n) == want

    def test_dimension_formula(self):
        # hook length check on a couple of shapes
        assert rt.character_dimension((2, 1)) == 2
        assert rt.character_dimension((3, 2)) == 5
        assert rt.character_dimension((2, 2, 1)) == 5


class TestCyclotomic:
    def test_polynomials(self):
        assert rt.cyclotomic_polynomial(1) == (-1, 1)
        assert rt.cyclotomic_polynomial(2) == (1, 1)
        assert rt.cyclotomic_polynomial(4) == (1, 0, 1)
        assert rt.cyclotomic_polynomial(6) == (1, -1, 1)

    def test_full_orbit_sums(self):
        # sum over all k-th roots of unity is 0 for k > 1
        for k in (2, 3, 4, 5, 6, 12):
            bucket = {Fraction(j, k): Fraction(1) for j in range(k)}
            assert rt.root_of_unity_sum(bucket) == 0

    def test_primitive_orbit(self):
        # primitive sixth roots sum to the Moebius value
        bucket = {Fraction(1, 6): Fraction(1), Fraction(5, 6): Fraction(1)}
        assert rt.root_of_unity_sum(bucket) == 1

    def test_irrational_rejected(self):
        with pytest.raises(ArithmeticError):
            rt.root_of_unity_sum({Fraction(1, 5): Fraction(1)})


class TestStabilizer:
    def test_worked_example_order(self):
        info = rt.stabilizer_group((2, 2, 1, 1, 1), ("xy", "xy", "y", "x", "x"))
        assert info["order"] == 16
        assert info["h_order"] == 4 and info["n_order"] == 4
        assert info["sigma_cycles"] == [(1, 2), (3, 4)]

    def test_worked_example_xi_values(self):
        lp = rt.LabelledPartition((2, 2, 1, 1, 1), ("xy", "xy", "y", "x", "x"))
        half = Fraction(1, 2)
        for cycles in ([(1, 2)], [(3, 4)], [(1, 3), (2, 4)], [(6, 7)]):
            g = rt.perm_from_cycles(7, cycles)
            assert lp.xi_exponent(g) == half   # value -1

    def test_single_cycle(self):
        info = rt.stabilizer_group((4,), ("1",))
        assert info["order"] == 4 and info["n_order"] == 1

    def test_all_singletons_same_label(self):
        info = rt.stabilizer_group((1, 1, 1), ("x", "x", "x"))
        assert info["order"] == 6  # the whole symmetric group

    def test_element_enumeration_matches_order(self):
        lp = rt.LabelledPartition((2, 2, 1), ("x", "x", "y"))
        elems = {z for z, _ in lp.elements()}
        assert len(elems) == lp.group_order()

    def test_reference_permutation(self):
        lp = rt.LabelledPartition((3, 2, 1), ("x", "y", "1"))
        sigma = lp.sigma()
        assert rt.cycle_type(sigma) == (3, 2, 1)
        assert rt.cycles_of(sigma) == [(1, 2, 3), (4, 5)]
        # sigma generates the rotation subgroup
        assert sigma in {z for z, _ in lp.h_elements()}

    def test_xi_multiplicative_on_samples(self):
        lp = rt.LabelledPartition((2, 2, 1, 1, 1), ("xy", "xy", "y", "x", "x"))
        elems = list(lp.elements())
        rng = random.Random(4)
        for _ in range(60):
            (z1, e1), (z2, e2) = rng.choice(elems), rng.choice(elems)
            prod = rt.perm_compose(z1, z2)
            expo = lp.xi_exponent(prod)
            combined = e1 + e2
            assert expo == combined - int(combined)

    def test_outside_element_rejected(self):
        lp = rt.LabelledPartition((2, 1), ("x", "y"))
        with pytest.raises(ValueError):
            lp.xi_exponent(rt.perm_from_cycles(3, [(2, 3)]))


class TestInducedCharacters:
    def test_cyclic_three(self):
        got = rt.induced_character((3,), ("1",))
        want = rt.irreducible_character((2, 1))
        assert got == want

    def test_dimension(self):
        chi = rt.induced_character((2, 2, 1, 1, 1), ("xy", "xy", "y", "x", "x"))
        assert chi[(1,) * 7] == 315

    def test_integrality_various(self):
        for parts, labels in [((2, 1), ("x", "y")), ((3, 1), ("xy", "1")),
                              ((2, 2), ("x", "x")), ((4,), ("y",)),
                              ((2, 2), ("x", "y"))]:
            chi = rt.induced_character(parts, labels)
            assert all(v.denominator == 1 for v in chi.values())

    def test_bound_respected(self):
        with pytest.raises(ValueError):
            rt.induced_character((9,), ("1",), bound=8)

    @pytest.mark.parametrize("seed", range(6))
    def test_frobenius_reciprocity(self, seed):
        rng = random.Random(seed)
        n = rng.choice([3, 4, 5])
        lam = rng.choice([p for p in rt.partitions(n)])
        labels = tuple(rng.choice(rt.LABELS) for _ in lam)
        labels = tuple(l for _, l in sorted(zip(lam, labels),
                                            key=lambda t: (-t[0], t[1])))
        lp = rt.LabelledPartition(lam, labels)
        ind = rt.induced_character(lam, labels)
        for mu in rt.partitions(n):
            lhs = rt.inner_product(ind, rt.irreducible_character(mu), n)
            chi = rt.irreducible_character(mu)
            bucket = {}
            for z, expo in lp.elements():
                cls = rt.cycle_type(z)
                val = chi[cls] * rt.sign_of_class(cls)
                bucket[expo] = bucket.get(expo, Fraction(0)) + val
            rhs = rt.root_of_unity_sum(bucket) / lp.group_order()
            assert lhs == rhs

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_dimension_bookkeeping(self, n, braid_models):
        t2 = cohomology.tensor_with_curve(
            cohomology.page2_table(braid_models[n]), 1)
        seen = {}
        for q in range(n):
            for p in range(2 * n + 1):
                s = sum(rt.induced_dimension(lp.parts, lp.labels)
                        for lp in rt.labelled_partitions(n, p, q))
                if s:
                    seen[(p, q)] = s
        assert seen == dict(t2.entries)


class TestTopDegree:
    def test_s3_values(self):
        assert rt.top_degree_multiplicity((2, 1), 3) == 1
        assert rt.top_degree_multiplicity((3,), 3) == 0
        assert rt.top_degree_multiplicity((1, 1, 1), 3) == 0

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_total_dimension(self, n):
        total = sum(rt.top_degree_multiplicity(mu, n) * rt.character_dimension(mu)
                    for mu in rt.partitions(n))
        assert total == factorial(n - 1)

    def test_matches_induced_character(self):
        # the whole top-degree representation, two routes
        for n in (3, 4, 5):
            ind = rt.induced_character((n,), ("1",))
            for mu in rt.partitions(n):
                assert (rt.inner_product(ind, rt.irreducible_character(mu), n)
                        == rt.top_degree_multiplicity(mu, n))


class TestSl2Isotypics:
    def test_weight_zero_only(self):
        out = rt.sl2_isotypics((2, 1), (0, 0))
        assert [a for a, _ in out] == [0]

    def test_nonnegative_and_consistent(self, braid_models):
        for n in (3, 4):
            t2 = cohomology.tensor_with_curve(
                cohomology.page2_table(braid_models[n]), 1)
            for (p, q), dim in t2.entries.items():
                if q == 0:
                    continue
                rows = rt.bidegree_decomposition(n, p, q)
                for r in rows:
                    assert r["multiplicity"] >= 0
                total = sum(r["multiplicity"]
                            * rt.character_dimension(tuple(r["partition"]))
                            * (r["sl2_weight"] + 1) for r in rows)
                assert total == dim
                for k in {r["sl2_weight"] for r in rows}:
                    s = sum(r["multiplicity"]
                            * rt.character_dimension(tuple(r["partition"]))
                            for r in rows if r["sl2_weight"] == k)
                    assert s == t2.sl2_multiplicity(p, q, k)

    def test_admissible_weights_parity(self):
        for a, _ in rt.sl2_isotypics((2, 1, 1), (1, 1, 0)):
            assert a % 2 == 0 and 0 <= a <= 2

    @pytest.mark.parametrize("p,q", [(2, 2), (1, 3), (3, 1)])
    def test_five_points_spot_checks(self, p, q, braid_models):
        n = 5
        t2 = cohomology.tensor_with_curve(
            cohomology.page2_table(braid_models[n]), 1)
        rows = rt.bidegree_decomposition(n, p, q)
        total = sum(r["multiplicity"]
                    * rt.character_dimension(tuple(r["partition"]))
                    * (r["sl2_weight"] + 1) for r in rows)
        assert total == t2.dim(p, q)
        for k in {r["sl2_weight"] for r in rows}:
            s = sum(r["multiplicity"]
                    * rt.character_dimension(tuple(r["partition"]))
                    for r in rows if r["sl2_weight"] == k)
            assert s == t2.sl2_multiplicity(p, q, k)

    def test_restriction_dimension_remark(self, braid_page3):
        # page-3 (1, n-2) has twice the top hyperplane cohomology below
        for n in (3, 4, 5):
            t3 = braid_page3[n]
            assert t3.dim(1, n - 2) == 2 * factorial(n - 2)


class TestSchur:
    def test_exterior_powers(self):
        for m in (2, 3, 4):
            for p in range(m + 1):
                assert rt.schur_dimension((1,) * p, m) == comb(m, p)

    def test_too_many_rows(self):
        assert rt.schur_dimension((1, 1, 1), 2) == 0

    def test_first_row_consistency(self):
        # exterior powers of the reduced coordinate space
        for n in (3, 4, 5, 6):
            for p in range(n):
                assert (braid.e2_weight_multiplicity(n, p, 0, p, reduced=True)
                        == rt.schur_dimension((1,) * p, n - 1) == comb(n - 1, p))
