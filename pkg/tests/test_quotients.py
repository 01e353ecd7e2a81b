import random

import numpy as np
import pytest

from lamprigid import (
    FieldSpec,
    LamplighterSpec,
    ModulePresentation,
    admits_surjection_from_lamplighter,
    build_group_table,
    compare_qu,
    enumerate_normal_subgroups,
    fingerprint,
    finite_truncation,
    isomorphic,
    quotient_table,
    truncated_qu,
)
from lamprigid.errors import NotNormal, OrderBoundExceeded
from lamprigid.fppoly import FpPoly
from lamprigid.quotients import cyclic_table, direct_product_table, semidirect_table

from oracles import brute_normal_subgroups, small_group_catalog

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def lamp_table(p, n, m, cap=4096):
    pres = ModulePresentation.free(FieldSpec(p), n)
    return build_group_table(finite_truncation(pres, m), m, cap)


class TestBuildGroupTable:
    def test_24_element_truncation(self):
        table = lamp_table(2, 1, 3)
        assert table.order == 24  # 2^3 * 3, axioms verified exhaustively on build

    def test_m_one_is_elementary_abelian(self):
        pres = ModulePresentation.make(
            F2, 2, [[FpPoly.zero(F2)], [FpPoly(F2, (1, 1, 1))]])
        table = build_group_table(finite_truncation(pres, 1), 1)
        assert table.order == 2
        assert fingerprint(table).abelian_invariants == (2,)

    def test_dimension_zero_gives_cyclic(self):
        table = semidirect_table(FieldSpec(5), [], 5)
        assert table.order == 5
        assert isomorphic(table, cyclic_table(5))

    def test_order_cap(self):
        with pytest.raises(OrderBoundExceeded):
            lamp_table(2, 1, 4, cap=32)


class TestNormalSubgroups:
    def test_cyclic_four(self):
        subs = enumerate_normal_subgroups(cyclic_table(4))
        assert sorted(len(s) for s in subs) == [1, 2, 4]

    def test_wreath_24_contains_base_and_ideals(self):
        table = lamp_table(2, 1, 3)
        subs = enumerate_normal_subgroups(table)
        sizes = sorted(len(s) for s in subs)
        # ideal lattice of the cyclic base module: orders 1, 2, 4, 8
        for ideal_order in (1, 2, 4, 8):
            assert ideal_order in sizes
        base = frozenset(int(v * 3) for v in range(8))  # shift-0 elements
        assert base in subs

    def test_trivial_and_whole_always_present(self):
        for table in (cyclic_table(6), lamp_table(2, 1, 2)):
            subs = enumerate_normal_subgroups(table)
            assert frozenset({table.identity}) in subs
            assert frozenset(range(table.order)) in subs

    def test_against_exhaustive_filter(self):
        tables = [cyclic_table(8), direct_product_table(cyclic_table(2), cyclic_table(4)),
                  lamp_table(2, 1, 2), lamp_table(2, 1, 3), lamp_table(3, 1, 2),
                  lamp_table(2, 1, 4)]
        for table in tables:
            assert table.order <= 64
            fast = set(enumerate_normal_subgroups(table))
            slow = set(brute_normal_subgroups(table))
            assert fast == slow

    def test_closure_properties(self):
        table = lamp_table(2, 1, 3)
        for sub in enumerate_normal_subgroups(table):
            members = np.array(sorted(sub))
            prods = table.mul[np.ix_(members, members)]
            assert set(int(x) for x in prods.ravel()) <= sub
            assert all(int(table.inverse[g]) in sub for g in sub)


class TestQuotientTable:
    def test_trivial_kernel(self):
        table = cyclic_table(6)
        q = quotient_table(table, frozenset({0}))
        assert isomorphic(q, table)

    def test_full_kernel(self):
        table = cyclic_table(6)
        assert quotient_table(table, frozenset(range(6))).order == 1

    def test_wreath_by_base_is_cyclic_three(self):
        table = lamp_table(2, 1, 3)
        base = frozenset(int(v * 3) for v in range(8))
        q = quotient_table(table, base)
        assert isomorphic(q, cyclic_table(3))

    def test_not_normal(self):
        # a single reflection generates a non-normal order-2 subgroup of D4
        d4 = semidirect_table(F2, [[0, 1], [1, 0]], 2)
        reflection = None
        for g in range(8):
            if d4.element_order(g) == 2:
                sub = frozenset({0, g})
                try:
                    quotient_table(d4, sub)
                except NotNormal:
                    reflection = g
                    break
        assert reflection is not None


class TestFingerprint:
    def test_cyclic_versus_klein(self):
        c4 = fingerprint(cyclic_table(4))
        v4 = fingerprint(direct_product_table(cyclic_table(2), cyclic_table(2)))
        assert c4.element_orders == (1, 2, 4, 4)
        assert v4.element_orders == (1, 2, 2, 2)
        assert c4 != v4

    def test_dihedral_eight(self):
        d4 = fingerprint(semidirect_table(F2, [[0, 1], [1, 0]], 2))
        assert d4.exponent == 4
        assert d4.class_sizes == (1, 1, 2, 2, 2)
        assert d4.abelian_invariants == (2, 2)

    def test_trivial_group(self):
        fp = fingerprint(cyclic_table(1))
        assert fp.order == 1 and fp.exponent == 1 and fp.abelian_invariants == ()


class TestIsomorphic:
    def test_reflexive_on_pool(self):
        for _, table in small_group_catalog():
            assert isomorphic(table, table)

    def test_cyclic_versus_klein(self):
        assert not isomorphic(cyclic_table(4),
                              direct_product_table(cyclic_table(2), cyclic_table(2)))

    def test_different_truncation_bases_same_group(self):
        # same group built from a free presentation and from an explicit
        # annihilator presentation of the cyclic base module
        t1 = lamp_table(2, 1, 3)
        pres = ModulePresentation.make(F2, 1, [[FpPoly(F2, (1, 0, 0, 1))]])
        t2 = build_group_table(finite_truncation(pres, 3), 3)
        assert isomorphic(t1, t2)

    def test_catalog_pairwise_distinct(self):
        catalog = small_group_catalog()
        for i, (name1, g1) in enumerate(catalog):
            for name2, g2 in catalog[i + 1:]:
                assert not isomorphic(g1, g2), f"{name1} vs {name2}"

    def test_equivalence_relation_spot_checks(self):
        rng = random.Random(47)
        pool = [table for _, table in small_group_catalog()]
        pool.append(lamp_table(2, 1, 3))
        pool.append(lamp_table(3, 1, 2))
        for _ in range(60):
            a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
            ab, bc, ac = isomorphic(a, b), isomorphic(b, c), isomorphic(a, c)
            assert isomorphic(b, a) == ab  # symmetric
            if ab and bc:
                assert ac  # transitive


EXPECTED_BOUND_4 = {("C1",), ("C2",), ("C3",), ("C4",), ("C2", "C2")}


class TestTruncatedQu:
    def test_bound_four_exact_set(self):
        qs = truncated_qu(ModulePresentation.free(F2, 1), 4)
        got = {tuple(f"C{d}" for d in reversed(fp.abelian_invariants)) or ("C1",)
               for fp in qs.fingerprints}
        assert got == EXPECTED_BOUND_4
        assert all(len(fp.element_orders) == fp.order for fp in qs.fingerprints)

    def test_bound_one_trivial(self):
        qs = truncated_qu(ModulePresentation.free(F3, 2), 1)
        assert len(qs.classes) == 1 and qs.classes[0].order == 1

    def test_bound_eight_contains_nonabelian_truncation(self):
        qs = truncated_qu(ModulePresentation.free(F2, 1), 8)
        d4 = semidirect_table(F2, [[0, 1], [1, 0]], 2)
        assert any(fp.order == 8 and isomorphic(t, d4)
                   for t, fp in zip(qs.classes, qs.fingerprints))

    def test_monotone_in_bound(self):
        pres = ModulePresentation.make(F2, 2, [[FpPoly.zero(F2)], [FpPoly(F2, (1, 1, 1))]])
        small = truncated_qu(pres, 4)
        large = truncated_qu(pres, 8)
        for t, fp in zip(small.classes, small.fingerprints):
            assert any(fp == lfp and isomorphic(t, lt)
                       for lt, lfp in zip(large.classes, large.fingerprints))

    def test_kernel_strategy_matches_surjection_search_bound_four(self):
        spec = LamplighterSpec(F2, 1, None)
        qs = truncated_qu(ModulePresentation.free(F2, 1), 4)
        for name, table in small_group_catalog():
            if table.order > 4:
                continue
            admitted = admits_surjection_from_lamplighter(spec, table)
            found = any(isomorphic(table, t) for t in qs.classes)
            assert admitted == found, name

    def test_bound_cap(self):
        with pytest.raises(OrderBoundExceeded):
            truncated_qu(ModulePresentation.free(F2, 1), 17)


class TestCompareQu:
    def test_self_comparison_equal(self):
        for bound in (2, 4, 6):
            cmp = compare_qu(ModulePresentation.free(F2, 1),
                             ModulePresentation.free(F2, 1), bound)
            assert cmp.equal and cmp.witness is None

    def test_torsion_candidate_differs_at_eight(self):
        pres = ModulePresentation.make(F2, 1, [[FpPoly(F2, (1, 1))]])
        cmp = compare_qu(pres, ModulePresentation.free(F2, 1), 8)
        assert not cmp.equal
        side, fp = cmp.witness
        assert side == "right"  # only the lamp group has it
        assert fp.order == 8 and fp.class_sizes != (1,) * 8  # nonabelian witness

    def test_different_primes_differ_at_four(self):
        cmp = compare_qu(ModulePresentation.free(F2, 1),
                         ModulePresentation.free(F3, 1), 4)
        assert not cmp.equal
        side, fp = cmp.witness
        assert side == "left" and fp.abelian_invariants == (2, 2)
