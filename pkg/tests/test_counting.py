"""Counting operations against their enumeration oracles and known identities."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alder import counting
from alder.counting import (big_q, big_q_minus, big_q_minus_minus, delta,
                            delta_minus, delta_minus_minus, g_script,
                            l_script, largest_part_counts, q_brute, q_count,
                            q_lower_bound, rho, rho_brute)
from alder.partset import ResidueClassSet, pm_set, r_of, s_set, t_set


class TestRho:
    def test_empty_partition(self):
        assert rho(s_set(63, 2), 0) == 1
        assert rho(t_set(5, 63), 0) == 1

    def test_paper_anchor(self):
        assert rho(s_set(63, 2), 126) == 2

    def test_t5_66(self):
        # 1^66 and 65 + 1
        assert rho(t_set(5, 63), 66) == 2

    def test_matches_brute_on_small_sets(self):
        for A in (pm_set(1, 4), pm_set(2, 5), pm_set(1, 6, [5]), t_set(2, 3)):
            for n in range(41):
                assert rho(A, n) == rho_brute(A, n)

    @given(st.integers(min_value=3, max_value=9), st.data())
    @settings(max_examples=40)
    def test_weakly_increasing_when_1_in_set(self, m, data):
        extra = data.draw(st.sets(st.integers(min_value=0, max_value=m - 1),
                                  max_size=2))
        A = ResidueClassSet(m, {1} | extra)
        values = [rho(A, n) for n in range(60)]
        assert all(lo <= hi for lo, hi in zip(values, values[1:]))

    def test_rejects_negative_n(self):
        with pytest.raises(ValueError):
            rho(t_set(5, 63), -1)


class TestQCount:
    @pytest.mark.parametrize("a,d,n,expected", [
        (1, 1, 5, 3),    # 5; 4+1; 3+2
        (2, 3, 6, 1),    # only 6 (4+2 has gap 2 < 3)
        (1, 63, 65, 2),  # 65; 64+1
    ])
    def test_examples(self, a, d, n, expected):
        assert q_count(a, d, n) == expected

    def test_boundary_values(self):
        assert q_count(3, 5, 0) == 1
        assert q_count(3, 5, 3) == 1
        assert q_count(3, 5, 2) == 0
        assert q_count(3, 5, 1) == 0

    def test_monotone_in_n_for_a1(self):
        for d in (1, 2, 5, 63):
            vals = [q_count(1, d, n) for n in range(121)]
            assert all(lo <= hi for lo, hi in zip(vals, vals[1:]))

    def test_matches_brute(self):
        for a in range(1, 5):
            for d in range(1, 5):
                for n in range(31):
                    assert q_count(a, d, n) == q_brute(a, d, n)

    @given(st.integers(min_value=1, max_value=6),
           st.integers(min_value=1, max_value=8),
           st.integers(min_value=0, max_value=36))
    @settings(max_examples=80)
    def test_matches_brute_random(self, a, d, n):
        assert q_count(a, d, n) == q_brute(a, d, n)


class TestQBrute:
    def test_examples(self):
        assert q_brute(1, 1, 5) == 3
        assert q_brute(4, 9, 4) == 1   # single part a
        assert q_brute(4, 9, 3) == 0

    def test_first_rogers_ramanujan_instance(self):
        # gap-2-distinct partitions of 9 vs parts == +-1 (mod 5)
        assert q_brute(1, 2, 9) == rho_brute(pm_set(1, 5), 9)

    def test_limit_enforced(self):
        with pytest.raises(ValueError):
            q_brute(1, 1, 61)
        assert q_brute(1, 40, 61, limit=100) == q_count(1, 40, 61)


class TestBigQ:
    def test_example(self):
        assert big_q(2, 3, 6) == 2  # 2+2+2; 2+4

    def test_minus_paper_value(self):
        assert big_q_minus(1, 61, 321) == 29

    def test_minus_minus_single_part(self):
        assert big_q_minus_minus(4, 417, 424) == 1

    def test_minus_vs_set(self):
        # Q_{d-N}^(1,-) is rho over s_set(d, N)
        for (d, N) in [(63, 2), (63, 3), (105, 4)]:
            for n in (0, 1, 64, 126, 200):
                assert big_q_minus(1, d - N, n) == rho(s_set(d, N), n)

    def test_coincident_residue_handled(self):
        # a = (d+3)/2: one residue class; the two exclusions collapse
        assert big_q(3, 3, 6) == rho_brute(pm_set(3, 6), 6)
        assert big_q_minus(3, 3, 9) == big_q_minus_minus(3, 3, 9)

    def test_rejects_large_a(self):
        with pytest.raises(ValueError):
            big_q(6, 3, 10)

    def test_against_brute(self):
        for a in range(1, 6):
            for d in range(1, 6):
                if a >= d + 3:
                    continue
                for n in range(31):
                    A = pm_set(a, d + 3)
                    assert big_q(a, d, n) == rho_brute(A, n)


class TestDelta:
    def test_euler_sample(self):
        assert all(delta(1, 1, n) == 0 for n in range(61))

    def test_kang_park_witness(self):
        assert delta(2, 3, 6) == -1

    def test_delta_minus_exceptional_cell(self):
        assert delta_minus(4, 417, 424) == -1
        # both sides pinned by the enumeration oracles
        assert q_brute(4, 417, 424, limit=424) == 1
        assert rho_brute(pm_set(4, 420, [416]), 424, limit=424) == 2

    def test_minus_minus_at_same_cell(self):
        assert delta_minus_minus(4, 417, 424) == 0

    def test_qminus_not_monotone_for_large_a(self):
        # big_q_minus(4, 417, .) descends somewhere below 500 (e.g. after
        # n = d+a+3); recorded as an existence scan, no single cell pinned.
        descents = [n for n in range(1, 500)
                    if big_q_minus(4, 417, n + 1) < big_q_minus(4, 417, n)]
        assert descents


class TestGScript:
    def test_weight_zero(self):
        assert g_script(63, 0) == 1
        assert g_script(105, 0) == 1

    def test_brute_comparison(self):
        # pairs (D, U): distinct parts from the d+2^(r-1) (mod 2d) class,
        # unrestricted parts from T(r-1, d)
        def g_oracle(d, n):
            r = r_of(d)
            T = t_set(r - 1, d)
            first = d + 2 ** (r - 1)
            progression = list(range(first, n + 1, 2 * d))

            def walk(idx, remaining):
                if idx == len(progression):
                    return rho_brute(T, remaining, limit=remaining)
                total = walk(idx + 1, remaining)  # skip this distinct part
                if progression[idx] <= remaining:
                    total += walk(idx + 1, remaining - progression[idx])
                return total

            return walk(0, n)

        for d in (4, 31, 63):
            for n in (0, 1, 50, 95, 96, 130):
                assert g_script(d, n) == g_oracle(d, n)

    def test_example_63_95(self):
        # the lone distinct part 95 plus the five T-only partitions
        assert g_script(63, 95) == rho(t_set(5, 63), 95) + 1 == 6

    def test_chain_at_5d(self):
        for d in (63, 105):
            n = 5 * d
            assert q_count(1, d, n) >= g_script(d, n) >= rho(t_set(5, d), n)

    def test_q_dominates_t5_window(self):
        for d in (63, 64, 105):
            for n in range(5 * d, 5 * d + 101):
                assert q_count(1, d, n) >= rho(t_set(5, d), n)

    def test_rejects_r_below_2(self):
        with pytest.raises(ValueError):
            g_script(2, 10)


class TestLScript:
    def test_values(self):
        assert l_script(15, 0) == 1
        assert l_script(31, 33) == 2   # 1^33 and the part 33 = d+2
        assert l_script(63, 1) == 1


class TestQLowerBound:
    @pytest.mark.parametrize("d,n,expected", [(63, 65, 2), (10, 5, 1),
                                              (63, 189, 64)])
    def test_examples(self, d, n, expected):
        assert q_lower_bound(d, n) == expected

    def test_bounds_q_count(self):
        for d in (1, 7, 63, 127):
            for n in range(1, 1001):
                assert q_count(1, d, n) >= q_lower_bound(d, n)
        assert q_count(1, 63, 189) >= 64


class TestTMonotoneCounts:
    @pytest.mark.parametrize("d", [31, 63, 127])
    def test_rho_monotone_in_s(self, d):
        r = r_of(d)
        tables = {s: [rho(t_set(s, d), n) for n in range(401)]
                  for s in range(1, r + 1)}
        for a in range(1, r + 1):
            for b in range(a, r + 1):
                assert all(x <= y for x, y in zip(tables[a], tables[b]))


class TestLargestPartCounts:
    def test_distribution_at_anchor(self):
        dist = largest_part_counts(s_set(63, 2), 321, 10)
        assert dist == [1, 4, 5, 6, 5, 3, 2, 1, 1, 1]
        assert sum(dist) == rho(s_set(63, 2), 321)

    def test_agrees_with_enumeration(self):
        from alder.injection import enumerate_partitions
        A = s_set(63, 2)
        n = 130
        per_largest = {}
        for lam in enumerate_partitions(A, n):
            top = max(i for i, _ in lam.mult)
            per_largest[top] = per_largest.get(top, 0) + 1
        dist = largest_part_counts(A, n, 6)
        assert dist == [per_largest.get(i, 0) for i in range(1, 7)]


class TestTables:
    def test_entry_zero_is_one(self):
        tab = counting._part_table(s_set(63, 2), 10)
        assert tab.values[0] == 1

    def test_rebuild_reproducible(self):
        A = pm_set(1, 7)
        first = [rho(A, n) for n in range(50)]
        counting._tables.clear()
        assert [rho(A, n) for n in range(50)] == first


class TestRandomSpotChecks:
    def test_seeded_larger_instances(self):
        rng = random.Random(20260811)
        for _ in range(30):
            a = rng.randint(1, 8)
            d = rng.randint(2, 12)
            n = rng.randint(41, 90)
            assert q_count(a, d, n) == q_brute(a, d, n, limit=n)
