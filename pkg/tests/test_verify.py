from __future__ import annotations

import json
from fractions import Fraction as F
from math import comb

import pytest

from ehrgraph import verify
from ehrgraph.families import dumbbell, k4, single_edge, star
from ehrgraph.lattice import dfs_count, enumerate_q_points
from ehrgraph.multigraph import caterpillar, caterpillar_subgraph
from ehrgraph.verify import (
    SUITES,
    Report,
    check_binomial_identity,
    check_boundary_form,
    check_constituent_relations,
    check_d_recurrence,
    check_delta,
    check_key_summation,
    check_leafpath_lemma,
    check_loop_lemma,
    check_odd_relation,
    check_shift_lemma,
    check_shift_planar,
    d_closed,
    d_from_counts,
    delta,
    p0_minus_p2_closed,
    planar_shift_example,
    reports_json,
    run_suite,
    summarize,
)


def brute_vol(h, k, i, j, t):
    """Coset size by filtering the full point list of tQ."""
    g = caterpillar(h, k)
    H = caterpillar_subgraph(h, k, i, j)
    return sum(1 for p in enumerate_q_points(g, t) if {e for e, x in enumerate(p.w) if x % 2} == H)


def brute_delta(h, k, t):
    g = caterpillar(h, k)
    e = verify.leaf_edge(h, k)
    even = dfs_count(g, t, "P", tuple(0 if f == e else None for f in range(g.m)))
    return 2 * even - dfs_count(g, t, "P")


class TestReport:
    def test_record_and_json(self):
        r = Report("demo", {"h": 1})
        r.record(True, t=0)
        r.record(False, t=2, lhs=F(1, 2), rhs=caterpillar(0, 2))
        assert r.checked == 2 and not r.ok
        data = r.to_json()
        assert data["status"] == "fail"
        assert data["witnesses"][0]["lhs"] == "1/2"
        json.dumps(data)
        assert r.to_text().startswith("[FAIL] demo")

    def test_mutated_count_is_caught(self, monkeypatch):
        monkeypatch.setattr(verify, "vol", lambda h, k, i, j, t: 7)
        assert not check_loop_lemma(0, 2, 4).ok
        assert not check_key_summation(1, 1, 4).ok


class TestKeySummation:
    def test_dumbbell_t2(self):
        assert verify.lq(0, 2, 2) == 10
        assert [brute_vol(0, 2, 0, j, 2) for j in (0, 1, 2)] == [4, 2, 2]
        assert check_key_summation(0, 2, 2).ok

    @pytest.mark.parametrize("h,k", [(2, 0), (1, 1), (3, 1), (0, 3)])
    def test_holds(self, h, k):
        rep = check_key_summation(h, k, 6)
        assert rep.ok and rep.checked >= 4


class TestLeafpath:
    def test_recursion_example(self):
        assert brute_vol(2, 1, 1, 0, 4) == brute_vol(2, 1, 0, 0, 4) - dfs_count(caterpillar(1, 1), 4)

    def test_alternating_example(self):
        for t in (0, 2, 4):
            alt = sum((-1) ** j * comb(2, j) * dfs_count(caterpillar(4 - j, 1), t) for j in range(3))
            assert verify.vol(4, 1, 2, 0, t) == alt

    @pytest.mark.parametrize("h,k", [(2, 1), (1, 2), (3, 1), (4, 1), (3, 0)])
    def test_holds(self, h, k):
        assert check_leafpath_lemma(h, k, 8).ok

    def test_summation_skipped_without_smaller_caterpillar(self):
        assert check_leafpath_lemma(2, 0, 4).ok
        assert not verify._summation_defined(2, 0)
        assert verify._summation_defined(3, 0) and verify._summation_defined(2, 1)


class TestLoop:
    def test_examples(self):
        assert brute_vol(0, 2, 0, 0, 4) - brute_vol(0, 2, 0, 1, 4) == 3
        assert brute_vol(0, 2, 0, 0, 2) - brute_vol(0, 2, 0, 1, 2) == 2
        assert brute_vol(1, 1, 0, 0, 2) - brute_vol(1, 1, 0, 1, 2) == 0

    @pytest.mark.parametrize("h,k", [(0, 2), (1, 1), (2, 1), (1, 3), (3, 2)])
    def test_holds(self, h, k):
        assert check_loop_lemma(h, k, 8).ok


class TestDelta:
    def test_examples(self):
        assert brute_delta(2, 0, 4) == delta(2, 0, 4) == 1
        assert brute_delta(2, 0, 2) == delta(2, 0, 2) == 0
        assert brute_delta(1, 1, 6) == delta(1, 1, 6) == 4
        assert brute_delta(2, 1, 4) == delta(2, 1, 4) == 3

    @pytest.mark.parametrize("h,k", [(1, 1), (2, 0), (2, 1), (1, 2), (3, 1), (2, 2)])
    def test_holds(self, h, k):
        assert check_delta(h, k, 8).ok

    @pytest.mark.parametrize("h,k", [(1, 1), (2, 1), (3, 0)])
    def test_boundary_form(self, h, k):
        rep = check_boundary_form(h, k, 4)
        assert rep.ok and rep.checked > 0


class TestShift:
    def test_planar(self):
        pts, even, odd, out, inn = planar_shift_example()
        assert (out, inn) == (7, 8)
        assert even - odd == -1
        assert check_shift_planar().ok

    def test_single_edge(self):
        assert check_shift_lemma(single_edge(), 4).ok
        even = dfs_count(single_edge(), 4, "P", (0,))
        assert (even, dfs_count(single_edge(), 4) - even) == (2, 1)

    def test_star(self):
        assert check_shift_lemma(star(), 6).ok

    def test_loops(self):
        assert check_shift_lemma(caterpillar(1, 1), 6).ok


class TestOddRelation:
    def test_examples(self):
        assert dfs_count(dumbbell(), 1, "Q") == 4 == 4 * dfs_count(dumbbell(), 1)
        assert dfs_count(star(), 1, "Q") == 4 == 4 * dfs_count(star(), 1)
        assert dfs_count(k4(), 1, "Q") == 8 and dfs_count(k4(), 1) == 1

    @pytest.mark.parametrize("factory", [dumbbell, star, k4])
    def test_holds(self, factory):
        assert check_odd_relation(factory(), 5).ok


class TestConstituents:
    def test_dumbbell_cubic_identity(self):
        assert check_constituent_relations(0, 2).ok

    def test_g11_closed_form(self):
        assert p0_minus_p2_closed(1, 1) == (F(1, 2),)
        assert check_constituent_relations(1, 1).ok

    @pytest.mark.parametrize("h,k", [(2, 0), (3, 0), (2, 1), (1, 2), (0, 3)])
    def test_holds(self, h, k):
        assert check_constituent_relations(h, k).ok


class TestBinomialAndD:
    def test_binomial_examples(self):
        assert comb(2, 0) + comb(2, 2) == 2
        assert check_binomial_identity(6).ok
        assert check_binomial_identity(6).checked == sum(h // 2 + 1 for h in range(1, 7))

    def test_d_values(self):
        assert d_closed(1) == -4
        assert d_closed(2) == 8
        assert d_from_counts(1, 1, 4) == -4
        assert d_from_counts(2, 1, 0) == 8

    def test_recurrence(self):
        assert check_d_recurrence(3, 1, 4).ok
        assert check_d_recurrence(2, 2, 2).ok


class TestSuites:
    def test_names(self):
        assert len(SUITES) == 9

    @pytest.mark.parametrize("name", SUITES)
    def test_small_grid_passes(self, name):
        reports = run_suite(name, "small")
        total = summarize(name, reports)
        assert total.ok and total.checked > 0

    def test_jobs_do_not_change_output(self):
        a = reports_json(run_suite("loop-lemma", "small", jobs=1))
        b = reports_json(run_suite("loop-lemma", "small", jobs=2))
        assert a == b

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            run_suite("nope")

    @pytest.mark.slow
    @pytest.mark.parametrize("name", SUITES)
    def test_full_grid_passes(self, name):
        assert summarize(name, run_suite(name, "full")).ok
