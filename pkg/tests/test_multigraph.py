from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ehrgraph.errors import Disconnected, InvalidShape, MalformedGraph, NotOneThree, TooLarge
from ehrgraph.families import all_connected_13, k4, path4, triangle
from ehrgraph.multigraph import (
    MultiGraph,
    are_isomorphic,
    caterpillar,
    caterpillar_subgraph,
    classify_caterpillar_subgraph,
    count_eulerian_subgraphs,
    enumerate_internally_eulerian,
    eulerian_count_formula,
    GraphStats,
    is_internally_eulerian,
    parse_g13,
    permute_edges,
    to_g13,
    validate_13,
)


def brute_internally_eulerian(g):
    out = []
    for r in range(g.m + 1):
        for c in combinations(range(g.m), r):
            if is_internally_eulerian(g, c):
                out.append(frozenset(c))
    return out


def brute_eulerian_count(g):
    total = 0
    for r in range(g.m + 1):
        for c in combinations(range(g.m), r):
            deg = Counter()
            for e in c:
                u, v = g.edges[e]
                deg[u] += 1
                deg[v] += 1
            total += all(d % 2 == 0 for d in deg.values())
    return total


class TestValidate:
    def test_dumbbell(self, dumbbell):
        s = validate_13(dumbbell)
        assert (s.h, s.k, s.n, s.m) == (0, 2, 2, 3)
        assert s.is_cubic and s.connected and not s.is_tree and s.is_13

    def test_star(self, star):
        s = validate_13(star)
        assert (s.h, s.k) == (3, 0)
        assert s.is_tree and not s.is_cubic

    def test_single_edge(self, single_edge):
        s = validate_13(single_edge)
        assert (s.h, s.k) == (2, 0) and s.is_tree

    def test_degree_violation_reported_not_raised(self):
        s = validate_13(path4())
        assert not s.is_13 and s.is_tree

    def test_loop_counts_twice(self, dumbbell):
        assert dumbbell.degree(0) == 3
        assert dumbbell.incidence(0) == (0, 0, 2)

    def test_dangling_endpoint(self):
        with pytest.raises(MalformedGraph):
            MultiGraph((0, 1), ((0, 2),))

    def test_disconnected_stats(self):
        g = MultiGraph.from_edges([(0, 1), (2, 3)])
        s = validate_13(g)
        assert not s.connected and s.k == 0 and not s.is_tree
        assert len(g.component_graphs()) == 2


class TestInternallyEulerian:
    def test_dumbbell(self, dumbbell):
        got = enumerate_internally_eulerian(dumbbell)
        assert set(got) == {frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})}

    def test_star(self, star):
        got = set(enumerate_internally_eulerian(star))
        assert got == {frozenset(), frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})}

    def test_single_edge(self, single_edge):
        assert enumerate_internally_eulerian(single_edge) == [frozenset(), frozenset({0})]

    def test_rejects_non_13(self):
        with pytest.raises(NotOneThree):
            enumerate_internally_eulerian(path4())

    @pytest.mark.parametrize("g", all_connected_13(7), ids=lambda g: to_g13(g).replace("\n", ";"))
    def test_matches_brute_force(self, g):
        assert sorted(map(sorted, enumerate_internally_eulerian(g))) == sorted(map(sorted, brute_internally_eulerian(g)))

    def test_count_matches_formula_up_to_ten_edges(self):
        for g in all_connected_13(10):
            assert len(enumerate_internally_eulerian(g)) == eulerian_count_formula(validate_13(g))


class TestFormula:
    @pytest.mark.parametrize("h,k,expected", [(0, 2, 4), (2, 4, 32), (2, 0, 2), (3, 0, 4)])
    def test_values(self, h, k, expected):
        s = GraphStats(h=h, k=k, n=0, m=0, connected=True, is_tree=k == 0, is_cubic=h == 0, is_13=True)
        assert eulerian_count_formula(s) == expected


class TestEulerianCount:
    def test_examples(self, dumbbell):
        assert count_eulerian_subgraphs(dumbbell) == brute_eulerian_count(dumbbell) == 4
        assert count_eulerian_subgraphs(triangle()) == 2
        assert count_eulerian_subgraphs(k4()) == brute_eulerian_count(k4()) == 8

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            count_eulerian_subgraphs(MultiGraph.from_edges([(0, 1), (2, 3)]))

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_cycle_space_dimension(self, data):
        n = data.draw(st.integers(1, 5))
        # spanning path keeps the graph connected; extra edges may be loops or parallel
        edges = [(i, i + 1) for i in range(n - 1)]
        extra = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8 - len(edges)))
        g = MultiGraph.from_edges(edges + extra, nodes=range(n))
        assert count_eulerian_subgraphs(g) == brute_eulerian_count(g) == 2 ** (g.m - g.n + 1)


class TestCaterpillar:
    def test_dumbbell(self, dumbbell):
        g = caterpillar(0, 2)
        assert g.n == 2 and g.m == 3 and are_isomorphic(g, dumbbell)

    def test_single_edge(self, single_edge):
        g = caterpillar(2, 0)
        assert g.n == 2 and g.edges == single_edge.edges

    def test_two_four(self):
        g = caterpillar(2, 4)
        s = validate_13(g)
        assert g.n == 10 and (s.h, s.k) == (2, 4) and s.connected

    @pytest.mark.parametrize("h,k", [(1, 0), (0, 1), (0, 0), (-1, 3)])
    def test_invalid(self, h, k):
        with pytest.raises(InvalidShape):
            caterpillar(h, k)

    @pytest.mark.parametrize("h,k", [(h, s - h) for s in range(2, 7) for h in range(s + 1)])
    def test_shape_and_subgraph_classes(self, h, k):
        g = caterpillar(h, k)
        s = validate_13(g)
        assert (s.h, s.k, g.n, s.connected) == (h, k, 2 * (h + k - 1), True)
        classes = Counter()
        for H in enumerate_internally_eulerian(g):
            i, j = classify_caterpillar_subgraph(g, H)
            assert 2 * i <= h and j <= k
            # removing loops leaves i vertex-disjoint leaf-paths
            rest = [e for e in H if not g.is_loop(e)]
            deg = Counter(x for e in rest for x in g.edges[e])
            assert sum(1 for d in deg.values() if d == 1) == 2 * i
            assert all(g.degree(v) == 1 for v, d in deg.items() if d == 1)
            classes[(i, j)] += 1
        for (i, j), n in classes.items():
            assert n == comb(h, 2 * i) * comb(k, j)

    @pytest.mark.parametrize("h,k", [(2, 0), (1, 1), (0, 2), (4, 1), (3, 2), (2, 4)])
    def test_representatives(self, h, k):
        g = caterpillar(h, k)
        for i in range(h // 2 + 1):
            for j in range(k + 1):
                H = caterpillar_subgraph(h, k, i, j)
                assert is_internally_eulerian(g, H)
                assert classify_caterpillar_subgraph(g, H) == (i, j)


class TestIsomorphism:
    def test_star_vs_path(self, star):
        assert not are_isomorphic(star, path4())

    def test_permuted_edges(self):
        g = caterpillar(2, 4)
        perm = [12, 3, 7, 0, 9, 1, 11, 5, 2, 10, 4, 8, 6]
        assert are_isomorphic(g, permute_edges(g, perm))

    def test_relabeled_nodes(self):
        g = caterpillar(3, 2)
        relabel = {v: (v * 7 + 3) % 11 for v in g.nodes}
        h = MultiGraph.from_edges([(relabel[u], relabel[v]) for u, v in g.edges])
        assert are_isomorphic(g, h)

    def test_distinguishes_same_degrees(self):
        # both are cubic on four nodes; the second has two double edges
        other = MultiGraph.from_edges([(0, 1), (0, 1), (0, 2), (1, 3), (2, 3), (2, 3)])
        assert not are_isomorphic(k4(), other)

    def test_size_cap(self):
        big = caterpillar(2, 6)
        with pytest.raises(TooLarge):
            are_isomorphic(big, big)


class TestTextFormat:
    def test_roundtrip(self):
        g = caterpillar(2, 3)
        assert parse_g13(to_g13(g)).edges == g.edges

    def test_comments_and_blank(self):
        g = parse_g13("# dumbbell\n\n0 0\n1 1\n  0 1  \n")
        assert g.edges == ((0, 0), (1, 1), (0, 1))

    @pytest.mark.parametrize("text", ["0 1 2\n", "a b\n", "-1 0\n"])
    def test_malformed(self, text):
        with pytest.raises(MalformedGraph):
            parse_g13(text)
