from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations, product
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrgraph.errors import InvalidShape, NotEulerian, NotTree, OddLeafSet, PointOutside
from ehrgraph.families import all_trees, dumbbell, random_tree
from ehrgraph.multigraph import MultiGraph, caterpillar, is_internally_eulerian
from ehrgraph.polytopes import build_q_system, contains
from ehrgraph.trees import (
    complete_from_leaves,
    is_leaf_path,
    isometry_apply,
    leaf_path_collections,
    skeleton,
    skeleton_adjacent,
    tree_vertices_p,
    tree_vertices_q,
)

H = F(1, 2)
TREES = all_trees(9)


def split_sides(T: MultiGraph, e: int) -> set[int]:
    """Nodes on the first end's side after deleting edge e."""
    start = T.edges[e][0]
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for f in T.incidence(v):
            if f == e:
                continue
            y = T.other_end(f, v)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def tjoin_oracle(T: MultiGraph, marked_leaves: set[int]) -> tuple[F, ...]:
    """Edge e is used iff it separates an odd number of marked leaves."""
    out = []
    for e in range(T.m):
        side = split_sides(T, e)
        out.append(H if len(side & marked_leaves) % 2 else F(0))
    return tuple(out)


def p_rows(T: MultiGraph) -> list[tuple[list[int], int]]:
    """Rows (a, b) of a x <= b describing P_T."""
    rows = []
    for e in range(T.m):
        a = [0] * T.m
        a[e] = -1
        rows.append((a, 0))
    for v in T.internal_nodes:
        inc = T.incidence(v)
        for i in inc:
            a = [0] * T.m
            for j in inc:
                a[j] += 1 if j == i else -1
            rows.append((a, 0))
        a = [0] * T.m
        for j in inc:
            a[j] += 1
        rows.append((a, 1))
    if T.m == 1:
        rows.append(([2], 1))
    return rows


def brute_vertices(T: MultiGraph) -> set[tuple[F, ...]]:
    """{0, 1/2}-points of P_T whose tight rows have full rank."""
    rows = p_rows(T)
    out = set()
    for x in product((F(0), H), repeat=T.m):
        vals = [sum(c * xi for c, xi in zip(a, x)) for a, _ in rows]
        if any(v > b for v, (_, b) in zip(vals, rows)):
            continue
        tight = [a for v, (a, b) in zip(vals, rows) if v == b]
        if tight and np.linalg.matrix_rank(np.array(tight, dtype=float)) == T.m:
            out.add(x)
    return out


class TestCompleteFromLeaves:
    def test_star(self, star):
        assert complete_from_leaves(star, {0, 1}) == (H, H, 0)
        assert complete_from_leaves(star, set()) == (0, 0, 0)

    def test_single_edge(self, single_edge):
        assert complete_from_leaves(single_edge, {0}) == (H,)
        assert complete_from_leaves(single_edge, set()) == (0,)

    def test_caterpillar_stems(self):
        T = caterpillar(4, 0)
        # legs 0 and 1 both hang from central node 0
        legs = [e for e in range(T.m) if T.edges[e][0] == 0 and T.degree(T.edges[e][1]) == 1]
        x = complete_from_leaves(T, set(legs[:2]))
        assert {e for e, v in enumerate(x) if v} == set(legs[:2])

    def test_odd(self, star):
        with pytest.raises(OddLeafSet):
            complete_from_leaves(star, {0})

    def test_rejects_non_leaf_edge(self):
        T = caterpillar(4, 0)
        inner = next(e for e in range(T.m) if all(T.degree(v) == 3 for v in T.edges[e]))
        with pytest.raises(InvalidShape):
            complete_from_leaves(T, {inner})

    def test_rejects_non_tree(self):
        with pytest.raises(NotTree):
            complete_from_leaves(dumbbell(), set())

    @pytest.mark.parametrize("T", TREES, ids=lambda T: f"m{T.m}")
    def test_matches_tjoin(self, T):
        leaves = T.leaves
        for r in range(0, len(leaves) + 1, 2):
            for chosen in combinations(leaves, r):
                edges = {T.incidence(v)[0] for v in chosen}
                assert complete_from_leaves(T, edges) == tjoin_oracle(T, set(chosen))


class TestVertices:
    def test_star_p(self, star):
        assert set(tree_vertices_p(star)) == {(0, 0, 0), (H, H, 0), (0, H, H), (H, 0, H)}

    def test_star_q(self, star):
        assert {(p.w, p.z) for p in tree_vertices_q(star)} == {
            ((0, 0, 0), (0,)),
            ((1, 1, 0), (1,)),
            ((0, 1, 1), (1,)),
            ((1, 0, 1), (1,)),
        }

    def test_single_edge(self, single_edge):
        assert set(tree_vertices_p(single_edge)) == {(0,), (H,)}
        assert [p.w for p in tree_vertices_q(single_edge)] == [(0,), (1,)]

    def test_seven_edges(self):
        for T in all_trees(7):
            if T.m == 7:
                assert len(tree_vertices_p(T)) == 16

    @pytest.mark.parametrize("T", all_trees(7), ids=lambda T: f"m{T.m}")
    def test_brute_force_vertices(self, T):
        assert set(tree_vertices_p(T)) == brute_vertices(T)

    @pytest.mark.parametrize("T", TREES, ids=lambda T: f"m{T.m}")
    def test_vertex_properties(self, T):
        verts = tree_vertices_p(T)
        assert len(verts) == 2 ** ((T.m + 1) // 2) == 2 ** (len(T.leaves) - 1)
        assert len(set(verts)) == len(verts)
        assert all(2 * x in (0, 1) for v in verts for x in v)
        q = build_q_system(T)
        for p in tree_vertices_q(T):
            assert contains(q, 1, p)
            assert is_internally_eulerian(T, {e for e, x in enumerate(p.w) if x})

    @pytest.mark.parametrize("T", TREES, ids=lambda T: f"m{T.m}")
    def test_supporting_functional(self, T):
        verts = tree_vertices_p(T)
        leaf_edges = [T.incidence(v)[0] for v in T.leaves]
        for v in verts:
            X = {e for e in leaf_edges if v[e]}
            score = [2 * sum(u[e] for e in X) - 2 * sum(u[e] for e in set(leaf_edges) - X) for u in verts]
            assert score[verts.index(v)] == len(X)
            assert sum(1 for s in score if s == len(X)) == 1
            assert max(score) == len(X)


class TestSkeleton:
    def test_star_examples(self, star):
        assert skeleton_adjacent(star, {0, 1}, set())
        assert skeleton_adjacent(star, {0, 1}, {1, 2})

    def test_not_leaf_path(self):
        T = caterpillar(4, 0)
        verts = leaf_path_collections(T)
        two_paths = next(v for v in verts if len(v) == 4)
        assert not skeleton_adjacent(T, two_paths, set())
        assert not is_leaf_path(T, set())

    def test_seven_edge_degree(self):
        for T in all_trees(7):
            if len(T.leaves) == 5:
                verts, pairs = skeleton(T)
                deg = [0] * len(verts)
                for i, j in pairs:
                    deg[i] += 1
                    deg[j] += 1
                assert set(deg) == {10}

    @pytest.mark.parametrize("T", TREES, ids=lambda T: f"m{T.m}")
    def test_regular(self, T):
        verts, pairs = skeleton(T)
        deg = [0] * len(verts)
        for i, j in pairs:
            deg[i] += 1
            deg[j] += 1
        assert set(deg) == {comb(len(T.leaves), 2)}


class TestIsometry:
    def test_identity(self, star):
        assert isometry_apply(star, set(), (H, 0, H)) == (H, 0, H)

    def test_origin_to_vertex(self, star):
        assert isometry_apply(star, {0, 1}, (0, 0, 0)) == (H, H, 0)

    def test_errors(self, star):
        with pytest.raises(PointOutside):
            isometry_apply(star, set(), (1, 0, 0))
        with pytest.raises(NotEulerian):
            isometry_apply(star, {0}, (0, 0, 0))

    @pytest.mark.parametrize("T", all_trees(7), ids=lambda T: f"m{T.m}")
    def test_permutes_vertices(self, T):
        verts = tree_vertices_p(T)
        vset = set(verts)
        for Hs in leaf_path_collections(T):
            images = [isometry_apply(T, Hs, v) for v in verts]
            assert set(images) == vset
            assert isometry_apply(T, Hs, (F(0),) * T.m) == tuple(H if e in Hs else 0 for e in range(T.m))
            for Hv, img in zip(leaf_path_collections(T), (isometry_apply(T, Hs, v) for v in tree_vertices_p(T))):
                assert img == tuple(H if e in (Hs ^ Hv) else 0 for e in range(T.m))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), m=st.sampled_from([3, 5, 7, 9]), data=st.data())
def test_isometry_is_involutive_distance_preserving(seed, m, data):
    import random

    T = random_tree(m, random.Random(seed))
    Hs = data.draw(st.sampled_from(leaf_path_collections(T)))
    # random point of P_T as a convex combination of two vertices
    verts = tree_vertices_p(T)
    u, v = data.draw(st.sampled_from(verts)), data.draw(st.sampled_from(verts))
    lam = F(data.draw(st.integers(0, 8)), 8)
    x = tuple(lam * a + (1 - lam) * b for a, b in zip(u, v))
    y = isometry_apply(T, Hs, x)
    assert isometry_apply(T, Hs, y) == x
    hu, hv = isometry_apply(T, Hs, u), isometry_apply(T, Hs, v)
    assert sum((a - b) ** 2 for a, b in zip(hu, hv)) == sum((a - b) ** 2 for a, b in zip(u, v))
