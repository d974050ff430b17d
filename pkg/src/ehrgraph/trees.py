"""Vertices, skeleton and isometries of P_T and Q_T for {1,3}-trees."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidShape, NotEulerian, NotTree, OddLeafSet, PointOutside
from .multigraph import MultiGraph, is_internally_eulerian, require_13
from .polytopes import QPoint

HALF = Fraction(1, 2)


def _require_tree(T: MultiGraph) -> None:
    if not require_13(T).is_tree:
        raise NotTree("input must be a {1,3}-tree")


def _leaf_nodes_of(T: MultiGraph, X: Iterable[int]) -> set[int]:
    """Leaf nodes touched by the leaf-edges in ``X`` (both ends of a lone edge)."""
    leaves = set(T.leaves)
    out = set()
    for e in X:
        if not 0 <= e < T.m:
            raise InvalidShape(f"edge {e} out of range")
        ends = {x for x in T.edges[e] if x in leaves}
        if not ends:
            raise InvalidShape(f"edge {e} is not a leaf-edge")
        out |= ends
    return out


def complete_from_leaves(T: MultiGraph, X: Iterable[int]) -> tuple[Fraction, ...]:
    """Unique {0, 1/2}-point of P_T that is 1/2 exactly on the leaf-edges ``X``.

    Cherries (internal nodes next to two current leaves) are pruned one at
    a time; the pruned node becomes a leaf whose flag is the XOR of its two
    children's flags, which fixes the value on its remaining edge.

    Raises:
        OddLeafSet: if ``X`` covers an odd number of leaves.
    """
    _require_tree(T)
    marked = _leaf_nodes_of(T, X)
    if len(marked) % 2:
        raise OddLeafSet("an odd set of leaves cannot be paired")
    x = [Fraction(0)] * T.m
    if T.m == 1:
        x[0] = HALF if marked else Fraction(0)
        return tuple(x)
    flag = {v: (v in marked) for v in T.leaves}
    live_edges = {v: set(T.incidence(v)) for v in T.nodes}
    degree = {v: T.degree(v) for v in T.nodes}
    current_leaves = set(T.leaves)
    while True:
        cherry = None
        for v in sorted(T.nodes):
            if v in current_leaves or degree[v] != 3:
                continue
            kids = sorted(e for e in live_edges[v] if T.other_end(e, v) in current_leaves)
            if len(kids) >= 2:
                cherry = (v, kids[:2])
                break
        if cherry is None:
            break
        v, (e1, e2) = cherry
        l1, l2 = T.other_end(e1, v), T.other_end(e2, v)
        x[e1] = HALF if flag[l1] else Fraction(0)
        x[e2] = HALF if flag[l2] else Fraction(0)
        for e, leaf in ((e1, l1), (e2, l2)):
            live_edges[v].discard(e)
            current_leaves.discard(leaf)
        degree[v] = 1
        flag[v] = flag[l1] != flag[l2]
        current_leaves.add(v)
    # a single live edge joins the last two current leaves
    (last,) = {e for v in current_leaves for e in live_edges[v]}
    u, w = T.edges[last]
    assert flag[u] == flag[w]
    x[last] = HALF if flag[u] else Fraction(0)
    return tuple(x)


def _even_leaf_subsets(T: MultiGraph) -> list[frozenset]:
    leaves = T.leaves
    out = []
    for r in range(0, len(leaves) + 1, 2):
        for c in combinations(leaves, r):
            out.append(frozenset(c))
    return out


def _leaf_edge_of(T: MultiGraph, leaf: int) -> int:
    return T.incidence(leaf)[0]


def leaf_path_collections(T: MultiGraph) -> list[frozenset]:
    """Every collection of disjoint leaf-paths, as edge sets.

    One per even subset of leaves, via :func:`complete_from_leaves`.
    """
    _require_tree(T)
    out = []
    for leaves in _even_leaf_subsets(T):
        x = complete_from_leaves(T, {_leaf_edge_of(T, v) for v in leaves})
        out.append(frozenset(e for e, val in enumerate(x) if val))
    return sorted(set(out), key=lambda s: (len(s), sorted(s)))


def tree_vertices_p(T: MultiGraph) -> list[tuple[Fraction, ...]]:
    """Vertices ``1/2 * 1_H`` of P_T over leaf-path collections H."""
    return [tuple(HALF if e in H else Fraction(0) for e in range(T.m)) for H in leaf_path_collections(T)]


def tree_vertices_q(T: MultiGraph) -> list[QPoint]:
    """Vertices ``(1_H, z)`` of Q_T; ``z_v = 1`` on internal nodes H passes through."""
    out = []
    for H in leaf_path_collections(T):
        w = tuple(1 if e in H else 0 for e in range(T.m))
        z = tuple(sum(w[e] for e in T.incidence(v)) // 2 for v in T.internal_nodes)
        out.append(QPoint(w, z))
    return out


def is_leaf_path(T: MultiGraph, edges: Iterable[int]) -> bool:
    """Whether ``edges`` form one path whose two end nodes are leaves of T."""
    es = set(edges)
    if not es:
        return False
    deg: dict[int, int] = {}
    for e in es:
        for x in T.edges[e]:
            deg[x] = deg.get(x, 0) + 1
    ends = [v for v, d in deg.items() if d == 1]
    if len(ends) != 2 or any(d not in (1, 2) for d in deg.values()):
        return False
    if any(T.degree(v) != 1 for v in ends):
        return False
    # connected
    start = ends[0]
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in T.incidence(v):
            if e in es:
                y = T.other_end(e, v)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return seen == set(deg)


def skeleton_adjacent(T: MultiGraph, H1: Iterable[int], H2: Iterable[int]) -> bool:
    """Vertices for H1 and H2 share an edge of P_T iff H1 △ H2 is a leaf-path."""
    return is_leaf_path(T, set(H1) ^ set(H2))


def skeleton(T: MultiGraph) -> tuple[list[frozenset], list[tuple[int, int]]]:
    """Vertex list (as leaf-path collections) and adjacency pairs of indices."""
    verts = leaf_path_collections(T)
    pairs = [(i, j) for i, j in combinations(range(len(verts)), 2) if skeleton_adjacent(T, verts[i], verts[j])]
    return verts, pairs


def _in_p(T: MultiGraph, x: Sequence[Fraction]) -> bool:
    if any(v < 0 for v in x):
        return False
    for v in T.internal_nodes:
        vals = [x[e] for e in T.incidence(v)]
        s = sum(vals)
        if s > 1 or 2 * max(vals) > s:
            return False
    if T.m == 1 and 2 * x[0] > 1:
        return False
    return True


def isometry_apply(T: MultiGraph, H: Iterable[int], point: Sequence) -> tuple[Fraction, ...]:
    """Reflect coordinates on H: ``x_e -> 1/2 - x_e`` for e in H."""
    _require_tree(T)
    x = tuple(Fraction(v) for v in point)
    if len(x) != T.m or not _in_p(T, x):
        raise PointOutside("point is not in P_T")
    hs = set(H)
    if not is_internally_eulerian(T, hs):
        raise NotEulerian("H must be a collection of disjoint leaf-paths")
    return tuple(HALF - v if e in hs else v for e, v in enumerate(x))
