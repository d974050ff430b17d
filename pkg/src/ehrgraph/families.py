"""Named graphs and exhaustive or random generators of {1,3}-graphs."""

from __future__ import annotations

import random
from collections import deque

from .errors import InvalidShape
from .multigraph import MultiGraph, are_isomorphic, caterpillar, invariant_signature


def dumbbell() -> MultiGraph:
    """Two loops joined by a bridge: edges 0, 1 are loops at nodes 0, 1."""
    return caterpillar(0, 2)


def star() -> MultiGraph:
    """K_{1,3} with centre 0 and leaves 1, 2, 3."""
    return MultiGraph.from_edges([(0, 1), (0, 2), (0, 3)])


def single_edge() -> MultiGraph:
    return MultiGraph.from_edges([(0, 1)])


def path4() -> MultiGraph:
    return MultiGraph.from_edges([(0, 1), (1, 2), (2, 3)])


def triangle() -> MultiGraph:
    return MultiGraph.from_edges([(0, 1), (1, 2), (0, 2)])


def theta() -> MultiGraph:
    """Two nodes joined by three parallel edges."""
    return MultiGraph.from_edges([(0, 1), (0, 1), (0, 1)])


def k4() -> MultiGraph:
    return MultiGraph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def cube() -> MultiGraph:
    edges = []
    for v in range(8):
        for bit in (1, 2, 4):
            if v < v ^ bit:
                edges.append((v, v ^ bit))
    return MultiGraph.from_edges(edges)


class IsoClasses:
    """Accumulates graphs, keeping one representative per isomorphism class."""

    def __init__(self):
        self._buckets: dict[tuple, list[MultiGraph]] = {}
        self.items: list[MultiGraph] = []

    def add(self, g: MultiGraph) -> bool:
        bucket = self._buckets.setdefault(invariant_signature(g), [])
        if any(are_isomorphic(g, h) for h in bucket):
            return False
        bucket.append(g)
        self.items.append(g)
        return True


def _expand_leaf(g: MultiGraph, leaf: int) -> MultiGraph:
    """Turn ``leaf`` into an internal node carrying two new leaves."""
    nxt = max(g.nodes) + 1
    return MultiGraph(g.nodes + (nxt, nxt + 1), g.edges + ((leaf, nxt), (leaf, nxt + 1)))


def all_trees(max_edges: int) -> list[MultiGraph]:
    """Every {1,3}-tree with at most ``max_edges`` edges, up to isomorphism."""
    if max_edges < 1:
        return []
    level = [single_edge()]
    out = list(level)
    while level and level[0].m + 2 <= max_edges:
        classes = IsoClasses()
        for g in level:
            for leaf in g.leaves:
                classes.add(_expand_leaf(g, leaf))
        level = classes.items
        out += level
    return out


def random_tree(m: int, rng: random.Random) -> MultiGraph:
    """Random {1,3}-tree with ``m`` edges (``m`` odd) by random leaf expansion."""
    if m < 1 or m % 2 == 0:
        raise InvalidShape("{1,3}-trees have an odd number of edges")
    g = single_edge()
    while g.m < m:
        g = _expand_leaf(g, rng.choice(g.leaves))
    return g


def _multigraphs_with_degrees(residual: list[int]) -> list[list[tuple[int, int]]]:
    """Labeled multigraphs (loops count 2) realizing ``residual`` degrees."""
    n = len(residual)
    out = []
    rem = list(residual)
    edges: list[tuple[int, int]] = []

    def rec(last_partner: dict[int, int]):
        u = next((i for i in range(n) if rem[i] > 0), None)
        if u is None:
            out.append(list(edges))
            return
        start = last_partner.get(u, u)
        for v in range(start, n):
            need = 2 if v == u else 1
            if rem[v] < need or (v == u and rem[u] < 2):
                continue
            if v != u and rem[u] < 1:
                continue
            rem[u] -= 1
            rem[v] -= 1
            edges.append((u, v))
            rec({**last_partner, u: v})
            edges.pop()
            rem[u] += 1
            rem[v] += 1

    rec({})
    return out


def _connected(n: int, edges: list[tuple[int, int]]) -> bool:
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == n


def connected_13_graphs(m: int) -> list[MultiGraph]:
    """Connected {1,3}-graphs with exactly ``m`` edges, up to isomorphism."""
    if m < 1:
        return []
    if m == 1:
        return [single_edge()]
    classes = IsoClasses()
    for internal in range(1, 2 * m // 3 + 1):
        leaves = 2 * m - 3 * internal
        if leaves < 0 or internal + leaves - 1 > m:
            continue
        # nonincreasing leaf counts per internal node, each at most 3
        def splits(remaining: int, slots: int, cap: int):
            if slots == 0:
                if remaining == 0:
                    yield []
                return
            for x in range(min(cap, remaining, 3), -1, -1):
                for rest in splits(remaining - x, slots - 1, x):
                    yield [x] + rest

        for split in splits(leaves, internal, 3):
            residual = [3 - x for x in split]
            for core in _multigraphs_with_degrees(residual):
                if not _connected(internal, core):
                    continue
                edges = list(core)
                nxt = internal
                for v, x in enumerate(split):
                    for _ in range(x):
                        edges.append((v, nxt))
                        nxt += 1
                classes.add(MultiGraph.from_edges(edges, nodes=range(nxt)))
    return classes.items


def all_connected_13(max_edges: int) -> list[MultiGraph]:
    out = []
    for m in range(1, max_edges + 1):
        out += connected_13_graphs(m)
    return out
