"""Multigraphs with loops and parallel edges, and their {1,3} structure.

Edges are identified by their position in ``MultiGraph.edges``; these IDs
index the coordinates of every polytope built from the graph, so they are
never renumbered by any operation in this module.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    InvalidShape,
    MalformedGraph,
    NotOneThree,
    TooLarge,
)

EdgeSubset = frozenset  # frozenset[int] of edge IDs

ISO_EDGE_CAP = 16


@dataclass(frozen=True)
class MultiGraph:
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise MalformedGraph("duplicate node IDs")
        if any(v < 0 for v in self.nodes):
            raise MalformedGraph("node IDs must be nonnegative")
        for i, (u, v) in enumerate(self.edges):
            if u not in node_set or v not in node_set:
                raise MalformedGraph(f"edge {i} = ({u}, {v}) references a missing node")

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], nodes: Iterable[int] | None = None) -> "MultiGraph":
        norm = tuple((min(u, v), max(u, v)) for u, v in edges)
        if nodes is None:
            nodes = sorted({x for e in norm for x in e})
        return cls(tuple(sorted(nodes)), norm)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @cached_property
    def _incidence(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.nodes}
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return {v: tuple(es) for v, es in inc.items()}

    def incidence(self, v: int) -> tuple[int, ...]:
        """Edge IDs at ``v``; a loop appears twice."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    @cached_property
    def internal_nodes(self) -> tuple[int, ...]:
        return tuple(v for v in self.nodes if self.degree(v) == 3)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in self.nodes if self.degree(v) == 1)

    @cached_property
    def leaf_edges(self) -> tuple[int, ...]:
        leaf_set = set(self.leaves)
        return tuple(i for i, (u, v) in enumerate(self.edges) if u in leaf_set or v in leaf_set)

    @cached_property
    def components(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        """Connected components as (sorted node IDs, sorted edge IDs)."""
        seen: set[int] = set()
        out = []
        for s in self.nodes:
            if s in seen:
                continue
            comp_nodes, comp_edges = [], set()
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                comp_nodes.append(x)
                for e in self._incidence[x]:
                    comp_edges.add(e)
                    y = self.other_end(e, x)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            out.append((tuple(sorted(comp_nodes)), tuple(sorted(comp_edges))))
        return tuple(out)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def component_graphs(self) -> list["MultiGraph"]:
        """One graph per component; edges renumbered in original ID order."""
        return [MultiGraph(ns, tuple(self.edges[e] for e in es)) for ns, es in self.components]

    def with_edges(self, edges: Iterable[Sequence[int]]) -> "MultiGraph":
        return MultiGraph(self.nodes, tuple((min(u, v), max(u, v)) for u, v in edges))

    def __str__(self) -> str:
        return f"MultiGraph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class GraphStats:
    h: int
    k: int
    n: int
    m: int
    connected: bool
    is_tree: bool
    is_cubic: bool
    is_13: bool


def graph_stats(g: MultiGraph) -> GraphStats:
    degrees = [g.degree(v) for v in g.nodes]
    c = len(g.components)
    k = g.m - g.n + c
    connected = c <= 1
    return GraphStats(
        h=sum(1 for d in degrees if d == 1),
        k=k,
        n=g.n,
        m=g.m,
        connected=connected,
        is_tree=connected and k == 0,
        is_cubic=bool(degrees) and all(d == 3 for d in degrees),
        is_13=all(d in (1, 3) for d in degrees),
    )


def validate_13(g: MultiGraph) -> GraphStats:
    """Structural statistics of ``g``.

    ``h`` counts degree-1 nodes, which equals the number of leaf-edges except
    for a lone edge, where both ends are leaves (h = 2).  Degree violations
    are reported through ``is_13`` rather than raised.
    """
    return graph_stats(g)


def require_13(g: MultiGraph) -> GraphStats:
    stats = graph_stats(g)
    if not stats.is_13:
        bad = [v for v in g.nodes if g.degree(v) not in (1, 3)]
        raise NotOneThree(f"nodes {bad} have degree outside {{1,3}}")
    return stats


def require_connected_13(g: MultiGraph) -> GraphStats:
    stats = require_13(g)
    if not stats.connected:
        raise Disconnected("graph must be connected")
    return stats


# -- Eulerian subgraphs -----------------------------------------------------


def _gf2_kernel(rows: list[int], m: int) -> list[int]:
    """Basis of {x in GF(2)^m : <row, x> = 0 for every row}, as bitmasks."""
    pivots: dict[int, int] = {}
    for r in rows:
        for col, prow in pivots.items():
            if r >> col & 1:
                r ^= prow
        if not r:
            continue
        col = r.bit_length() - 1
        for c2 in list(pivots):
            if pivots[c2] >> col & 1:
                pivots[c2] ^= r
        pivots[col] = r
    basis = []
    for free in range(m):
        if free in pivots:
            continue
        x = 1 << free
        for col, prow in pivots.items():
            if prow >> free & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def _parity_rows(g: MultiGraph, nodes: Iterable[int]) -> list[int]:
    rows = []
    for v in nodes:
        r = 0
        for e in g.incidence(v):
            r ^= 1 << e  # a loop toggles twice and cancels
        rows.append(r)
    return rows


def _span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def _mask_to_subset(mask: int) -> EdgeSubset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _subset_key(s: frozenset) -> tuple:
    return (len(s), tuple(sorted(s)))


def is_internally_eulerian(g: MultiGraph, subset: Iterable[int]) -> bool:
    sub = set(subset)
    if any(e < 0 or e >= g.m for e in sub):
        return False
    return all(sum(1 for e in g.incidence(v) if e in sub) in (0, 2) for v in g.internal_nodes)


def enumerate_internally_eulerian(g: MultiGraph) -> list[EdgeSubset]:
    """All edge sets with H-degree 0 or 2 at every internal node of ``g``.

    At a degree-3 node "even" and "0 or 2" coincide, so the sets form the
    kernel of the internal-node incidence matrix over GF(2).
    """
    require_connected_13(g)
    basis = _gf2_kernel(_parity_rows(g, g.internal_nodes), g.m)
    return sorted((_mask_to_subset(x) for x in _span(basis)), key=_subset_key)


def eulerian_count_formula(stats: GraphStats) -> int:
    if stats.h == 0:
        return 2 ** stats.k
    return 2 ** (stats.k + stats.h - 1)


def count_eulerian_subgraphs(g: MultiGraph) -> int:
    """Number of edge subsets with even degree at every node (any degrees)."""
    if not g.is_connected:
        raise Disconnected("graph must be connected")
    basis = _gf2_kernel(_parity_rows(g, g.nodes), g.m)
    return 2 ** len(basis)


# -- caterpillars -----------------------------------------------------------


def caterpillar(h: int, k: int) -> MultiGraph:
    """The (h,k)-caterpillar whose loop legs are consecutive.

    Numbering, for L = h + k legs:

    * L = 2: nodes 0 and 1 joined by edge ``k``; loops (edges 0..k-1) sit
      on node 0, then node 1.
    * L >= 3: central path nodes 0..L-3 left to right, then leg nodes
      L-2..2L-3.  Leg j hangs from central node max(0, min(j-1, L-3)), so
      the two end nodes of the path carry two legs each.  Legs 0..k-1 are
      the loop legs.

    Edges are the k loops (leg order), then the L legs (leg order), then the
    central path edges left to right.
    """
    if h < 0 or k < 0:
        raise InvalidShape("h and k must be nonnegative")
    legs = h + k
    if legs < 2:
        raise InvalidShape(f"(h, k) = ({h}, {k}) needs h + k >= 2")
    if legs == 2:
        leg_nodes = [0, 1]
        edges = [(leg_nodes[j], leg_nodes[j]) for j in range(k)] + [(0, 1)]
        return MultiGraph.from_edges(edges, nodes=[0, 1])
    path_len = legs - 2
    leg_nodes = [path_len + j for j in range(legs)]
    edges = [(leg_nodes[j], leg_nodes[j]) for j in range(k)]
    for j in range(legs):
        anchor = max(0, min(j - 1, path_len - 1))
        edges.append((anchor, leg_nodes[j]))
    edges += [(i, i + 1) for i in range(path_len - 1)]
    return MultiGraph.from_edges(edges, nodes=range(2 * legs - 2))


# -- isomorphism ------------------------------------------------------------


def _multiplicity(g: MultiGraph) -> Counter:
    return Counter(g.edges)


def _refined_colors(g: MultiGraph, rounds: int = 3) -> dict[int, int]:
    mult = _multiplicity(g)
    nbrs: dict[int, list[tuple[int, int]]] = {v: [] for v in g.nodes}
    for (u, v), c in mult.items():
        if u != v:
            nbrs[u].append((v, c))
            nbrs[v].append((u, c))
    color = {v: hash((g.degree(v), mult.get((v, v), 0))) for v in g.nodes}
    for _ in range(rounds):
        color = {v: hash((color[v], tuple(sorted((color[w], c) for w, c in nbrs[v])))) for v in g.nodes}
    return color


def invariant_signature(g: MultiGraph) -> tuple:
    """Isomorphism invariant used to bucket graphs before exact tests."""
    return (g.n, g.m, tuple(sorted(Counter(_refined_colors(g).values()).items())))


def are_isomorphic(g1: MultiGraph, g2: MultiGraph) -> bool:
    """Multigraph isomorphism by backtracking over refined node colours."""
    if g1.m > ISO_EDGE_CAP or g2.m > ISO_EDGE_CAP:
        raise TooLarge(f"isomorphism test limited to {ISO_EDGE_CAP} edges")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    c1, c2 = _refined_colors(g1), _refined_colors(g2)
    if sorted(c1.values()) != sorted(c2.values()):
        return False
    m1, m2 = _multiplicity(g1), _multiplicity(g2)

    def mult(table: Counter, u: int, v: int) -> int:
        return table.get((min(u, v), max(u, v)), 0)

    # visit g1 nodes in BFS order so each new node is adjacent to mapped ones
    order: list[int] = []
    for comp_nodes, _ in g1.components:
        start = comp_nodes[0]
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            order.append(x)
            for e in g1.incidence(x):
                y = g1.other_end(e, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    by_color: dict[int, list[int]] = {}
    for v in g2.nodes:
        by_color.setdefault(c2[v], []).append(v)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        x = order[pos]
        for y in by_color.get(c1[x], ()):
            if y in used or mult(m1, x, x) != mult(m2, y, y):
                continue
            if any(mult(m1, x, a) != mult(m2, y, b) for a, b in mapping.items()):
                continue
            mapping[x] = y
            used.add(y)
            if extend(pos + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return extend(0)


def permute_edges(g: MultiGraph, perm: Sequence[int]) -> MultiGraph:
    """Graph whose edge i is edge ``perm[i]`` of ``g``."""
    return MultiGraph(g.nodes, tuple(g.edges[p] for p in perm))


# -- text format ------------------------------------------------------------


def parse_g13(text: str) -> MultiGraph:
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedGraph(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedGraph(f"line {lineno}: non-integer node ID") from exc
        if u < 0 or v < 0:
            raise MalformedGraph(f"line {lineno}: node IDs must be nonnegative")
        edges.append((u, v))
    return MultiGraph.from_edges(edges)


def load_g13(path: str | Path) -> MultiGraph:
    return parse_g13(Path(path).read_text(encoding="utf-8"))


def to_g13(g: MultiGraph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def simple_subsets(m: int) -> Iterable[frozenset]:
    """Every subset of range(m), smallest first (brute-force helper)."""
    for r in range(m + 1):
        for c in combinations(range(m), r):
            yield frozenset(c)


def _path_edges(g: MultiGraph, src: int, dst: int) -> list[int]:
    """Edge IDs of a loop-free path from ``src`` to ``dst`` (BFS, first found)."""
    prev: dict[int, tuple[int, int] | None] = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for e in g.incidence(x):
            if g.is_loop(e):
                continue
            y = g.other_end(e, x)
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    if dst not in prev:
        raise Disconnected(f"no path between {src} and {dst}")
    out = []
    node = dst
    while prev[node] is not None:
        node, e = prev[node]
        out.append(e)
    return out[::-1]


def caterpillar_subgraph(h: int, k: int, i: int, j: int) -> EdgeSubset:
    """Representative H_{i,j} of ``caterpillar(h, k)``.

    The i leaf-paths join consecutive leaf legs (first with second, third
    with fourth, ...); the j loops are the first j loop legs.
    """
    if 2 * i > h or j > k or i < 0 or j < 0:
        raise InvalidShape(f"H_{{{i},{j}}} does not exist in G_{{{h},{k}}}")
    g = caterpillar(h, k)
    leaf_list = [v for v in g.leaves]
    # leaf legs are numbered after the loop legs, in leg order
    legs = sorted(leaf_list)
    out: set[int] = set(range(j))
    for p in range(i):
        out.update(_path_edges(g, legs[2 * p], legs[2 * p + 1]))
    return frozenset(out)


def classify_caterpillar_subgraph(g: MultiGraph, H: Iterable[int]) -> tuple[int, int]:
    """(number of leaf-paths, number of loops) of an internally Eulerian H."""
    hs = set(H)
    loops = sum(1 for e in hs if g.is_loop(e))
    ends = sum(1 for v in g.leaves for e in g.incidence(v) if e in hs)
    return ends // 2, loops
