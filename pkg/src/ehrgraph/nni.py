"""Nearest-neighbour interchange moves and their action on lattice points.

A trail ``(a, e, b, side)`` names a pivot edge ``e`` with sorted ends
``(p0, p1)``.  Edge ``a`` is attached at ``x = (p0, p1)[side]`` and ``b`` at
the opposite end ``y``.  The move detaches ``a`` from ``x`` and reattaches it
at ``y``, and detaches ``b`` from ``y`` and reattaches it at ``x``.  The
leftover slots ``c`` (at ``x``) and ``d`` (at ``y``) stay in place; ``c``
may be ``a`` itself when ``a`` is a loop.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from itertools import count as _counter
from typing import Iterable

from .errors import (
    CanonicalizationFailed,
    InvalidTrail,
    NotEulerian,
    PointNotInQ,
    TooLarge,
)
from .multigraph import (
    MultiGraph,
    are_isomorphic,
    caterpillar,
    invariant_signature,
    is_internally_eulerian,
    require_connected_13,
    require_13,
)
from .polytopes import QPoint

NEIGHBOR_EDGE_CAP = 12
BFS_STATE_CAP = 200_000


@dataclass(frozen=True, order=True)
class NNITrail:
    a: int
    e: int
    b: int
    side: int = 0

    def mirrored(self) -> "NNITrail":
        """Trail undoing this move on the resulting graph."""
        return NNITrail(self.b, self.e, self.a, self.side)

    def to_text(self) -> str:
        return f"nni {self.a} {self.e} {self.b} {self.side}"

    @classmethod
    def parse(cls, text: str) -> "NNITrail":
        parts = text.split()
        if parts and parts[0] == "nni":
            parts = parts[1:]
        if len(parts) != 4:
            raise InvalidTrail(f"expected 'a e b side', got {text!r}")
        try:
            a, e, b, side = (int(p) for p in parts)
        except ValueError as exc:
            raise InvalidTrail(f"non-integer field in {text!r}") from exc
        return cls(a, e, b, side)


@dataclass(frozen=True)
class ResolvedTrail:
    trail: NNITrail
    x: int  # pivot end holding a
    y: int  # pivot end holding b
    c: int  # other edge slot at x
    d: int  # other edge slot at y


def _remove_once(items: list[int], value: int) -> bool:
    try:
        items.remove(value)
        return True
    except ValueError:
        return False


def resolve(g: MultiGraph, trail: NNITrail) -> ResolvedTrail:
    """Validate ``trail`` in ``g`` and find the pivot ends and slots c, d."""
    a, e, b, side = trail.a, trail.e, trail.b, trail.side
    if side not in (0, 1):
        raise InvalidTrail("side must be 0 or 1")
    if not all(0 <= f < g.m for f in (a, e, b)):
        raise InvalidTrail("edge ID out of range")
    if len({a, e, b}) != 3:
        raise InvalidTrail("trail edges must be distinct")
    if g.is_loop(e):
        raise InvalidTrail("pivot edge cannot be a loop")
    ends = g.edges[e]
    x, y = ends[side], ends[1 - side]
    if g.degree(x) != 3 or g.degree(y) != 3:
        raise InvalidTrail("both pivot ends must be internal nodes")
    at_x, at_y = list(g.incidence(x)), list(g.incidence(y))
    _remove_once(at_x, e)
    _remove_once(at_y, e)
    if not _remove_once(at_x, a):
        raise InvalidTrail(f"edge {a} is not incident to node {x}")
    if not _remove_once(at_y, b):
        raise InvalidTrail(f"edge {b} is not incident to node {y}")
    return ResolvedTrail(trail, x, y, at_x[0], at_y[0])


def _move_end(edge: tuple[int, int], old: int, new: int) -> tuple[int, int]:
    u, v = edge
    if u == old:
        u = new
    else:
        v = new
    return (min(u, v), max(u, v))


def apply_nni(g: MultiGraph, trail: NNITrail) -> MultiGraph:
    """Graph after the move; node set and edge IDs are unchanged."""
    r = resolve(g, trail)
    edges = list(g.edges)
    edges[trail.a] = _move_end(edges[trail.a], r.x, r.y)
    edges[trail.b] = _move_end(edges[trail.b], r.y, r.x)
    return MultiGraph(g.nodes, tuple(edges))


def nni_trails(g: MultiGraph) -> list[NNITrail]:
    """Every valid trail, one per resulting move (``side`` fixed to 0)."""
    require_13(g)
    out = set()
    for e in range(g.m):
        if g.is_loop(e):
            continue
        x, y = g.edges[e]
        if g.degree(x) != 3 or g.degree(y) != 3:
            continue
        for a in set(g.incidence(x)) - {e}:
            for b in set(g.incidence(y)) - {e, a}:
                out.add(NNITrail(a, e, b, 0))
    return sorted(out)


def nni_neighbors(g: MultiGraph) -> list[MultiGraph]:
    """Graphs one move away, deduplicated by identical labeled edge lists."""
    if g.m > NEIGHBOR_EDGE_CAP:
        raise TooLarge(f"neighbour enumeration limited to {NEIGHBOR_EDGE_CAP} edges")
    seen, out = set(), []
    for trail in nni_trails(g):
        h = apply_nni(g, trail)
        if h.edges not in seen:
            seen.add(h.edges)
            out.append(h)
    return out


# -- weighted moves ---------------------------------------------------------


def _check_q_point(g: MultiGraph, point: QPoint) -> None:
    w, z = tuple(point.w), tuple(point.z)
    internal = g.internal_nodes
    if len(w) != g.m or len(z) != len(internal):
        raise PointNotInQ("point dimensions do not match the graph")
    if any(x < 0 for x in w):
        raise PointNotInQ("negative edge weight")
    for v, zv in zip(internal, z):
        vals = [w[e] for e in g.incidence(v)]
        if sum(vals) != 2 * zv or 2 * max(vals) > sum(vals):
            raise PointNotInQ(f"constraints at node {v} fail")


def weighted_nni(g: MultiGraph, trail: NNITrail, point: QPoint) -> QPoint:
    """Transport ``point`` of tQ_G to the graph ``apply_nni(g, trail)``.

    Only the pivot weight changes:
    ``w'_e = w_e + max(w_a + w_c, w_b + w_d) - max(w_b + w_c, w_a + w_d)``.
    """
    require_13(g)
    _check_q_point(g, point)
    r = resolve(g, trail)
    w = list(point.w)
    wa, wb, wc, wd, we = (w[f] for f in (trail.a, trail.b, r.c, r.d, trail.e))
    w[trail.e] = we + max(wa + wc, wb + wd) - max(wb + wc, wa + wd)
    new_g = apply_nni(g, trail)
    z = dict(zip(g.internal_nodes, point.z))
    z[r.x] = (w[trail.b] + w[r.c] + w[trail.e]) // 2
    z[r.y] = (w[trail.a] + w[r.d] + w[trail.e]) // 2
    return QPoint(tuple(w), tuple(z[v] for v in new_g.internal_nodes))


def induced_eulerian(g: MultiGraph, trail: NNITrail, H: Iterable[int]) -> frozenset:
    """Odd-edge set of the image of the witness point (1_H, half-sums)."""
    hs = frozenset(H)
    if not is_internally_eulerian(g, hs):
        raise NotEulerian(f"edge set {sorted(hs)} is not internally Eulerian")
    w = tuple(1 if e in hs else 0 for e in range(g.m))
    z = tuple(sum(w[e] for e in g.incidence(v)) // 2 for v in g.internal_nodes)
    image = weighted_nni(g, trail, QPoint(w, z))
    return frozenset(e for e, x in enumerate(image.w) if x % 2)


# -- canonicalization -------------------------------------------------------


def _bridges(g: MultiGraph) -> set[int]:
    """Edge IDs whose removal disconnects their component."""
    out = set()
    for e in range(g.m):
        if g.is_loop(e):
            continue
        u, v = g.edges[e]
        seen = {u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for f in g.incidence(x):
                if f == e:
                    continue
                y = g.other_end(f, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if v not in seen:
            out.add(e)
    return out


def potential(g: MultiGraph) -> tuple[int, int]:
    """Lexicographic distance-like measure, (0, 0) on caterpillars.

    First entry: non-loop edges on cycles.  Second entry: internal nodes of
    the loop-free skeleton lying off its longest internal path.
    """
    bridges = _bridges(g)
    cyc = sum(1 for e in range(g.m) if not g.is_loop(e) and e not in bridges)
    if cyc:
        return (cyc, 0)
    # nodes carrying a loop act as leaves of the skeleton tree
    core = [v for v in g.internal_nodes if not any(g.is_loop(e) for e in g.incidence(v))]
    core_set = set(core)
    adj = {v: [g.other_end(e, v) for e in g.incidence(v) if g.other_end(e, v) in core_set] for v in core}

    def far(s: int) -> tuple[int, int]:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        node = max(dist, key=lambda k: (dist[k], -k))
        return node, dist[node]

    if not core:
        return (0, 0)
    end, _ = far(core[0])
    _, diameter = far(end)
    return (0, len(core) - (diameter + 1))


class _IsoIndex:
    def __init__(self):
        self.buckets: dict[tuple, list[MultiGraph]] = {}

    def add_if_new(self, g: MultiGraph) -> bool:
        key = invariant_signature(g)
        bucket = self.buckets.setdefault(key, [])
        if any(are_isomorphic(g, other) for other in bucket):
            return False
        bucket.append(g)
        return True


def canonicalize(g: MultiGraph, state_cap: int = BFS_STATE_CAP) -> tuple[MultiGraph, list[NNITrail]]:
    """Reach a graph isomorphic to ``caterpillar(h, k)`` by NNI moves.

    Best-first search ordered by :func:`potential` (greedy descent), falling
    back to breadth-first order among ties; states are deduplicated up to
    isomorphism.  Every returned graph is checked with ``are_isomorphic``.

    Raises:
        CanonicalizationFailed: if the search exhausts ``state_cap`` states.
    """
    stats = require_connected_13(g)
    target = caterpillar(stats.h, stats.k)
    if g.m > NEIGHBOR_EDGE_CAP:
        raise TooLarge(f"canonicalization limited to {NEIGHBOR_EDGE_CAP} edges")
    if are_isomorphic(g, target):
        return g, []
    index = _IsoIndex()
    index.add_if_new(g)
    tie = _counter()
    heap = [(potential(g), next(tie), g, ())]
    explored = 0
    while heap:
        _, _, cur, moves = heapq.heappop(heap)
        explored += 1
        if explored > state_cap:
            break
        for trail in nni_trails(cur):
            nxt = apply_nni(cur, trail)
            if not index.add_if_new(nxt):
                continue
            path = moves + (trail,)
            if are_isomorphic(nxt, target):
                return nxt, list(path)
            heapq.heappush(heap, (potential(nxt), next(tie), nxt, path))
    raise CanonicalizationFailed(f"no caterpillar reached for (h, k) = ({stats.h}, {stats.k})")


def replay(g: MultiGraph, moves: Iterable[NNITrail]) -> MultiGraph:
    for trail in moves:
        g = apply_nni(g, trail)
    return g
