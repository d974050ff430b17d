"""Sphere triangulations, their dual cubic graphs and arc systems.

A point of tQ_{T*} assigns to every triangulation edge a number of crossing
points.  Inside each triangle the crossings are joined by nested corner
arcs: corner ``p`` with sides ``pq`` and ``pr`` receives
``(w_pq + w_pr - w_qr) / 2`` arcs, the i-th crossing from ``p`` on ``pq``
joined to the i-th crossing from ``p`` on ``pr``.  Arcs of different corners
never interleave, so the glued system is a set of disjoint closed curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import NotSphere, PointNotInQ
from .lattice import count_q
from .multigraph import MultiGraph
from .polytopes import QPoint, build_q_system, contains, half_sums

Edge = tuple[int, int]
Crossing = tuple[int, int]  # (triangulation edge ID, 1-based position from its lower vertex)


@dataclass(frozen=True)
class Triangulation:
    vertices: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]
    edges: tuple[Edge, ...]
    edge_triangles: tuple[tuple[int, int], ...]

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def F(self) -> int:
        return len(self.triangles)

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_index[(min(u, v), max(u, v))]

    @cached_property
    def _edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}


def _sides(tri: Sequence[int]) -> list[Edge]:
    a, b, c = tri
    return [(min(a, b), max(a, b)), (min(b, c), max(b, c)), (min(a, c), max(a, c))]


def triangulation_from_triangles(triangles: Sequence[Sequence[int]]) -> Triangulation:
    """Validate a closed triangulated sphere given by its triangles.

    Raises:
        NotSphere: on degenerate triangles, edges not in exactly two
            triangles, or Euler characteristic other than 2.
    """
    tris = []
    for tri in triangles:
        tri = tuple(int(x) for x in tri)
        if len(tri) != 3 or len(set(tri)) != 3:
            raise NotSphere(f"degenerate triangle {tri}")
        tris.append(tri)
    if not tris:
        raise NotSphere("no triangles")
    edge_order: dict[Edge, list[int]] = {}
    for i, tri in enumerate(tris):
        for side in _sides(tri):
            edge_order.setdefault(side, []).append(i)
    for side, owners in edge_order.items():
        if len(owners) != 2:
            raise NotSphere(f"edge {side} lies in {len(owners)} triangles")
    vertices = tuple(sorted({x for tri in tris for x in tri}))
    V, E, F = len(vertices), len(edge_order), len(tris)
    if V - E + F != 2:
        raise NotSphere(f"Euler characteristic {V - E + F} != 2")
    edges = tuple(edge_order)
    return Triangulation(vertices, tuple(tris), edges, tuple(tuple(edge_order[e]) for e in edges))


def load_triangulation(text: str) -> Triangulation:
    """Parse the ``.tri`` format: one whitespace-separated triangle per line."""
    triangles = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise NotSphere(f"line {lineno}: expected three vertex IDs")
        try:
            triangles.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise NotSphere(f"line {lineno}: non-integer vertex ID") from exc
    return triangulation_from_triangles(triangles)


TETRAHEDRON_TRI = "0 1 2\n0 1 3\n0 2 3\n1 2 3\n"
OCTAHEDRON_TRI = "0 1 2\n0 2 3\n0 3 4\n0 4 1\n5 1 2\n5 2 3\n5 3 4\n5 4 1\n"


def dual_graph(tri: Triangulation) -> MultiGraph:
    """Node per triangle, edge per triangulation edge, same edge order."""
    return MultiGraph(tuple(range(tri.F)), tuple(tuple(sorted(owners)) for owners in tri.edge_triangles))


def count_arrangements(tri: Triangulation, t: int) -> int:
    """Number of arrangements of order at most ``t``: L^Q of the dual at t."""
    return count_q(dual_graph(tri), t)


@dataclass(frozen=True)
class TriangleArcs:
    triangle: int
    corner_counts: tuple[tuple[int, int], ...]  # (corner vertex, arc count)
    arcs: tuple[tuple[int, Crossing, Crossing], ...]  # (corner vertex, end on one side, end on the other)


@dataclass(frozen=True)
class ArcSystem:
    weights: tuple[int, ...]
    triangles: tuple[TriangleArcs, ...]

    @property
    def arcs(self) -> list[tuple[int, Crossing, Crossing]]:
        return [(ta.triangle, a, b) for ta in self.triangles for _, a, b in ta.arcs]


def _crossing(tri: Triangulation, corner: int, other: int, i: int, w: int) -> Crossing:
    """The i-th crossing (1-based) from ``corner`` on edge corner-other."""
    e = tri.edge_id(corner, other)
    return (e, i) if corner < other else (e, w - i + 1)


def _as_point(tri: Triangulation, g: MultiGraph, point) -> QPoint:
    if isinstance(point, QPoint):
        return point
    w = tuple(point)
    z = half_sums(g, w) if len(w) == g.m else None
    if z is None:
        raise PointNotInQ("edge weights have an odd sum at some triangle")
    return QPoint(w, z)


def realize_arrangement(tri: Triangulation, point, t: int | None = None) -> ArcSystem:
    """Arc system of a point of tQ_{T*}; ``t`` defaults to the largest z.

    Raises:
        PointNotInQ: if the point violates the constraints of tQ_{T*}.
    """
    g = dual_graph(tri)
    qp = _as_point(tri, g, point)
    if t is None:
        t = max(qp.z, default=0)
    if len(qp.w) != g.m or len(qp.z) != g.n or not contains(build_q_system(g), t, qp):
        raise PointNotInQ("point is not in tQ of the dual graph")
    w = qp.w
    out = []
    for i, (a, b, c) in enumerate(tri.triangles):
        counts, arcs = [], []
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            wpq, wpr, wqr = w[tri.edge_id(p, q)], w[tri.edge_id(p, r)], w[tri.edge_id(q, r)]
            n = (wpq + wpr - wqr) // 2
            counts.append((p, n))
            for j in range(1, n + 1):
                arcs.append((p, _crossing(tri, p, q, j, wpq), _crossing(tri, p, r, j, wpr)))
        out.append(TriangleArcs(i, tuple(counts), tuple(arcs)))
    return ArcSystem(tuple(w), tuple(out))


def side_counts(tri: Triangulation, system: ArcSystem) -> dict[tuple[int, int], int]:
    """Arc endpoints per (triangle, edge); conservation means this equals w."""
    out: dict[tuple[int, int], int] = {}
    for ta in system.triangles:
        for e in (tri.edge_id(*s) for s in _sides(tri.triangles[ta.triangle])):
            out.setdefault((ta.triangle, e), 0)
        for _, x, y in ta.arcs:
            out[(ta.triangle, x[0])] += 1
            out[(ta.triangle, y[0])] += 1
    return out


def trace_curves(system: ArcSystem) -> list[list[Crossing]]:
    """Glue arcs across shared edges into closed curves.

    Each curve is listed from its lexicographically smallest crossing,
    curves sorted by that start.

    Raises:
        ValueError: if some crossing is not met by exactly two arcs.
    """
    incident: dict[Crossing, list[int]] = {}
    arcs = system.arcs
    for idx, (_, x, y) in enumerate(arcs):
        incident.setdefault(x, []).append(idx)
        incident.setdefault(y, []).append(idx)
    bad = [c for c, lst in incident.items() if len(lst) != 2]
    if bad:
        raise ValueError(f"crossings {sorted(bad)[:5]} are not matched exactly once across their edge")
    used = [False] * len(arcs)
    curves = []
    for start in sorted(incident):
        first = min(incident[start])
        if used[first]:
            continue
        curve = [start]
        cur, arc = start, first
        while not used[arc]:
            used[arc] = True
            _, x, y = arcs[arc]
            nxt = y if x == cur else x
            if nxt == start:
                break
            curve.append(nxt)
            arc = next(a for a in incident[nxt] if a != arc)
            cur = nxt
        curves.append(curve)
    return curves


def max_traversal(system: ArcSystem) -> int:
    """Largest number of arcs inside one triangle (the order of the arrangement)."""
    return max((len(ta.arcs) for ta in system.triangles), default=0)
