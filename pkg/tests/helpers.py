"""Shared oracles for the test modules."""

from __future__ import annotations

from itertools import permutations

from ehrgraph.arrangements import Triangulation, dual_graph
from ehrgraph.polytopes import QPoint, build_q_system, contains

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def relabelings(tri: Triangulation, w: tuple[int, ...], z: tuple[int, ...]):
    """Every QPoint obtained by assigning the listed values to our edges and nodes.

    The order of the listed weights and node values may follow any labeling
    of the drawing, so all edge and node permutations are produced.
    """
    for ep in permutations(range(tri.E)):
        w2 = [0] * tri.E
        for src, dst in enumerate(ep):
            w2[dst] = w[src]
        for zp in permutations(range(tri.F)):
            z2 = [0] * tri.F
            for src, dst in enumerate(zp):
                z2[dst] = z[src]
            yield QPoint(tuple(w2), tuple(z2))


def accepted_labelings(tri: Triangulation, w, z, t: int) -> list[QPoint]:
    """Relabelings of (w, z) that lie in tQ of the dual graph."""
    system = build_q_system(dual_graph(tri))
    return sorted({p for p in relabelings(tri, tuple(w), tuple(z)) if contains(system, t, p)})
