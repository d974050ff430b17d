"""H-representations of the dilated polytopes tP_G and tQ_G.

Right-hand sides are affine forms ``a*t + b`` so a single system serves every
dilation.  Rows are stored as ``coeffs . x  (<= | =)  a*t + b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DimensionMismatch
from .multigraph import MultiGraph, require_13

LE = "<="
EQ = "="

PPoint = tuple  # tuple[int, ...] of edge weights


class QPoint(NamedTuple):
    """Integer point of tQ_G: edge weights ``w`` and internal node values ``z``.

    ``z`` is ordered like ``MultiGraph.internal_nodes``.
    """

    w: tuple
    z: tuple


@dataclass(frozen=True)
class Row:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs_t: Fraction
    rhs_c: Fraction

    def holds(self, x: Sequence, t) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, x) if c), Fraction(0))
        rhs = self.rhs_t * t + self.rhs_c
        return lhs <= rhs if self.rel == LE else lhs == rhs


@dataclass(frozen=True)
class LinearSystem:
    variables: tuple[tuple[str, int], ...]
    rows: tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.variables)

    def instantiate(self, t) -> list[tuple[tuple[Fraction, ...], str, Fraction]]:
        return [(r.coeffs, r.rel, r.rhs_t * t + r.rhs_c) for r in self.rows]

    def is_bounded(self) -> bool:
        """Every variable has an implied upper bound.

        Edge variables are nonnegative: adding two triangle rows of a node
        gives ``2 w_x >= 0`` and isolated edges carry explicit rows.  Node
        variables are nonnegative through their defining equality.  Starting
        from rows with only nonnegative coefficients and a nonnegative
        ``t`` part, bounds propagate through equalities.
        """
        bounded: set[int] = set()
        for r in self.rows:
            if r.rel == LE and r.rhs_t >= 0 and all(c >= 0 for c in r.coeffs):
                bounded.update(i for i, c in enumerate(r.coeffs) if c > 0)
        changed = True
        while changed:
            changed = False
            for r in self.rows:
                if r.rel != EQ:
                    continue
                pos = {i for i, c in enumerate(r.coeffs) if c > 0}
                neg = {i for i, c in enumerate(r.coeffs) if c < 0}
                for side, other in ((pos, neg), (neg, pos)):
                    if other <= bounded and not side <= bounded:
                        bounded |= side
                        changed = True
        return len(bounded) == self.dim

    def to_text(self, t) -> str:
        """Plain-text H-representation at dilation ``t``."""
        names = " ".join(f"{kind}{idx}" for kind, idx in self.variables)
        lines = [f"# variables: {names}"]
        for coeffs, rel, rhs in self.instantiate(t):
            lines.append(" ".join(str(c) for c in coeffs) + f" {rel} {rhs}")
        return "\n".join(lines) + "\n"


def _triple_rows(triple: Sequence[int], index: dict[int, int], n: int) -> list[tuple[Fraction, ...]]:
    """Coefficient vectors of the three rows ``w_x - w_y - w_z <= 0``."""
    out = []
    for pos in range(3):
        vec = [Fraction(0)] * n
        vec[index[triple[pos]]] += 1
        for other in range(3):
            if other != pos:
                vec[index[triple[other]]] -= 1
        out.append(tuple(vec))
    return out


def _sum_row(triple: Sequence[int], index: dict[int, int], n: int) -> list[Fraction]:
    vec = [Fraction(0)] * n
    for e in triple:
        vec[index[e]] += 1
    return vec


def _isolated_edges(g: MultiGraph) -> list[int]:
    return [e for _, es in g.components for e in es if len(es) == 1 and not g.is_loop(e)
            and g.degree(g.edges[e][0]) == 1 and g.degree(g.edges[e][1]) == 1]


class _RowCollector:
    def __init__(self):
        self.rows: list[Row] = []
        self.seen: set[Row] = set()

    def add(self, coeffs, rel, rhs_t=0, rhs_c=0):
        row = Row(tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs_t), Fraction(rhs_c))
        if not any(row.coeffs) and rel == LE and row.rhs_t == 0 and row.rhs_c >= 0:
            return  # trivially true
        if row not in self.seen:
            self.seen.add(row)
            self.rows.append(row)


def build_p_system(g: MultiGraph) -> LinearSystem:
    """Rows of tP_G: triangle rows and a perimeter row per internal node."""
    require_13(g)
    m = g.m
    variables = tuple(("w", e) for e in range(m))
    index = {e: e for e in range(m)}
    rows = _RowCollector()
    for v in g.internal_nodes:
        triple = g.incidence(v)
        for vec in _triple_rows(triple, index, m):
            rows.add(vec, LE)
        rows.add(_sum_row(triple, index, m), LE, 1, 0)
    for e in _isolated_edges(g):
        unit = [0] * m
        unit[e] = -1
        rows.add(unit, LE)
        unit[e] = 1
        rows.add(unit, LE, Fraction(1, 2), 0)
    return LinearSystem(variables, tuple(rows.rows))


def build_q_system(g: MultiGraph) -> LinearSystem:
    """Rows of tQ_G: triangle rows, the parity equation and ``z_v <= t``."""
    require_13(g)
    m = g.m
    internal = g.internal_nodes
    n = m + len(internal)
    variables = tuple([("w", e) for e in range(m)] + [("z", v) for v in internal])
    index = {e: e for e in range(m)}
    rows = _RowCollector()
    for j, v in enumerate(internal):
        triple = g.incidence(v)
        for vec in _triple_rows(triple, index, n):
            rows.add(vec, LE)
        vec = _sum_row(triple, index, n)
        vec[m + j] = Fraction(-2)
        rows.add(vec, EQ)
        unit = [0] * n
        unit[m + j] = 1
        rows.add(unit, LE, 1, 0)
    for e in _isolated_edges(g):
        unit = [0] * n
        unit[e] = -1
        rows.add(unit, LE)
        unit[e] = 1
        rows.add(unit, LE, 1, 0)
    return LinearSystem(variables, tuple(rows.rows))


def contains(sys: LinearSystem, t, point: Sequence) -> bool:
    """Exact membership of ``point`` in the system instantiated at ``t``.

    A ``QPoint`` is flattened to ``w + z`` first.
    """
    if isinstance(point, QPoint):
        point = tuple(point.w) + tuple(point.z)
    if len(point) != sys.dim:
        raise DimensionMismatch(f"point has {len(point)} coordinates, system has {sys.dim}")
    x = [Fraction(v) for v in point]
    t = Fraction(t)
    return all(r.holds(x, t) for r in sys.rows)


def half_sums(g: MultiGraph, w: Sequence[int]) -> tuple | None:
    """Node values ``z_v = (w_a + w_b + w_c) / 2``, or None if a sum is odd."""
    out = []
    for v in g.internal_nodes:
        s = sum(w[e] for e in g.incidence(v))
        if s % 2:
            return None
        out.append(s // 2)
    return tuple(out)
