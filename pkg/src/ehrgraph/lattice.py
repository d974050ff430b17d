"""Exact lattice-point enumeration and counting in tP_G and tQ_G.

Two independent engines are provided:

* a depth-first enumerator over edge weights in edge-ID order, closing each
  node constraint as soon as its last edge is assigned (the reference
  oracle, and the only engine that materializes points);
* an exact variable-elimination counter that contracts one 0/1 tensor per
  internal node over the shared edge indices (the fast path used for
  interpolation).

Q-points are handled in w-space: z is implied by the half-sums.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidShape, NotEulerian, NotTree, TooLarge
from .multigraph import MultiGraph, is_internally_eulerian, require_13
from .polytopes import QPoint, half_sums

DEFAULT_BUDGET = 10**8
ENUMERATE_EDGE_CAP = 10
MAX_FACTOR_ENTRIES = 2 * 10**8

P, Q = "P", "Q"


def current_budget() -> int:
    raw = os.environ.get("EHRGRAPH_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _check_kind(kind: str) -> str:
    kind = kind.upper()
    if kind not in (P, Q):
        raise InvalidShape(f"unknown polytope {kind!r}; expected P or Q")
    return kind


def _caps(kind: str, t: int) -> tuple[int, int]:
    """(per-edge bound, bound on a node's weighted sum)."""
    if t < 0:
        raise InvalidShape("t must be nonnegative")
    return (t // 2, t) if kind == P else (t, 2 * t)


# -- depth-first enumeration ------------------------------------------------


@dataclass(frozen=True)
class _Closing:
    """A node constraint that becomes decidable once edge ``edge`` is set."""

    edge: int
    mult: int  # how often ``edge`` occurs in the node's triple
    others: tuple[int, ...]  # remaining triple entries, with repetition


def _closing_plan(g: MultiGraph) -> list[list[_Closing]]:
    plan: list[list[_Closing]] = [[] for _ in range(g.m)]
    for v in g.internal_nodes:
        triple = g.incidence(v)
        last = max(triple)
        mult = triple.count(last)
        others = tuple(e for e in triple if e != last)
        plan[last].append(_Closing(last, mult, others))
    return plan


class _Search:
    def __init__(self, g: MultiGraph, t: int, kind: str, parity: Sequence[int | None] | None, budget: int | None):
        require_13(g)
        self.g = g
        self.kind = _check_kind(kind)
        self.cap, self.cap2 = _caps(self.kind, t)
        self.plan = _closing_plan(g)
        self.parity = list(parity) if parity is not None else [None] * g.m
        self.budget = current_budget() if budget is None else budget
        self.visited = 0
        self.w = [0] * g.m

    def _tick(self, n: int = 1):
        self.visited += n
        if self.visited > self.budget:
            raise BudgetExceeded(f"enumeration exceeded budget of {self.budget} search nodes")

    def candidates(self, i: int) -> range:
        """Feasible values of edge ``i`` given edges ``< i``."""
        lo, hi = 0, self.cap
        step_parity = self.parity[i]
        for cl in self.plan[i]:
            w = self.w
            s = sum(w[e] for e in cl.others)
            for x in set(cl.others):
                need = 2 * w[x] - s
                if need > 0:
                    lo = max(lo, -(-need // cl.mult))
            hi = min(hi, (self.cap2 - s) // cl.mult)
            if cl.mult == 1:
                hi = min(hi, s)
            if self.kind == Q:
                if cl.mult == 1:
                    want = s % 2
                    if step_parity is not None and step_parity != want:
                        return range(0)
                    step_parity = want
                elif s % 2:
                    return range(0)
        if lo > hi:
            return range(0)
        if step_parity is None:
            return range(lo, hi + 1)
        if lo % 2 != step_parity:
            lo += 1
        return range(lo, hi + 1, 2)

    def points(self) -> Iterator[tuple[int, ...]]:
        m = self.g.m
        if m == 0:
            yield ()
            return
        w = self.w

        def rec(i: int):
            for val in self.candidates(i):
                self._tick()
                w[i] = val
                if i + 1 == m:
                    yield tuple(w)
                else:
                    yield from rec(i + 1)

        yield from rec(0)

    def count(self) -> int:
        m = self.g.m
        if m == 0:
            return 1
        w = self.w

        def rec(i: int) -> int:
            cands = self.candidates(i)
            if i + 1 == m:
                self._tick(len(cands))
                return len(cands)
            total = 0
            for val in cands:
                self._tick()
                w[i] = val
                total += rec(i + 1)
            return total

        return rec(0)


def _parity_vector(g: MultiGraph, H) -> list[int]:
    hs = set(H)
    if not is_internally_eulerian(g, hs):
        raise NotEulerian(f"edge set {sorted(hs)} is not internally Eulerian")
    return [1 if e in hs else 0 for e in range(g.m)]


def _edge_parity(g: MultiGraph, e: int, parity: int) -> list[int | None]:
    if not 0 <= e < g.m:
        raise InvalidShape(f"edge {e} out of range")
    out: list[int | None] = [None] * g.m
    out[e] = parity
    return out


def iter_points(g: MultiGraph, t: int, polytope: str = P, parity=None, budget: int | None = None) -> Iterator[tuple[int, ...]]:
    """Lazily yield w-vectors of integer points in lexicographic order."""
    return _Search(g, t, polytope, parity, budget).points()


def enumerate_p_points(g: MultiGraph, t: int, budget: int | None = None, edge_cap: int = ENUMERATE_EDGE_CAP) -> list[tuple[int, ...]]:
    """All integer points of tP_G, lexicographically ordered."""
    if g.m > edge_cap:
        raise TooLarge(f"point enumeration limited to {edge_cap} edges")
    return list(iter_points(g, t, P, budget=budget))


def enumerate_q_points(g: MultiGraph, t: int, H=None, budget: int | None = None, edge_cap: int = ENUMERATE_EDGE_CAP) -> list[QPoint]:
    """All integer points of tQ_G, or of the coset part_t(G, H) when H is given."""
    if g.m > edge_cap:
        raise TooLarge(f"point enumeration limited to {edge_cap} edges")
    parity = None if H is None else _parity_vector(g, H)
    return [QPoint(w, half_sums(g, w)) for w in iter_points(g, t, Q, parity, budget)]


def dfs_count(g: MultiGraph, t: int, polytope: str = P, parity=None, budget: int | None = None) -> int:
    """Count by depth-first search (reference oracle)."""
    return _Search(g, t, polytope, parity, budget).count()


# -- variable elimination ---------------------------------------------------


def _node_tensor(kind: str, cap: int, cap2: int, loop: bool) -> np.ndarray:
    r = np.arange(cap + 1)
    if loop:
        # triple (l, l, c): total 2 w_l + w_c; only w_c <= 2 w_l is binding
        x, c = np.meshgrid(r, r, indexing="ij")
        ok = (c <= 2 * x) & (2 * x + c <= cap2)
        if kind == Q:
            ok &= c % 2 == 0
        return ok
    a, b, c = np.meshgrid(r, r, r, indexing="ij")
    s = a + b + c
    ok = (2 * a <= s) & (2 * b <= s) & (2 * c <= s) & (s <= cap2)
    if kind == Q:
        ok &= s % 2 == 0
    return ok


_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _contract(factors: list[tuple[np.ndarray, tuple[int, ...]]], variables: Sequence[int], dim: int) -> int:
    """Sum over all variables of the product of factors, eliminating greedily."""
    remaining = set(variables)
    factors = list(factors)
    scalar = 1
    while remaining:
        best = None
        for var in sorted(remaining):
            touching = [f for f in factors if var in f[1]]
            scope = set().union(*(f[1] for f in touching)) - {var} if touching else set()
            size = dim ** len(scope)
            if best is None or size < best[0]:
                best = (size, var, scope)
        size, var, scope = best
        if size > MAX_FACTOR_ENTRIES:
            raise BudgetExceeded(f"intermediate factor of {size} entries exceeds limit")
        touching = [f for f in factors if var in f[1]]
        factors = [f for f in factors if var not in f[1]]
        remaining.discard(var)
        if not touching:
            scalar *= dim
            continue
        out_vars = tuple(sorted(scope))
        letter = {v: _LETTERS[i] for i, v in enumerate(sorted(scope | {var}))}
        spec = ",".join("".join(letter[v] for v in f[1]) for f in touching)
        spec += "->" + "".join(letter[v] for v in out_vars)
        result = np.einsum(spec, *(f[0] for f in touching))
        if out_vars:
            factors.append((result, out_vars))
        else:
            scalar *= int(result)
    for arr, _ in factors:
        scalar *= int(arr)
    return int(scalar)


def contraction_count(g: MultiGraph, t: int, polytope: str = P, parity=None) -> int:
    """Exact count by contracting node constraint tensors over shared edges.

    Each internal node contributes a 0/1 tensor over its distinct incident
    edges; parity restrictions are unary masks.  Exact integers are kept by
    switching to Python-object arrays when int64 could overflow.
    """
    require_13(g)
    kind = _check_kind(polytope)
    cap, cap2 = _caps(kind, t)
    dim = cap + 1
    m = g.m
    if m == 0:
        return 1
    dtype = np.int64 if m * (dim.bit_length()) < 62 else object
    factors: list[tuple[np.ndarray, tuple[int, ...]]] = []
    tensors = {}
    for v in g.internal_nodes:
        triple = g.incidence(v)
        loop = len(set(triple)) == 2
        key = loop
        if key not in tensors:
            tensors[key] = _node_tensor(kind, cap, cap2, loop).astype(dtype)
        if loop:
            lp = next(e for e in triple if triple.count(e) == 2)
            other = next(e for e in triple if e != lp)
            factors.append((tensors[key], (lp, other)))
        else:
            factors.append((tensors[key], tuple(triple)))
    if parity is not None:
        r = np.arange(dim)
        for e, p in enumerate(parity):
            if p is not None:
                factors.append(((r % 2 == p).astype(dtype), (e,)))
    return _contract(factors, range(m), dim)


# -- tree dynamic program ---------------------------------------------------


def tree_dp_count(g: MultiGraph, t: int, polytope: str = P) -> int:
    """Count points of a {1,3}-tree polytope by dynamic programming.

    The tree is rooted at its first leaf; ``f_e[x]`` counts assignments of
    the subtree hanging below edge ``e`` given ``w_e = x``.
    """
    stats = require_13(g)
    if not stats.is_tree:
        raise NotTree("tree_dp_count needs a {1,3}-tree")
    kind = _check_kind(polytope)
    cap, cap2 = _caps(kind, t)
    if g.m == 1:
        return cap + 1
    root = g.leaves[0]
    root_edge = g.incidence(root)[0]

    pairs_by_x: dict[int, list[tuple[int, int]]] = {}
    for x in range(cap + 1):
        lst = []
        for y in range(cap + 1):
            for z in range(cap + 1):
                s = x + y + z
                if 2 * max(x, y, z) <= s <= cap2 and (kind == P or s % 2 == 0):
                    lst.append((y, z))
        pairs_by_x[x] = lst

    def below(edge: int, node: int) -> list[int]:
        if g.degree(node) == 1:
            return [1] * (cap + 1)
        kids = [e for e in g.incidence(node) if e != edge]
        fb = below(kids[0], g.other_end(kids[0], node))
        fc = below(kids[1], g.other_end(kids[1], node))
        return [sum(fb[y] * fc[z] for y, z in pairs_by_x[x]) for x in range(cap + 1)]

    return sum(below(root_edge, g.other_end(root_edge, root)))


# -- public counting API ----------------------------------------------------


def count_p(g: MultiGraph, t: int, method: str = "contract") -> int:
    """L^P_G(t)."""
    if method == "dfs":
        return dfs_count(g, t, P)
    return contraction_count(g, t, P)


def count_q(g: MultiGraph, t: int, method: str = "contract") -> int:
    """L^Q_G(t), counted in w-space with z implied."""
    if method == "dfs":
        return dfs_count(g, t, Q)
    return contraction_count(g, t, Q)


def count(g: MultiGraph, t: int, polytope: str, method: str = "contract") -> int:
    return count_p(g, t, method) if _check_kind(polytope) == P else count_q(g, t, method)


def vol_coset(g: MultiGraph, H, t: int, method: str = "contract") -> int:
    """vol_t(G, H): Q-points whose edge weights are odd exactly on H."""
    parity = _parity_vector(g, H)
    if method == "dfs":
        return dfs_count(g, t, Q, parity)
    return contraction_count(g, t, Q, parity)


def parity_counts(g: MultiGraph, t: int, e: int, polytope: str = P, method: str = "contract") -> tuple[int, int]:
    """(points with w_e even, points with w_e odd)."""
    kind = _check_kind(polytope)
    counter = dfs_count if method == "dfs" else contraction_count
    return (counter(g, t, kind, _edge_parity(g, e, 0)), counter(g, t, kind, _edge_parity(g, e, 1)))


def in_p(g: MultiGraph, t: int, w: Sequence[int]) -> bool:
    """Integer membership test for tP_G, without building a linear system."""
    if any(x < 0 for x in w):
        return False
    for v in g.internal_nodes:
        vals = [w[e] for e in g.incidence(v)]
        s = sum(vals)
        if s > t or 2 * max(vals) > s:
            return False
    for _, es in g.components:
        if len(es) == 1 and not g.is_loop(es[0]) and 2 * w[es[0]] > t:
            return False
    return True


def out_in_sets(g: MultiGraph, t: int, e: int, budget: int | None = None) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Shift-boundary sets along edge ``e`` in tP_G.

    Out holds points with even w_e whose +1 shift leaves tP_G; In holds
    points with odd w_e whose -1 shift leaves tP_G.
    """
    if not 0 <= e < g.m:
        raise InvalidShape(f"edge {e} out of range")
    out, inn = [], []
    for w in iter_points(g, t, P, budget=budget):
        shifted = list(w)
        if w[e] % 2 == 0:
            shifted[e] += 1
            if not in_p(g, t, shifted):
                out.append(w)
        else:
            shifted[e] -= 1
            if not in_p(g, t, shifted):
                inn.append(w)
    return out, inn
