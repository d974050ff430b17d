"""Executable checks of the counting identities for caterpillars and beyond.

Each ``check_*`` function recomputes both sides of an identity from raw
lattice-point counts and returns a :class:`Report`.  Reports never raise on a
mismatch; failures are recorded with the instance, ``t`` and both values.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

from .ehrhart import (
    QuasiPolynomial,
    ehrhart_of,
    period,
    poly_add,
    poly_eval,
    poly_pow,
    poly_scale,
)
from .families import all_connected_13, dumbbell, k4, star, theta
from .lattice import count_p, count_q, out_in_sets, parity_counts, vol_coset
from .multigraph import (
    MultiGraph,
    caterpillar,
    caterpillar_subgraph,
    eulerian_count_formula,
    validate_13,
)


@dataclass
class Report:
    name: str
    grid: dict
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def record(self, passed: bool, **details) -> None:
        self.checked += 1
        if not passed:
            self.failures.append({k: _jsonable(v) for k, v in details.items()})

    def merge(self, other: "Report") -> None:
        self.checked += other.checked
        self.failures += other.failures

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "grid": {k: _jsonable(v) for k, v in self.grid.items()},
            "status": self.status,
            "checked": self.checked,
            "witnesses": self.failures,
        }

    def to_text(self) -> str:
        head = f"[{self.status.upper()}] {self.name} {_grid_text(self.grid)}: {self.checked} checks"
        lines = [head]
        for f in self.failures[:10]:
            lines.append("    " + ", ".join(f"{k}={v}" for k, v in f.items()))
        if len(self.failures) > 10:
            lines.append(f"    ... {len(self.failures) - 10} more failures")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (set, frozenset)):
        return sorted(_jsonable(x) for x in v)
    if isinstance(v, MultiGraph):
        return [list(e) for e in v.edges]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def _grid_text(grid: dict) -> str:
    return "(" + ", ".join(f"{k}={_jsonable(v)}" for k, v in grid.items()) + ")"


def _even_ts(t_max: int) -> range:
    return range(0, t_max + 1, 2)


# -- cached raw counts on caterpillars --------------------------------------


@lru_cache(maxsize=None)
def _cat(h: int, k: int) -> MultiGraph:
    return caterpillar(h, k)


@lru_cache(maxsize=None)
def lp(h: int, k: int, t: int) -> int:
    """L^P_{h,k}(t) by direct counting."""
    return count_p(_cat(h, k), t)


@lru_cache(maxsize=None)
def lq(h: int, k: int, t: int) -> int:
    return count_q(_cat(h, k), t)


@lru_cache(maxsize=None)
def vol(h: int, k: int, i: int, j: int, t: int) -> int:
    """vol_t(G_{h,k}, H_{i,j}) by direct counting."""
    return vol_coset(_cat(h, k), caterpillar_subgraph(h, k, i, j), t)


def leaf_edge(h: int, k: int) -> int:
    """A fixed leaf-edge of G_{h,k} (the first leaf leg)."""
    g = _cat(h, k)
    return min(g.incidence(v)[0] for v in g.leaves)


@lru_cache(maxsize=None)
def delta(h: int, k: int, t: int) -> int:
    """Δ_{h,k}(t): even minus odd points of tP_{h,k} on a leaf-edge."""
    even, odd = parity_counts(_cat(h, k), t, leaf_edge(h, k))
    return even - odd


def _half_plus_one(t: int) -> Fraction:
    return Fraction(t, 2) + 1


# -- checks -----------------------------------------------------------------


def check_key_summation(h: int, k: int, t_max: int) -> Report:
    """L^Q via the coset sum over all H_{i,j} and via the collapsed form."""
    rep = Report("key-summation", {"h": h, "k": k, "t_max": t_max})
    for t in _even_ts(t_max):
        lhs = lq(h, k, t)
        full = sum(comb(h, 2 * i) * comb(k, j) * vol(h, k, i, j, t) for i in range(h // 2 + 1) for j in range(k + 1))
        rep.record(full == lhs, form="coset-sum", t=t, lhs=lhs, rhs=full)
        collapsed = 2**k * sum(comb(h, 2 * i) * vol(h, k, i, 0, t) for i in range(h // 2 + 1))
        if k >= 1:
            collapsed -= (2**k - 1) * (vol(h, k, 0, 0, t) - vol(h, k, 0, 1, t))
        rep.record(collapsed == lhs, form="collapsed", t=t, lhs=lhs, rhs=collapsed)
    return rep


def _summation_defined(h: int, k: int) -> bool:
    """Every caterpillar on the right-hand side exists (fails only for (2, 0))."""
    return h - h // 2 + k >= 2


def _summation_rhs(h: int, k: int, t: int) -> Fraction:
    n_g = eulerian_count_formula(validate_13(_cat(h, k)))
    acc = Fraction(lp(h, k, t))
    for j in range(1, h // 2 + 1):
        acc += Fraction(1, (-4) ** j) * comb(h - j, j) * Fraction(h, h - j) * lp(h - j, k, t)
    return n_g * acc


def check_leafpath_lemma(h: int, k: int, t_max: int) -> Report:
    """One-less-leaf-path recursion, alternating-sum coset formula, summation form."""
    rep = Report("leafpath-lemma", {"h": h, "k": k, "t_max": t_max})
    for t in _even_ts(t_max):
        for i in range(h // 2 + 1):
            v = vol(h, k, i, 0, t)
            if i == 0:
                rep.record(v == lp(h, k, t), form="empty", i=0, t=t, lhs=v, rhs=lp(h, k, t))
                continue
            if k >= 1 and h >= 2:
                rhs = vol(h, k, i - 1, 0, t) - vol(h - 1, k, i - 1, 0, t)
                rep.record(v == rhs, form="recursion", i=i, t=t, lhs=v, rhs=rhs)
            if k >= 1:
                alt = sum((-1) ** j * comb(i, j) * lp(h - j, k, t) for j in range(i + 1))
                rep.record(v == alt, form="alternating", i=i, t=t, lhs=v, rhs=alt)
        if h >= 1 and _summation_defined(h, k):
            lhs = 2**k * sum(comb(h, 2 * i) * vol(h, k, i, 0, t) for i in range(h // 2 + 1))
            rhs = _summation_rhs(h, k, t)
            rep.record(lhs == rhs, form="summation", t=t, lhs=lhs, rhs=rhs)
    return rep


def check_loop_lemma(h: int, k: int, t_max: int) -> Report:
    """vol(∅) - vol(H_{0,1}) against (t/2+1)^(k-1) or 0 by residue of t."""
    rep = Report("loop-lemma", {"h": h, "k": k, "t_max": t_max})
    for t in _even_ts(t_max):
        diff = vol(h, k, 0, 0, t) - vol(h, k, 0, 1, t)
        expected = _half_plus_one(t) ** (k - 1) if (t % 4 == 0 or h == 0) else 0
        rep.record(diff == expected, t=t, lhs=diff, rhs=expected)
    return rep


def check_delta(h: int, k: int, t_max: int) -> Report:
    """Closed form of Δ, its factorization, and the bridge to the loop term."""
    rep = Report("delta", {"h": h, "k": k, "t_max": t_max})
    for t in _even_ts(t_max):
        d = delta(h, k, t)
        expected = _half_plus_one(t) ** k if (t % 4 == 0 or h == 1) else 0
        rep.record(d == expected, form="closed", t=t, lhs=d, rhs=expected)
        if h + k >= 3:
            if h == 1:
                if k >= 2:
                    rhs = delta(1, 1, t) * delta(1, k - 1, t)
                    rep.record(d == rhs, form="factor", t=t, lhs=d, rhs=rhs)
            else:
                rhs = delta(2, 0, t) * delta(h - 1, k, t)
                rep.record(d == rhs, form="factor", t=t, lhs=d, rhs=rhs)
        if k >= 1:
            bridge = vol(h, k, 0, 0, t) - vol(h, k, 0, 1, t)
            rhs = delta(h + 1, k - 1, t)
            rep.record(bridge == rhs, form="bridge", t=t, lhs=bridge, rhs=rhs)
    return rep


def check_boundary_form(h: int, k: int, t_max: int) -> Report:
    """On Out_a / In_a of a leaf-edge a, w_a is pinned by its neighbours."""
    rep = Report("boundary-form", {"h": h, "k": k, "t_max": t_max})
    g = _cat(h, k)
    a = leaf_edge(h, k)
    inner = next(v for v in g.edges[a] if g.degree(v) == 3) if g.m > 1 else None
    if inner is None:
        return rep
    b, c = [e for e in g.incidence(inner) if e != a]
    for t in _even_ts(t_max):
        out, inn = out_in_sets(g, t, a)
        for w in out:
            want = min(t - w[b] - w[c], w[b] + w[c])
            rep.record(w[a] == want, set="Out", t=t, point=w, rhs=want)
        for w in inn:
            want = abs(w[b] - w[c])
            rep.record(w[a] == want, set="In", t=t, point=w, rhs=want)
    return rep


def check_shift_lemma(g: MultiGraph, t_max: int, all_t: bool = True) -> Report:
    """even - odd = |Out| - |In| for every edge of ``g``."""
    rep = Report("shift-lemma", {"graph": g, "t_max": t_max})
    ts = range(t_max + 1) if all_t else _even_ts(t_max)
    for t in ts:
        for e in range(g.m):
            even, odd = parity_counts(g, t, e)
            out, inn = out_in_sets(g, t, e)
            rep.record(even - odd == len(out) - len(inn), t=t, edge=e, lhs=even - odd, rhs=len(out) - len(inn))
    return rep


def planar_shift_example() -> tuple[set[tuple[int, int]], int, int, int, int]:
    """A planar point set with 7 Out and 8 In points along the x-axis.

    Rows 0..6 hold {1, 2}; row 7 holds {1}.  Returns the set and
    (even, odd, |Out|, |In|).
    """
    pts = {(x, y) for y in range(7) for x in (1, 2)} | {(1, 7)}
    even = sum(1 for x, _ in pts if x % 2 == 0)
    odd = len(pts) - even
    out = sum(1 for x, y in pts if x % 2 == 0 and (x + 1, y) not in pts)
    inn = sum(1 for x, y in pts if x % 2 == 1 and (x - 1, y) not in pts)
    return pts, even, odd, out, inn


def check_shift_planar() -> Report:
    rep = Report("shift-lemma", {"graph": "planar"})
    _, even, odd, out, inn = planar_shift_example()
    rep.record(even - odd == out - inn == -1 and (out, inn) == (7, 8), lhs=even - odd, rhs=out - inn)
    return rep


def check_odd_relation(g: MultiGraph, t_odd_max: int) -> Report:
    """count_q = N_G * count_p at odd t."""
    rep = Report("odd-relation", {"graph": g, "t_odd_max": t_odd_max})
    n_g = eulerian_count_formula(validate_13(g))
    for t in range(1, t_odd_max + 1, 2):
        q, p = count_q(g, t), count_p(g, t)
        rep.record(q == n_g * p, t=t, lhs=q, rhs=n_g * p)
    return rep


@lru_cache(maxsize=None)
def _qps(h: int, k: int) -> tuple[QuasiPolynomial, QuasiPolynomial]:
    g = _cat(h, k)
    return ehrhart_of(g, "P"), ehrhart_of(g, "Q")


def p0_minus_p2_closed(h: int, k: int) -> tuple[Fraction, ...]:
    """Closed form of p0 - p2 for G_{h,k} as a polynomial in t."""
    s = sum(Fraction(2 ** (h - j + 1), h + j) * comb(h + j, j) for j in range(h))
    scale = Fraction(h, 4**h) * (1 - Fraction(1, 2**k)) * s
    return poly_scale(poly_pow((Fraction(1), Fraction(1, 2)), k - 1), scale)


def check_constituent_relations(h: int, k: int) -> Report:
    """Polynomial identities between constituents and the period class."""
    rep = Report("constituents", {"h": h, "k": k})
    p, q = _qps(h, k)
    n_g = eulerian_count_formula(validate_13(_cat(h, k)))
    ps, qs = p.constituents, q.constituents
    if h == 0:
        rhs = poly_add(poly_scale(ps[0], n_g), poly_scale(poly_pow((1, Fraction(1, 2)), k - 1), -(n_g - 1)))
        rep.record(qs[0] == rhs, form="cubic-q0", lhs=qs[0], rhs=rhs)
        rep.record(period(p) <= 2, form="period", lhs=period(p), rhs="<=2")
    if h >= 1 and k >= 1:
        diff = poly_add(ps[0], poly_scale(ps[2], -1))
        closed = p0_minus_p2_closed(h, k)
        rep.record(diff == closed, form="p0-p2", lhs=diff, rhs=closed)
        rep.record(period(p) == 4, form="period", lhs=period(p), rhs=4)
    if k == 0:
        rep.record(ps[0] == ps[2] and ps[0] != ps[1], form="tree-constituents", lhs=period(p), rhs=2)
        rep.record(period(p) == 2 and period(q) == 1, form="period", lhs=(period(p), period(q)), rhs=(2, 1))
    # odd constituents of Q are N_G times those of P
    for r in (1, 3):
        rhs = poly_scale(ps[r], n_g)
        rep.record(qs[1] == rhs, form=f"odd-q{r}", lhs=qs[1], rhs=rhs)
    return rep


def check_binomial_identity(h_max: int) -> Report:
    rep = Report("binomial", {"h_max": h_max})
    for h in range(1, h_max + 1):
        for j in range(h // 2 + 1):
            lhs = sum(comb(h, 2 * i) * comb(i, j) for i in range(j, h // 2 + 1))
            rhs = comb(h - j, j) * Fraction(h, h - j) * Fraction(2) ** (h - 1 - 2 * j)
            rep.record(lhs == rhs, h=h, j=j, lhs=lhs, rhs=rhs)
    return rep


def d_closed(h: int) -> Fraction:
    return (-1) ** h * sum(Fraction(2 ** (h - j + 1), h + j) * comb(h + j, j) for j in range(h))


def d_from_counts(alpha: int, k: int, t: int) -> Fraction:
    """d(alpha) read off the interpolated constituents at even ``t``."""
    p, _ = _qps(alpha, k)
    diff = poly_eval(p.constituents[0], t) - poly_eval(p.constituents[2], t)
    denom = (1 - Fraction(1, 2**k)) * _half_plus_one(t) ** (k - 1)
    return Fraction((-4) ** alpha, alpha) * diff / denom


def check_d_recurrence(h_max: int, k: int, t_probe: int) -> Report:
    """Recurrence and closed form for d(h), probed at two even values of t."""
    rep = Report("d-recurrence", {"h_max": h_max, "k": k, "t_probe": t_probe})
    probes = (t_probe, t_probe + 4)
    d = {}
    for alpha in range(1, h_max + 1):
        a, b = (d_from_counts(alpha, k, t) for t in probes)
        rep.record(a == b, form="probe-independence", h=alpha, lhs=a, rhs=b)
        d[alpha] = a
        rep.record(a == d_closed(alpha), form="closed", h=alpha, lhs=a, rhs=d_closed(alpha))
        rep.record((a > 0) == (alpha % 2 == 0), form="sign", h=alpha, lhs=a, rhs="+" if alpha % 2 == 0 else "-")
    for h in range(1, h_max + 1):
        lhs = sum(comb(h - j, j) * d[h - j] for j in range(h))
        rhs = Fraction((-1) ** h * 2 ** (h + 1), h)
        rep.record(lhs == rhs, form="recurrence", h=h, lhs=lhs, rhs=rhs)
    return rep


# -- suites -----------------------------------------------------------------


def _shapes(max_legs: int, h_min: int = 0, k_min: int = 0) -> list[tuple[int, int]]:
    return [(h, s - h) for s in range(2, max_legs + 1) for h in range(s + 1) if h >= h_min and s - h >= k_min]


Cell = tuple[Callable[..., Report], tuple]


def suite_cells(name: str, grid: str = "small") -> list[Cell]:
    full = grid == "full"
    legs = 5 if full else 4
    t_max = 8
    if name == "key-summation":
        return [(check_key_summation, (h, k, t_max)) for h, k in _shapes(legs)]
    if name == "leafpath-lemma":
        return [(check_leafpath_lemma, (h, k, t_max)) for h, k in _shapes(legs, h_min=1)]
    if name == "loop-lemma":
        return [(check_loop_lemma, (h, k, t_max)) for h, k in _shapes(legs, k_min=1)]
    if name == "delta":
        cells: list[Cell] = [(check_delta, (h, k, t_max)) for h, k in _shapes(legs, h_min=1)]
        cells += [(check_boundary_form, (h, k, 6 if full else 4)) for h, k in _shapes(legs - 1, h_min=1)]
        return cells
    if name == "shift-lemma":
        m_max = 6 if full else 5
        graphs = all_connected_13(m_max)
        return [(check_shift_planar, ())] + [(check_shift_lemma, (g, 8 if full else 6)) for g in graphs]
    if name == "odd-relation":
        graphs = all_connected_13(8 if full else 6)
        return [(check_odd_relation, (g, 5)) for g in graphs]
    if name == "constituents":
        shapes = _shapes(4 if full else 3)
        return [(check_constituent_relations, (h, k)) for h, k in shapes]
    if name == "binomial":
        return [(check_binomial_identity, (40 if full else 12,))]
    if name == "d-recurrence":
        if full:
            return [(check_d_recurrence, (4, 1, 4)), (check_d_recurrence, (3, 2, 4))]
        return [(check_d_recurrence, (3, 1, 4))]
    raise KeyError(name)


SUITES = (
    "key-summation",
    "leafpath-lemma",
    "loop-lemma",
    "delta",
    "shift-lemma",
    "odd-relation",
    "constituents",
    "binomial",
    "d-recurrence",
)


def _run_cell(cell: Cell) -> Report:
    fn, args = cell
    return fn(*args)


def run_suite(name: str, grid: str = "small", jobs: int = 1) -> list[Report]:
    """Run every cell of a suite; output order does not depend on ``jobs``."""
    cells = suite_cells(name, grid)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_cell, cells))
    return [_run_cell(c) for c in cells]


def summarize(name: str, reports: Sequence[Report]) -> Report:
    total = Report(name, {"cells": len(reports)})
    for r in reports:
        total.merge(r)
    return total


def reports_json(reports: Sequence[Report]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)


NAMED_CUBIC = {"dumbbell": dumbbell, "k4": k4, "theta": theta}
NAMED_TREES = {"star": star}
