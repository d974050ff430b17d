"""Quasi-polynomial arithmetic, interpolation and period detection.

All arithmetic is exact over ``fractions.Fraction``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .errors import DegreeMismatch, InvalidShape
from .lattice import P, Q, _check_kind, count
from .multigraph import MultiGraph, require_13

HELD_OUT = 2
_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _trim(coeffs: Sequence) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_eval(coeffs: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def poly_add(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_scale(p: Sequence, c) -> tuple[Fraction, ...]:
    return _trim([Fraction(c) * x for x in p])


def poly_mul(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def poly_pow(p: Sequence, n: int) -> tuple[Fraction, ...]:
    out: tuple[Fraction, ...] = (Fraction(1),)
    for _ in range(n):
        out = poly_mul(out, p)
    return out


def lagrange(xs: Sequence[int], ys: Sequence[int]) -> tuple[Fraction, ...]:
    """Coefficients (constant first) of the interpolating polynomial."""
    result: tuple[Fraction, ...] = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis: tuple[Fraction, ...] = (Fraction(1),)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = poly_mul(basis, (Fraction(-xj), Fraction(1)))
                denom *= xi - xj
        result = poly_add(result, poly_scale(basis, Fraction(yi) / denom))
    return result


@dataclass(frozen=True)
class QuasiPolynomial:
    """``modulus`` constituents; constituent r applies to t ≡ r (mod modulus)."""

    modulus: int
    constituents: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.modulus < 1 or len(self.constituents) != self.modulus:
            raise InvalidShape("need exactly `modulus` constituents")
        object.__setattr__(self, "constituents", tuple(_trim(c) for c in self.constituents))

    def __call__(self, t: int) -> Fraction:
        return evaluate(self, t)

    def constituent(self, r: int) -> tuple[Fraction, ...]:
        return self.constituents[r % self.modulus]

    @property
    def degree(self) -> int:
        return max((len(c) - 1 for c in self.constituents), default=-1)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "constituents": [[str(c) for c in poly] for poly in self.constituents],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "QuasiPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["modulus"]), tuple(tuple(Fraction(c) for c in poly) for poly in data["constituents"]))

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "QuasiPolynomial":
        return cls(1, (tuple(Fraction(c) for c in coeffs),))


def evaluate(qp: QuasiPolynomial, t: int) -> Fraction:
    return poly_eval(qp.constituent(t), t)


def period(qp: QuasiPolynomial) -> int:
    """Smallest divisor d of the modulus with constituent r equal to r + d."""
    a = qp.modulus
    for d in range(1, a + 1):
        if a % d == 0 and all(qp.constituents[r] == qp.constituents[(r + d) % a] for r in range(a)):
            return d
    return a


def reduce(qp: QuasiPolynomial) -> QuasiPolynomial:
    """Same function stored with its period as modulus."""
    d = period(qp)
    return QuasiPolynomial(d, qp.constituents[:d])


def with_modulus(qp: QuasiPolynomial, modulus: int) -> QuasiPolynomial:
    if modulus % qp.modulus:
        raise InvalidShape(f"{modulus} is not a multiple of {qp.modulus}")
    return QuasiPolynomial(modulus, tuple(qp.constituent(r) for r in range(modulus)))


def _align(f: QuasiPolynomial, g: QuasiPolynomial) -> tuple[QuasiPolynomial, QuasiPolynomial]:
    a = lcm(f.modulus, g.modulus)
    return with_modulus(f, a), with_modulus(g, a)


def qp_equal(f: QuasiPolynomial, g: QuasiPolynomial) -> bool:
    f, g = _align(f, g)
    return f.constituents == g.constituents


def qp_add(f: QuasiPolynomial, g: QuasiPolynomial) -> QuasiPolynomial:
    f, g = _align(f, g)
    return QuasiPolynomial(f.modulus, tuple(poly_add(a, b) for a, b in zip(f.constituents, g.constituents)))


def qp_sub(f: QuasiPolynomial, g: QuasiPolynomial) -> QuasiPolynomial:
    return qp_add(f, qp_scale(g, -1))


def qp_scale(f: QuasiPolynomial, c) -> QuasiPolynomial:
    return QuasiPolynomial(f.modulus, tuple(poly_scale(p, c) for p in f.constituents))


def qp_mul(f: QuasiPolynomial, g: QuasiPolynomial) -> QuasiPolynomial:
    f, g = _align(f, g)
    return QuasiPolynomial(f.modulus, tuple(poly_mul(a, b) for a, b in zip(f.constituents, g.constituents)))


def interpolate(counter: Callable[[int], int], modulus: int, degree: int, held_out: int = HELD_OUT) -> QuasiPolynomial:
    """Interpolate a quasi-polynomial from exact counts.

    Per residue r, fits ``degree + 1`` samples at t = r, r + modulus, ... and
    checks ``held_out`` further samples.

    Raises:
        DegreeMismatch: if a held-out sample disagrees with the fit.
    """
    if modulus not in (1, 2, 4):
        raise InvalidShape("modulus must be 1, 2 or 4")
    if degree < 0:
        raise InvalidShape("degree must be nonnegative")
    constituents = []
    for r in range(modulus):
        ts = [r + modulus * j for j in range(degree + 1 + held_out)]
        ys = [counter(t) for t in ts]
        poly = lagrange(ts[: degree + 1], ys[: degree + 1])
        for t, y in zip(ts[degree + 1 :], ys[degree + 1 :]):
            if poly_eval(poly, t) != y:
                raise DegreeMismatch(f"residue {r}: fit of degree {degree} misses t={t}")
        constituents.append(poly)
    return QuasiPolynomial(modulus, tuple(constituents))


def _connected_ehrhart(g: MultiGraph, kind: str, method: str) -> QuasiPolynomial:
    cache: dict[int, int] = {}

    def counter(t: int) -> int:
        if t not in cache:
            cache[t] = count(g, t, kind, method)
        return cache[t]

    modulus = 4 if kind == P else 2
    last: DegreeMismatch | None = None
    # dim <= m; a lower bound only matters if the held-out check fails
    for degree in range(g.m, -1, -1):
        try:
            return interpolate(counter, modulus, degree)
        except DegreeMismatch as exc:
            last = exc
    assert last is not None
    raise last


def ehrhart_of(g: MultiGraph, polytope: str = P, method: str = "contract") -> QuasiPolynomial:
    """Ehrhart quasi-polynomial of tP_G or tQ_G.

    Disconnected graphs are handled as the product over components.
    """
    require_13(g)
    kind = _check_kind(polytope)
    result = QuasiPolynomial.polynomial([1])
    for comp in g.component_graphs():
        result = qp_mul(result, _connected_ehrhart(comp, kind, method))
    return result


# -- formatting -------------------------------------------------------------


def _term(c: Fraction, power: int) -> str:
    num, den = abs(c.numerator), c.denominator
    if power == 0:
        body = f"{num}" if den == 1 else f"{num}/{den}"
    else:
        var = "t" if power == 1 else "t" + str(power).translate(_SUPERSCRIPT)
        body = var if num == 1 else f"{num}{var}"
        if den != 1:
            body += f"/{den}"
    return body


def format_poly(coeffs: Sequence[Fraction]) -> str:
    """Human-readable polynomial, highest power first, e.g. ``t³/6 + t² + 1``."""
    parts = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[power])
        if c == 0:
            continue
        body = _term(c, power)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


def format_qp(qp: QuasiPolynomial) -> str:
    """``period d; poly`` when d = 1, otherwise one line per residue."""
    d = period(qp)
    if d == 1:
        return f"period 1; {format_poly(qp.constituents[0])}"
    lines = [f"period {d}"]
    for r in range(d):
        lines.append(f"  t ≡ {r} (mod {d}): {format_poly(qp.constituents[r])}")
    return "\n".join(lines)


__all__ = [
    "P",
    "Q",
    "QuasiPolynomial",
    "ehrhart_of",
    "evaluate",
    "format_poly",
    "format_qp",
    "interpolate",
    "period",
    "qp_add",
    "qp_equal",
    "qp_mul",
    "qp_scale",
    "qp_sub",
]
