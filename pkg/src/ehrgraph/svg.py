"""SVG drawings of a triangulation with an arc system."""

from __future__ import annotations

from .arrangements import ArcSystem, Triangulation
from .errors import MissingLayout

Point = tuple[float, float]

TETRAHEDRON_LAYOUT: dict[int, Point] = {
    0: (150.0, 30.0),
    1: (30.0, 240.0),
    2: (270.0, 240.0),
    3: (150.0, 170.0),
}


def parse_layout(text: str) -> dict[int, Point]:
    """Lines ``vertex x y``; blank lines and ``#`` comments ignored."""
    out = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        v, x, y = line.split()
        out[int(v)] = (float(x), float(y))
    return out


def _inside(p: Point, a: Point, b: Point, c: Point) -> bool:
    def cross(o, u, v):
        return (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0])

    d1, d2, d3 = cross(a, b, p), cross(b, c, p), cross(c, a, p)
    return (d1 >= 0 and d2 >= 0 and d3 >= 0) or (d1 <= 0 and d2 <= 0 and d3 <= 0)


def outer_triangle(tri: Triangulation, layout: dict[int, Point]) -> int:
    """Index of the triangle drawn as the unbounded face."""
    for i, (a, b, c) in enumerate(tri.triangles):
        others = [v for v in tri.vertices if v not in (a, b, c)]
        if all(_inside(layout[v], layout[a], layout[b], layout[c]) for v in others):
            return i
    raise MissingLayout("layout is not a straight-line drawing with a triangular outer face")


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _crossing_xy(tri: Triangulation, layout: dict[int, Point], w: tuple[int, ...], crossing) -> Point:
    e, i = crossing
    u, v = tri.edges[e]
    s = i / (w[e] + 1)
    (x0, y0), (x1, y1) = layout[u], layout[v]
    return (x0 + s * (x1 - x0), y0 + s * (y1 - y0))


def emit_svg(tri: Triangulation, system: ArcSystem | None = None, layout: dict[int, Point] | None = None) -> str:
    """Deterministic SVG document of ``tri`` and the arcs of ``system``.

    Arcs inside bounded faces are chords; arcs of the outer face loop around
    their corner on the outside of the drawing.

    Raises:
        MissingLayout: if no layout is given and ``tri`` is not the tetrahedron.
    """
    if layout is None:
        if set(tri.vertices) != set(TETRAHEDRON_LAYOUT):
            raise MissingLayout("no layout given and no built-in layout applies")
        layout = TETRAHEDRON_LAYOUT
    missing = [v for v in tri.vertices if v not in layout]
    if missing:
        raise MissingLayout(f"layout lacks vertices {missing}")
    outer = outer_triangle(tri, layout)
    xs = [p[0] for p in layout.values()]
    ys = [p[1] for p in layout.values()]
    pad = 80.0
    x0, y0 = min(xs) - pad, min(ys) - pad
    width, height = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
    cx = sum(layout[v][0] for v in tri.triangles[outer]) / 3
    cy = sum(layout[v][1] for v in tri.triangles[outer]) / 3
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(width)} {_fmt(height)}">',
        '<g stroke="black" stroke-width="1.5" fill="none">',
    ]
    for u, v in tri.edges:
        (ax, ay), (bx, by) = layout[u], layout[v]
        lines.append(f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"/>')
    lines.append("</g>")
    lines.append('<g fill="black">')
    for v in tri.vertices:
        x, y = layout[v]
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3"/>')
    lines.append("</g>")
    if system is not None:
        w = system.weights
        lines.append('<g stroke="red" stroke-width="1" fill="none">')
        for ta in system.triangles:
            for corner, a, b in ta.arcs:
                p1 = _crossing_xy(tri, layout, w, a)
                p2 = _crossing_xy(tri, layout, w, b)
                if ta.triangle == outer:
                    px, py = layout[corner]
                    dx, dy = px - cx, py - cy
                    norm = (dx * dx + dy * dy) ** 0.5 or 1.0
                    reach = max(abs(p1[0] - px) + abs(p1[1] - py), abs(p2[0] - px) + abs(p2[1] - py))
                    ctrl = (px + dx / norm * reach * 1.5, py + dy / norm * reach * 1.5)
                else:
                    ctrl = ((p1[0] + p2[0]) / 2, (p1[1] + p2[1]) / 2)
                lines.append(
                    f'<path d="M {_fmt(p1[0])} {_fmt(p1[1])} Q {_fmt(ctrl[0])} {_fmt(ctrl[1])} {_fmt(p2[0])} {_fmt(p2[1])}"/>'
                )
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
