"""Bending moment polytope of pentagon spaces, in exact arithmetic.

For ``n = 5`` the two diagonals from the first vertex give a torus action
with moment map ``(x, y) = (l_1, l_2)``.  Its image is the rectangle
``[|r1-r2|, r1+r2] x [|r4-r5|, r4+r5]`` cut by the band
``y >= -x + r3``, ``y >= x - r3``, ``y <= x + r3``.
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .lengths import LengthVector, format_rational

__all__ = [
    "HalfPlane",
    "MomentPolygon",
    "halfplanes",
    "intersect",
    "moment_polygon",
    "classify_shape",
    "emit",
]

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class HalfPlane:
    """``a x + b y <= c``."""

    a: Fraction
    b: Fraction
    c: Fraction
    label: str = ""

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise InputError("half-plane needs a nonzero normal")

    def value(self, p: Point) -> Fraction:
        return self.a * p[0] + self.b * p[1] - self.c

    def contains(self, p: Point) -> bool:
        return self.value(p) <= 0

    def on_boundary(self, p: Point) -> bool:
        return self.value(p) == 0


def halfplanes(r: LengthVector) -> list[HalfPlane]:
    """The seven constraints, in the order: rectangle (x low, x high,
    y low, y high), then ``y >= -x + r3``, ``y >= x - r3``, ``y <= x + r3``."""
    if r.n != 5:
        raise InputError(f"moment polytopes are built for pentagons only (n={r.n})")
    r1, r2, r3, r4, r5 = r.entries
    f = format_rational
    return [
        HalfPlane(-1, 0, -abs(r1 - r2), f"x >= {f(abs(r1 - r2))}"),
        HalfPlane(1, 0, r1 + r2, f"x <= {f(r1 + r2)}"),
        HalfPlane(0, -1, -abs(r4 - r5), f"y >= {f(abs(r4 - r5))}"),
        HalfPlane(0, 1, r4 + r5, f"y <= {f(r4 + r5)}"),
        HalfPlane(-1, -1, -r3, f"y >= -x + {f(r3)}"),
        HalfPlane(1, -1, r3, f"y >= x - {f(r3)}"),
        HalfPlane(-1, 1, r3, f"y <= x + {f(r3)}"),
    ]


@dataclass(frozen=True)
class MomentPolygon:
    """Convex polygon with exact vertices, counterclockwise from the
    lexicographically smallest one.

    ``active[i]`` is the index (into ``planes``) of a constraint tight along
    the edge from ``vertices[i]`` to ``vertices[i + 1]``.  A segment or a
    point (``degenerate``) arises only for length vectors on a wall.
    """

    vertices: tuple[Point, ...]
    active: tuple[int, ...]
    planes: tuple[HalfPlane, ...]
    bounded: bool = True

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) < 2:
            return []
        if len(v) == 2:
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def contains(self, p: Point) -> bool:
        return all(h.contains(p) for h in self.planes)

    def scaled(self, factor) -> list[Point]:
        factor = Fraction(factor)
        return [(factor * x, factor * y) for x, y in self.vertices]


def _line_intersection(h1: HalfPlane, h2: HalfPlane) -> Point | None:
    det = h1.a * h2.b - h1.b * h2.a
    if det == 0:
        return None
    x = (h1.c * h2.b - h1.b * h2.c) / det
    y = (h1.a * h2.c - h1.c * h2.a) / det
    return (x, y)


def _bounding_box(planes: Sequence[HalfPlane]) -> list[Point]:
    # every vertex of the arrangement lies strictly inside this box
    extent = Fraction(1)
    for i, h1 in enumerate(planes):
        extent = max(extent, abs(h1.c) / max(abs(h1.a), abs(h1.b)))
        for h2 in planes[i + 1:]:
            p = _line_intersection(h1, h2)
            if p is not None:
                extent = max(extent, abs(p[0]), abs(p[1]))
    b = 2 * extent + 1
    return [(-b, -b), (b, -b), (b, b), (-b, b)]


def _clip(poly: list[Point], h: HalfPlane) -> list[Point]:
    out: list[Point] = []
    if not poly:
        return out
    prev = poly[-1]
    prev_val = h.value(prev)
    for cur in poly:
        cur_val = h.value(cur)
        if cur_val <= 0:
            if prev_val > 0:
                out.append(_cut(prev, cur, prev_val, cur_val))
            out.append(cur)
        elif prev_val <= 0 and prev_val != 0:
            out.append(_cut(prev, cur, prev_val, cur_val))
        prev, prev_val = cur, cur_val
    return out


def _cut(p: Point, q: Point, vp: Fraction, vq: Fraction) -> Point:
    t = vp / (vp - vq)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _tidy(poly: list[Point]) -> list[Point]:
    """Drop repeated and collinear vertices; rotate to start at the minimum."""
    pts: list[Point] = []
    for p in poly:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) > 2 and all(_cross(pts[0], pts[1], p) == 0 for p in pts[2:]):
        pts = [min(pts), max(pts)]
    if len(pts) == 2:
        return sorted(pts)
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            if _cross(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) == 0:
                del pts[i]
                changed = True
                break
    if pts:
        start = pts.index(min(pts))
        pts = pts[start:] + pts[:start]
    return pts


def intersect(planes: Sequence[HalfPlane]) -> MomentPolygon | None:
    """Exact intersection of half-planes, or None when it is empty.

    A large box is clipped by each half-plane in turn.  If the result still
    touches the box the intersection was unbounded and ``bounded`` is False.
    """
    planes = tuple(planes)
    box = _bounding_box(planes)
    poly = list(box)
    for h in planes:
        poly = _clip(poly, h)
        if not poly:
            return None
    pts = _tidy(poly)
    if not pts:
        return None
    limit = box[2][0]
    bounded = all(abs(x) < limit and abs(y) < limit for x, y in pts)
    active = []
    for p, q in zip(pts, pts[1:] + pts[:1]) if len(pts) > 1 else []:
        tight = [k for k, h in enumerate(planes) if h.on_boundary(p) and h.on_boundary(q)]
        active.append(tight[0] if tight else -1)
    if len(pts) == 2:
        active = active[:1]
    return MomentPolygon(tuple(pts), tuple(active), planes, bounded)


def moment_polygon(r: LengthVector) -> MomentPolygon | None:
    return intersect(halfplanes(r))


def _parallel(p: tuple[Point, Point], q: tuple[Point, Point]) -> bool:
    dx1, dy1 = p[1][0] - p[0][0], p[1][1] - p[0][1]
    dx2, dy2 = q[1][0] - q[0][0], q[1][1] - q[0][1]
    return dx1 * dy2 - dy1 * dx2 == 0


def classify_shape(poly: MomentPolygon | None) -> dict:
    """Edge and vertex counts and the pairs of parallel non-adjacent edges."""
    if poly is None:
        raise InputError("empty moment polytope has no shape")
    edges = poly.edges()
    m = len(edges)
    pairs = []
    if m >= 4:
        for i in range(m):
            for j in range(i + 2, m):
                if i == 0 and j == m - 1:
                    continue
                if _parallel(edges[i], edges[j]):
                    pairs.append((i, j))
    return {
        "edge_count": m,
        "vertex_count": len(poly.vertices),
        "parallel_opposite_pairs": pairs,
    }


def _json_document(poly: MomentPolygon) -> dict:
    f = format_rational
    return {
        "vertices": [[f(x), f(y)] for x, y in poly.vertices],
        "edges": [
            {"from": i, "to": (i + 1) % len(poly.vertices),
             "constraint": poly.planes[k].label if k >= 0 else None}
            for i, k in enumerate(poly.active)
        ],
        "degenerate": poly.degenerate,
    }


def _frame(poly: MomentPolygon) -> tuple[float, float, float, float]:
    """Rectangle spanned by the axis-parallel constraints, else the vertex box."""
    xs = [float(h.c / h.a) for h in poly.planes if h.b == 0]
    ys = [float(h.c / h.b) for h in poly.planes if h.a == 0]
    if len(xs) < 2:
        xs = [float(x) for x, _ in poly.vertices]
    if len(ys) < 2:
        ys = [float(y) for _, y in poly.vertices]
    return min(xs), max(xs), min(ys), max(ys)


def _svg_document(poly: MomentPolygon) -> str:
    x0, x1, y0, y1 = _frame(poly)
    padx = max(0.1 * (x1 - x0), 0.1)
    pady = max(0.1 * (y1 - y0), 0.1)
    x0, x1, y0, y1 = x0 - padx, x1 + padx, y0 - pady, y1 + pady
    width, height = x1 - x0, y1 - y0
    stroke = 0.005 * max(width, height)

    def fmt(v: float) -> str:
        return f"{v:.6f}".rstrip("0").rstrip(".") if v != 0 else "0"

    def pt(x: float, y: float) -> tuple[str, str]:
        # flip y so the picture reads with y upwards
        return fmt(x), fmt(y0 + y1 - y)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{fmt(x0)} {fmt(y0)} {fmt(width)} {fmt(height)}">',
    ]
    for h in poly.planes:
        a, b, c = float(h.a), float(h.b), float(h.c)
        if b != 0:
            (xa, ya), (xb, yb) = [pt(x, (c - a * x) / b) for x in (x0, x1)]
        else:
            (xa, ya), (xb, yb) = [pt(c / a, y) for y in (y0, y1)]
        lines.append(
            f'  <line x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" stroke="#888888" '
            f'stroke-width="{fmt(stroke)}" stroke-dasharray="{fmt(4 * stroke)}">'
            f"<title>{escape(h.label)}</title></line>"
        )
    points = " ".join(",".join(pt(float(x), float(y))) for x, y in poly.vertices)
    if poly.degenerate:
        lines.append(f'  <polyline points="{points}" fill="none" stroke="#1f4e79" '
                     f'stroke-width="{fmt(3 * stroke)}"/>')
    else:
        lines.append(f'  <polygon points="{points}" fill="#9ecae1" fill-opacity="0.7" '
                     f'stroke="#1f4e79" stroke-width="{fmt(2 * stroke)}"/>')
    for x, y in poly.vertices:
        cx, cy = pt(float(x), float(y))
        lines.append(f'  <circle cx="{cx}" cy="{cy}" r="{fmt(2 * stroke)}" fill="#1f4e79">'
                     f"<title>({format_rational(x)}, {format_rational(y)})</title></circle>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit(poly: MomentPolygon | None, format: str = "json") -> str:
    """Render as ``"json"`` (exact vertices) or ``"svg"``; output is deterministic."""
    if poly is None:
        raise InputError("cannot emit an empty moment polytope")
    if format == "json":
        return json.dumps(_json_document(poly), sort_keys=False)
    if format == "svg":
        return _svg_document(poly)
    raise InputError(f"unknown format {format!r}; expected 'json' or 'svg'")
