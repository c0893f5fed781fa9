"""Convex polygons: validation, symmetry, support values, shoelace area, half-plane clipping."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import Degenerate, NotConvex
from .support_fn import DirectionLike, Point, as_direction, det2, dot
from .tolerances import DEFAULT_TOL, ToleranceConfig


def shoelace_area(pts: Sequence) -> float:
    """Signed area ``1/2 sum |x_i, x_{i+1}|``; positive for counterclockwise input."""
    n = len(pts)
    s = 0.0
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


@dataclass(frozen=True)
class Edge:
    base: Point
    dir: Point
    length: float

    @property
    def end(self) -> Point:
        return self.base + self.dir * self.length


def _lexmin_rotation(pts: list) -> list:
    k = min(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
    return pts[k:] + pts[:k]


def _dedupe(pts: list, eps: float) -> list:
    out = []
    for p in pts:
        if not out or math.dist(p, out[-1]) > eps:
            out.append(p)
    while len(out) > 1 and math.dist(out[0], out[-1]) <= eps:
        out.pop()
    return out


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, vertices counterclockwise from the lexicographic minimum.

    Build it with :func:`from_vertices`; the bare constructor trusts its input.
    """

    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self) -> list:
        vs = self.vertices
        out = []
        for i, a in enumerate(vs):
            b = vs[(i + 1) % len(vs)]
            d = b - a
            length = d.norm()
            out.append(Edge(a, d * (1.0 / length), length))
        return out

    @property
    def area(self) -> float:
        return shoelace_area(self.vertices)

    def to_dict(self) -> dict:
        return {"vertices": [[v.x, v.y] for v in self.vertices]}

    @classmethod
    def from_dict(cls, data: dict, tol: ToleranceConfig = DEFAULT_TOL) -> "ConvexPolygon":
        return from_vertices(data["vertices"], tol)


def from_vertices(pts: Sequence, tol: ToleranceConfig = DEFAULT_TOL) -> ConvexPolygon:
    """Validate and canonicalize a convex polygon.

    Clockwise input is reversed, consecutive duplicates are merged and
    collinear middle vertices are dropped.  Raises Degenerate or NotConvex.
    """
    pts = _dedupe([Point(float(x), float(y)) for x, y in pts], tol.merge)
    if len(pts) < 3:
        raise Degenerate(f"need at least 3 distinct vertices, got {len(pts)}")
    area = shoelace_area(pts)
    if abs(area) <= tol.geometric:
        raise Degenerate("polygon has zero area")
    if area < 0:
        pts.reverse()

    # drop collinear pass-through vertices; a reversal (spike) is not collinear-mergeable
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            ab, bc = b - a, c - b
            cross = det2(ab, bc)
            if abs(cross) <= tol.geometric * max(ab.norm(), bc.norm(), 1.0):
                if dot(ab, bc) < 0:
                    raise NotConvex(f"edge doubles back at vertex {tuple(b)}")
                del pts[i]
                changed = True
                break
    if len(pts) < 3:
        raise Degenerate("polygon collapses to a segment")

    turning = 0.0
    for i in range(len(pts)):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
        ab, bc = b - a, c - b
        cross = det2(ab, bc)
        if cross < 0:
            raise NotConvex(f"reflex turn at vertex {tuple(b)}")
        turning += math.atan2(cross, dot(ab, bc))
    if abs(turning - 2.0 * math.pi) > 1e-6:
        raise NotConvex("vertex chain winds more than once")
    return ConvexPolygon(tuple(_lexmin_rotation(pts)))


def _trusted(pts: list, eps: float) -> Optional[ConvexPolygon]:
    """Canonicalize a clip result; slivers become None."""
    pts = _dedupe(pts, eps)
    if len(pts) >= 3:
        keep = []
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if abs(det2(b - a, c - b)) > eps * eps:
                keep.append(b)
        pts = keep
    if len(pts) < 3 or shoelace_area(pts) <= eps:
        return None
    return ConvexPolygon(tuple(_lexmin_rotation(pts)))


def polygon_support(P: ConvexPolygon, d: DirectionLike) -> float:
    """``max_v <v, xi>`` over the vertices."""
    xi = as_direction(d).vector
    return max(dot(v, xi) for v in P.vertices)


def contains_point(P: ConvexPolygon, x, strict: bool = True, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    for e in P.edges():
        dist = det2(e.dir, Point(x[0], x[1]) - e.base)  # signed distance, > 0 inside
        if strict and dist <= tol.geometric:
            return False
        if not strict and dist < -tol.geometric:
            return False
    return True


def negate(P: ConvexPolygon) -> ConvexPolygon:
    # point reflection is a rotation by pi, so CCW order survives
    return ConvexPolygon(tuple(_lexmin_rotation([-v for v in P.vertices])))


def same_polygon(P: ConvexPolygon, Q: ConvexPolygon, tol: float = 1e-9) -> bool:
    """Equality as sets: some cyclic rotation matches vertex-for-vertex within tol."""
    a, b = P.vertices, Q.vertices
    if len(a) != len(b):
        return False
    n = len(a)
    for k in range(n):
        if all(
            abs(a[i].x - b[(i + k) % n].x) <= tol and abs(a[i].y - b[(i + k) % n].y) <= tol
            for i in range(n)
        ):
            return True
    return False


def is_origin_symmetric(P: ConvexPolygon, tol: float = 1e-9) -> bool:
    return same_polygon(P, negate(P), tol)


def clip_halfplane(
    P: Optional[ConvexPolygon],
    d: DirectionLike,
    offset: float,
    keep_below: bool = True,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> Optional[ConvexPolygon]:
    """Intersect with ``<x, xi> <= offset`` (or ``>=``); None when nothing survives."""
    if P is None:
        return None
    xi = as_direction(d).vector
    sign = 1.0 if keep_below else -1.0
    vs = P.vertices
    dist = [sign * (dot(v, xi) - offset) for v in vs]
    if max(dist) <= 0.0:
        return P
    out = []
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        da, db = dist[i], dist[(i + 1) % n]
        if da <= 0.0:
            out.append(a)
        if (da < 0.0 < db) or (db < 0.0 < da):
            t = da / (da - db)
            out.append(a + (b - a) * t)
    return _trusted(out, tol.merge)
