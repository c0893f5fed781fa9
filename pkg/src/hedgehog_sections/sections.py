"""Chords cut by supporting lines and areas cut by slabs, for convex polygons around a hedgehog."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from .errors import DegenerateDirection, InvertedSlab
from .polygon import ConvexPolygon, clip_halfplane, shoelace_area
from .support_fn import (
    TWO_PI,
    Direction,
    DirectionLike,
    Point,
    SupportFunction,
    SupportingLine,
    as_direction,
    det2,
    dot,
    support_points,
    supporting_line,
)
from .tolerances import DEFAULT_TOL, ToleranceConfig


class VertexPolicy(str, Enum):
    COLLAPSE = "collapse"   # a vertex on the line counts as a zero-length edge crossing
    REPORT = "report"       # return DegenerateVertexTouch / raise DegenerateDirection


@dataclass(frozen=True)
class SectionConfig:
    tolerances: ToleranceConfig = DEFAULT_TOL
    vertex_policy: VertexPolicy = VertexPolicy.COLLAPSE

    def __post_init__(self):
        object.__setattr__(self, "vertex_policy", VertexPolicy(self.vertex_policy))


DEFAULT_CFG = SectionConfig()


@dataclass(frozen=True)
class Segment:
    p_start: Point
    p_end: Point

    @property
    def length(self) -> float:
        return math.dist(self.p_start, self.p_end)


@dataclass(frozen=True)
class DegenerateVertexTouch:
    """The line passes within tolerance of one or more polygon vertices."""

    line: SupportingLine
    vertices: tuple


ChordResult = Union[Segment, DegenerateVertexTouch, None]


@dataclass(frozen=True)
class Slab:
    """``lower <= <x, xi> <= upper``."""

    direction: Direction
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _touching_vertices(P: ConvexPolygon, L: SupportingLine, eps: float) -> tuple:
    return tuple(v for v in P.vertices if abs(L.residual(v)) <= eps)


def _extremes(points, perp) -> Segment:
    lo = min(points, key=lambda p: dot(p, perp))
    hi = max(points, key=lambda p: dot(p, perp))
    return Segment(lo, hi)


def chord(P: ConvexPolygon, L: SupportingLine, cfg: SectionConfig = DEFAULT_CFG) -> ChordResult:
    """Intersection of the line with P, solved edge by edge.

    Each edge ``u + s l`` meets the line at ``s = (h - <u, xi>) / <l, xi>``;
    edges with ``|<l, xi>|`` below tolerance are skipped.
    """
    eps = cfg.tolerances.geometric
    xi = L.direction.vector
    touched = _touching_vertices(P, L, eps)
    if touched and cfg.vertex_policy is VertexPolicy.REPORT:
        return DegenerateVertexTouch(L, touched)
    pts = list(touched)
    for e in P.edges():
        denom = dot(e.dir, xi)
        if abs(denom) < eps:
            continue
        s = (L.offset - dot(e.base, xi)) / denom
        if 0.0 <= s <= e.length:
            pts.append(e.base + e.dir * s)
    if not pts:
        return None
    return _extremes(pts, L.direction.perp)


def chord_by_clipping(P: ConvexPolygon, L: SupportingLine, cfg: SectionConfig = DEFAULT_CFG) -> ChordResult:
    """Independent route: clip P to the strip of half-width tol around L and read off its spine.

    At each end of the thin strip the upper and lower boundary crossings sit on
    the same polygon edge, so their midpoint lies on L.
    """
    eps = cfg.tolerances.geometric
    d = L.direction
    touched = _touching_vertices(P, L, eps)
    if touched and cfg.vertex_policy is VertexPolicy.REPORT:
        return DegenerateVertexTouch(L, touched)
    strip = clip_halfplane(P, d, L.offset + eps, keep_below=True, tol=cfg.tolerances)
    strip = clip_halfplane(strip, d, L.offset - eps, keep_below=False, tol=cfg.tolerances)
    if strip is None:
        return None
    perp = d.perp
    upper = [v for v in strip.vertices if L.residual(v) > 0.0]
    lower = [v for v in strip.vertices if L.residual(v) <= 0.0]
    if not upper or not lower:
        # vertex inside the strip; fall back to projecting everything onto L
        proj = [v - d.vector * L.residual(v) for v in strip.vertices]
        return _extremes(proj, perp)
    u, l = _extremes(upper, perp), _extremes(lower, perp)
    start = (u.p_start + l.p_start) * 0.5
    end = (u.p_end + l.p_end) * 0.5
    return Segment(start - d.vector * L.residual(start), end - d.vector * L.residual(end))


def chord_length(
    P: ConvexPolygon, h: SupportFunction, d: DirectionLike, cfg: SectionConfig = DEFAULT_CFG
) -> float:
    d = as_direction(d)
    res = chord(P, supporting_line(h, d), cfg)
    if res is None:
        return 0.0
    if isinstance(res, DegenerateVertexTouch):
        raise DegenerateDirection(d.theta, "supporting line passes through a vertex")
    return res.length


def slab_region(h: SupportFunction, d: DirectionLike, tol: ToleranceConfig = DEFAULT_TOL) -> Slab:
    """Region between the opposite supporting lines: ``-h(theta+pi) <= <x, xi> <= h(theta)``."""
    d = as_direction(d)
    slab = Slab(d, -h(d.theta + math.pi), h(d.theta))
    if slab.upper < slab.lower - tol.geometric:
        raise InvertedSlab(slab)
    return slab


def slab_clip(P: ConvexPolygon, S: Slab, tol: ToleranceConfig = DEFAULT_TOL) -> Optional[ConvexPolygon]:
    if S.upper < S.lower - tol.geometric:
        raise InvertedSlab(S)
    R = clip_halfplane(P, S.direction, S.upper, keep_below=True, tol=tol)
    return clip_halfplane(R, S.direction, S.lower, keep_below=False, tol=tol)


def slab_area(
    P: ConvexPolygon, h: SupportFunction, d: DirectionLike, cfg: SectionConfig = DEFAULT_CFG
) -> float:
    R = slab_clip(P, slab_region(h, d, cfg.tolerances), cfg.tolerances)
    return 0.0 if R is None else shoelace_area(R.vertices)


def _param(h_val: float, base, direction, xi, eps: float, theta: float) -> float:
    denom = dot(direction, xi)
    if abs(denom) < eps:
        raise DegenerateDirection(theta, "line parallel to an edge direction")
    return (h_val - dot(base, xi)) / denom


def wedge_points(u, l1, m1, h: SupportFunction, d: DirectionLike, tol: ToleranceConfig = DEFAULT_TOL):
    """``(p1, q1)``: where the line meets ``u + s l1`` and ``u + t m1``."""
    d = as_direction(d)
    xi, hv = d.vector, h(d.theta)
    b = _param(hv, u, l1, xi, tol.geometric, d.theta)
    a = _param(hv, u, m1, xi, tol.geometric, d.theta)
    u = Point(*u)
    return u + Point(*l1) * b, u + Point(*m1) * a


def wedge_area_triangle(u, dirs, h: SupportFunction, d: DirectionLike, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Signed area of triangle ``(u, q1, p1)`` in closed form.

    ``(h - <u, xi>)^2 / (<l1, xi><m1, xi>) * |m1, l1| / 2``
    """
    l1, m1 = dirs
    d = as_direction(d)
    xi = d.vector
    dl, dm = dot(l1, xi), dot(m1, xi)
    if abs(dl) < tol.geometric or abs(dm) < tol.geometric:
        raise DegenerateDirection(d.theta, "line parallel to an edge direction")
    r = h(d.theta) - dot(u, xi)
    return 0.5 * r * r / (dl * dm) * det2(m1, l1)


def quad_points(v, w, l2, m2, h: SupportFunction, d: DirectionLike, tol: ToleranceConfig = DEFAULT_TOL):
    """``(p2, q2)``: where the line meets ``v + s l2`` and ``w + t m2``."""
    d = as_direction(d)
    xi, hv = d.vector, h(d.theta)
    c = _param(hv, v, l2, xi, tol.geometric, d.theta)
    dd = _param(hv, w, m2, xi, tol.geometric, d.theta)
    return Point(*v) + Point(*l2) * c, Point(*w) + Point(*m2) * dd


def wedge_area_quad(v, w, dirs, h: SupportFunction, d: DirectionLike, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Signed area of quadrilateral ``(v, w, q2, p2)`` in closed form.

    ``(c |w-v, l2| + d |w-v, m2| + c d |m2, l2|) / 2`` with c, d the chord
    parameters along ``l2`` from v and along ``m2`` from w.
    """
    l2, m2 = dirs
    d_ = as_direction(d)
    xi, hv = d_.vector, h(d_.theta)
    c = _param(hv, v, l2, xi, tol.geometric, d_.theta)
    dd = _param(hv, w, m2, xi, tol.geometric, d_.theta)
    wv = Point(w[0] - v[0], w[1] - v[1])
    return 0.5 * (c * det2(wv, l2) + dd * det2(wv, m2) + c * dd * det2(m2, l2))


def sample_thetas(h: SupportFunction, n: int) -> np.ndarray:
    """``n`` uniform angles with kinked breakpoints removed."""
    thetas = np.linspace(0.0, TWO_PI, n, endpoint=False)
    kinks = h.kinks()
    if kinks:
        keep = [t for t in thetas if not h.kink_at(t)]
        thetas = np.asarray(keep)
    return thetas


def hedgehog_inside(
    P: ConvexPolygon, h: SupportFunction, n_samples: int = 1024, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """Every sampled support point lies strictly inside P with margin tol."""
    if n_samples < 3:
        raise ValueError("n_samples must be at least 3")
    pts = support_points(h, sample_thetas(h, n_samples))
    for e in P.edges():
        # signed distance of every sample to this edge's line, > 0 inside
        dist = e.dir.x * (pts[:, 1] - e.base.y) - e.dir.y * (pts[:, 0] - e.base.x)
        if np.min(dist) <= tol.geometric:
            return False
    return True


def _below_areas(verts: np.ndarray, xis: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Area of ``P ∩ {<x, xi> <= offset}`` for many directions at once.

    Each edge contributes ``(s1 - s0) |a, b|`` for its kept parameter range
    ``[s0, s1]``, and the cut closes with ``|exit, entry|``.
    """
    a = verts
    b = np.roll(verts, -1, axis=0)
    cross_ab = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]                  # (n,)
    da = xis @ a.T - offsets[:, None]                                 # (m, n)
    db = np.roll(da, -1, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        s_star = np.where(da != db, da / (da - db), 0.0)
    s0 = np.where(da <= 0.0, 0.0, s_star)
    s1 = np.where(db <= 0.0, 1.0, s_star)
    keep = ~((da > 0.0) & (db > 0.0))
    total = np.sum(np.where(keep, s1 - s0, 0.0) * cross_ab, axis=1)
    exiting = (da <= 0.0) & (db > 0.0)
    entering = (da > 0.0) & (db <= 0.0)
    pts = a[None, :, :] + s_star[:, :, None] * (b - a)[None, :, :]     # (m, n, 2)
    ex = np.sum(np.where(exiting[:, :, None], pts, 0.0), axis=1)
    en = np.sum(np.where(entering[:, :, None], pts, 0.0), axis=1)
    total += ex[:, 0] * en[:, 1] - ex[:, 1] * en[:, 0]
    return 0.5 * total


def slab_areas(
    P: ConvexPolygon, h: SupportFunction, thetas, cfg: SectionConfig = DEFAULT_CFG
) -> tuple:
    """Vectorized :func:`slab_area`; returns ``(areas, inverted_mask)`` with NaN where inverted."""
    thetas = np.asarray(thetas, dtype=float)
    verts = np.asarray(P.vertices, dtype=float)
    xis = np.column_stack([np.cos(thetas), np.sin(thetas)])
    upper = h.values(thetas)
    lower = -h.values(thetas + math.pi)
    inverted = upper < lower - cfg.tolerances.geometric
    areas = _below_areas(verts, xis, upper) - _below_areas(verts, xis, np.minimum(lower, upper))
    areas = np.where(areas <= cfg.tolerances.merge, 0.0, areas)
    areas[inverted] = np.nan
    return areas, inverted


def chord_lengths(
    P: ConvexPolygon, h: SupportFunction, thetas, cfg: SectionConfig = DEFAULT_CFG
) -> tuple:
    """Vectorized :func:`chord_length`; returns ``(lengths, degenerate_mask)``.

    Under the report policy degenerate directions carry NaN.
    """
    eps = cfg.tolerances.geometric
    thetas = np.asarray(thetas, dtype=float)
    hv = h.values(thetas)
    xis = np.column_stack([np.cos(thetas), np.sin(thetas)])
    perps = np.column_stack([-xis[:, 1], xis[:, 0]])
    verts = np.asarray(P.vertices, dtype=float)
    nxt = np.roll(verts, -1, axis=0)
    lengths = np.linalg.norm(nxt - verts, axis=1)
    dirs = (nxt - verts) / lengths[:, None]

    vdot = xis @ verts.T                                   # (m, n)
    touched = np.abs(vdot - hv[:, None]) <= eps
    vpos = perps @ verts.T
    lo = np.where(touched, vpos, np.inf).min(axis=1)
    hi = np.where(touched, vpos, -np.inf).max(axis=1)

    denom = xis @ dirs.T
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (hv[:, None] - vdot) / denom
    ok = (np.abs(denom) >= eps) & (s >= 0.0) & (s <= lengths[None, :])
    s = np.where(ok, s, 0.0)
    px = verts[None, :, 0] + dirs[None, :, 0] * s
    py = verts[None, :, 1] + dirs[None, :, 1] * s
    pos = px * perps[:, 0:1] + py * perps[:, 1:2]
    lo = np.minimum(lo, np.where(ok, pos, np.inf).min(axis=1))
    hi = np.maximum(hi, np.where(ok, pos, -np.inf).max(axis=1))
    out = np.where(np.isfinite(lo), hi - lo, 0.0)
    degenerate = touched.any(axis=1)
    if cfg.vertex_policy is VertexPolicy.REPORT:
        out[degenerate] = np.nan
    return out, degenerate


__all__ = [
    "VertexPolicy",
    "SectionConfig",
    "Segment",
    "DegenerateVertexTouch",
    "Slab",
    "chord",
    "chord_by_clipping",
    "chord_length",
    "slab_region",
    "slab_clip",
    "slab_area",
    "wedge_points",
    "wedge_area_triangle",
    "quad_points",
    "wedge_area_quad",
    "hedgehog_inside",
    "chord_lengths",
    "slab_areas",
    "sample_thetas",
]
