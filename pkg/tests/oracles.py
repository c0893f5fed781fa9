"""Independent constructions used as oracles by the section and acceptance tests.

Everything here recomputes a quantity by a route that does not call the
closed form or code path under test (shoelace on explicit vertices, iterated
clipping, brute force over vertices).
"""

import math

import numpy as np

from hedgehog_sections.errors import Degenerate, NotConvex
from hedgehog_sections.polygon import clip_halfplane, from_vertices, shoelace_area
from hedgehog_sections.sections import chord, chord_by_clipping, Segment
from hedgehog_sections.support_fn import Point, SupportFunction, TrigPolynomial, supporting_line


def unit(a):
    return Point(math.cos(a), math.sin(a))


def random_hedgehog(rng, scale=0.3):
    """Small random trig polynomial of degree <= 3, plus a constant."""
    cos = tuple(rng.uniform(-scale, scale, 3))
    sin = tuple(rng.uniform(-scale, scale, 3))
    return SupportFunction.analytic(TrigPolynomial(rng.uniform(-0.5, 0.5), cos, sin))


def random_convex(rng, k_range=(3, 9), radius=(1.5, 4.0)):
    while True:
        k = int(rng.integers(*k_range))
        r = rng.uniform(*radius)
        ang = np.sort(rng.uniform(0, 2 * math.pi, k))
        try:
            return from_vertices([(r * math.cos(a), r * math.sin(a)) for a in ang])
        except (Degenerate, NotConvex):
            continue


def chord_triple(rng, margin=1e-6):
    """(P, h, theta) whose supporting line cuts P away from vertices and edge-parallel directions."""
    while True:
        P, h = random_convex(rng), random_hedgehog(rng)
        theta = rng.uniform(0, 2 * math.pi)
        L = supporting_line(h, theta)
        xi = L.direction.vector
        if any(abs(L.residual(v)) <= margin for v in P.vertices):
            continue
        if any(abs(e.dir.x * xi.x + e.dir.y * xi.y) <= margin for e in P.edges()):
            continue
        return P, h, theta


def chord_endpoint_gap(P, h, theta):
    """Max endpoint distance between the parametric chord and the clipped-strip chord."""
    L = supporting_line(h, theta)
    a, b = chord(P, L), chord_by_clipping(P, L)
    if a is None or b is None:
        return 0.0 if a is b else math.inf
    assert isinstance(a, Segment) and isinstance(b, Segment)
    return max(math.dist(a.p_start, b.p_start), math.dist(a.p_end, b.p_end))


def _admissible_dirs(rng, xi, floor=0.15):
    while True:
        l, m = unit(rng.uniform(0, 2 * math.pi)), unit(rng.uniform(0, 2 * math.pi))
        if abs(l.x * xi.x + l.y * xi.y) < floor or abs(m.x * xi.x + m.y * xi.y) < floor:
            continue
        if abs(l.x * m.y - l.y * m.x) < floor:
            continue
        return l, m


def wedge_config(rng):
    """(u, l1, m1, h, theta) with non-vanishing denominators and a non-trivial wedge."""
    while True:
        theta = rng.uniform(0, 2 * math.pi)
        xi = unit(theta)
        h = random_hedgehog(rng, 1.0)
        u = Point(*rng.uniform(-3, 3, 2))
        if abs(h(theta) - (u.x * xi.x + u.y * xi.y)) < 0.1:
            continue
        l1, m1 = _admissible_dirs(rng, xi)
        return u, l1, m1, h, theta


def quad_config(rng):
    """(v, w, l2, m2, h, theta) with v, w off the line on the same side."""
    while True:
        theta = rng.uniform(0, 2 * math.pi)
        xi = unit(theta)
        h = random_hedgehog(rng, 1.0)
        v, w = Point(*rng.uniform(-3, 3, 2)), Point(*rng.uniform(-3, 3, 2))
        rv = h(theta) - (v.x * xi.x + v.y * xi.y)
        rw = h(theta) - (w.x * xi.x + w.y * xi.y)
        if rv * rw <= 0 or min(abs(rv), abs(rw)) < 0.1 or math.dist(v, w) < 0.1:
            continue
        l2, m2 = _admissible_dirs(rng, xi)
        return v, w, l2, m2, h, theta


def line_param(h_val, base, direction, xi):
    """Solve <base + s direction, xi> = h_val for s."""
    return (h_val - (base.x * xi.x + base.y * xi.y)) / (direction.x * xi.x + direction.y * xi.y)


def triangle_by_shoelace(u, l1, m1, h, theta):
    xi = unit(theta)
    hv = h(theta)
    p1 = u + l1 * line_param(hv, u, l1, xi)
    q1 = u + m1 * line_param(hv, u, m1, xi)
    return shoelace_area([u, q1, p1])


def quad_by_shoelace(v, w, l2, m2, h, theta):
    xi = unit(theta)
    hv = h(theta)
    p2 = v + l2 * line_param(hv, v, l2, xi)
    q2 = w + m2 * line_param(hv, w, m2, xi)
    return shoelace_area([v, w, q2, p2])


def _area(R):
    return 0.0 if R is None else R.area


def slab_decomposition_gap(P, theta, lo, hi, lo2, hi2):
    """|area(P∩S) - area(P∩S∩S2) - area(P∩S minus S2)| with S2 the slab in direction e2.

    The difference region is the disjoint union of the parts of P∩S above
    and below S2, each obtained by one more half-plane clip.
    """
    e2 = math.pi / 2
    S = clip_halfplane(clip_halfplane(P, theta, hi, True), theta, lo, False)
    both = clip_halfplane(clip_halfplane(S, e2, hi2, True), e2, lo2, False)
    above = clip_halfplane(S, e2, hi2, False)
    below = clip_halfplane(S, e2, lo2, True)
    return abs(_area(S) - _area(both) - (_area(above) + _area(below)))
