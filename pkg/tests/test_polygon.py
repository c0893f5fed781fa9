import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hedgehog_sections.errors import Degenerate, NotConvex
from hedgehog_sections.polygon import (
    ConvexPolygon,
    clip_halfplane,
    contains_point,
    from_vertices,
    is_origin_symmetric,
    negate,
    polygon_support,
    same_polygon,
    shoelace_area,
)
from hedgehog_sections.support_fn import det2


def random_convex(rng, k=None):
    k = k or int(rng.integers(3, 9))
    r = rng.uniform(0.5, 5)
    c = rng.uniform(-2, 2, 2)
    ang = np.sort(rng.uniform(0, 2 * math.pi, k))
    pts = [(c[0] + r * math.cos(a), c[1] + r * math.sin(a)) for a in ang]
    try:
        return from_vertices(pts)
    except (Degenerate, NotConvex):
        return random_convex(rng, k)


seeds = st.integers(0, 2**32 - 1)


def winding_number(P, x):
    """Angle-sum winding number, independent of the edge-side predicate."""
    total = 0.0
    vs = P.vertices
    for i in range(len(vs)):
        a = (vs[i][0] - x[0], vs[i][1] - x[1])
        b = (vs[(i + 1) % len(vs)][0] - x[0], vs[(i + 1) % len(vs)][1] - x[1])
        total += math.atan2(det2(a, b), a[0] * b[0] + a[1] * b[1])
    return round(total / (2 * math.pi))


def boundary_distance(P, x):
    best = math.inf
    for e in P.edges():
        w = (x[0] - e.base.x, x[1] - e.base.y)
        s = min(max(w[0] * e.dir.x + w[1] * e.dir.y, 0.0), e.length)
        p = e.base + e.dir * s
        best = min(best, math.dist(p, x))
    return best


# ---- examples

def test_from_vertices_examples(figure_q):
    assert len(figure_q) == 5
    assert figure_q.area == pytest.approx(46.0, abs=1e-12)
    with pytest.raises(Degenerate):
        from_vertices([(0, 0), (1, 0), (2, 0)])
    with pytest.raises(NotConvex):
        from_vertices([(0, 0), (1, 0), (1, 1), (0.5, 0.2), (0, 1)])


def test_from_vertices_canonicalizes():
    cw = from_vertices([(0, 1), (1, 1), (1, 0), (0, 0)])
    assert cw.area > 0
    assert cw.vertices[0] == (0, 0)
    dup = from_vertices([(0, 0), (0, 0), (1, 0), (1, 1), (0.5, 1), (0, 1)])
    assert len(dup) == 4
    with pytest.raises(Degenerate):
        from_vertices([(0, 0), (1, 1), (1, 1 + 1e-14)])


def test_json_round_trip(figure_q):
    back = ConvexPolygon.from_dict(figure_q.to_dict())
    assert back == figure_q


def test_shoelace_examples(figure_q):
    assert shoelace_area([(0, 0), (1, 0), (1, 1), (0, 1)]) == 1.0
    assert shoelace_area(figure_q.vertices) == 46.0
    assert shoelace_area([(0, 0), (0, 1), (1, 1), (1, 0)]) == -1.0


def test_polygon_support_examples(square, figure_q):
    assert polygon_support(square, 0.0) == pytest.approx(1.0)
    assert polygon_support(figure_q, math.pi / 2) == pytest.approx(4.0)
    assert polygon_support(figure_q, math.pi / 4) == pytest.approx(5 / math.sqrt(2), abs=1e-12)


def test_contains_point_examples(square, figure_q):
    assert contains_point(square, (0, 0), strict=True)
    assert not contains_point(square, (1, 0), strict=True)
    assert contains_point(square, (1, 0), strict=False)
    assert not contains_point(figure_q, (0, 4.5))


def test_negate_examples(square, figure_q):
    P = negate(figure_q)
    assert same_polygon(P, from_vertices([(-1, -4), (-3, -2), (-3, 4), (3, 4), (3, -4)]))
    assert same_polygon(negate(square), square)
    tri = from_vertices([(0, 0), (1, 0), (0, 1)])
    assert same_polygon(negate(tri), from_vertices([(0, 0), (-1, 0), (0, -1)]))


def test_is_origin_symmetric_examples(square, figure_q):
    assert is_origin_symmetric(square)
    assert not is_origin_symmetric(figure_q)
    gens = [(2, 0.3), (0.8, 1.9), (-1.1, 1.5)]
    hexagon = from_vertices(gens + [(-x, -y) for x, y in gens])
    assert len(hexagon) == 6 and is_origin_symmetric(hexagon)


def test_clip_examples(square):
    assert clip_halfplane(square, 0.0, 0.0).area == pytest.approx(2.0)
    assert clip_halfplane(square, 0.0, 2.0) is square
    assert clip_halfplane(square, 0.0, -2.0) is None
    assert clip_halfplane(None, 0.0, 1.0) is None


def test_clip_sliver_is_empty(square):
    assert clip_halfplane(square, 0.0, -1.0 + 1e-14) is None


def test_edges_invariants(figure_q):
    vs = figure_q.vertices
    for i, e in enumerate(figure_q.edges()):
        assert abs(e.dir.norm() - 1.0) <= 1e-12
        assert math.dist(e.end, vs[(i + 1) % len(vs)]) <= 1e-9


# ---- properties

def test_contains_point_matches_winding_oracle():
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(1000):
        P = random_convex(rng)
        x = rng.uniform(-8, 8, 2)
        if boundary_distance(P, x) <= 1e-6:
            continue
        inside = winding_number(P, x) != 0
        assert contains_point(P, x, strict=True) == inside
        assert contains_point(P, x, strict=False) == inside
        checked += 1
    assert checked > 900


@given(seeds)
def test_negate_support_identity(seed):
    rng = np.random.default_rng(seed)
    P = random_convex(rng)
    N = negate(P)
    for t in rng.uniform(0, 2 * math.pi, 256):
        assert abs(polygon_support(N, t) - polygon_support(P, t + math.pi)) <= 1e-12
    assert abs(shoelace_area(N.vertices) - shoelace_area(P.vertices)) <= 1e-12
    assert negate(N) == P


@given(seeds, st.floats(0, 2 * math.pi), st.floats(-6, 6))
def test_clip_complement_and_monotonicity(seed, theta, offset):
    P = random_convex(np.random.default_rng(seed))
    below = clip_halfplane(P, theta, offset, keep_below=True)
    above = clip_halfplane(P, theta, offset, keep_below=False)
    a_below = 0.0 if below is None else below.area
    a_above = 0.0 if above is None else above.area
    assert a_below <= P.area + 1e-12 and a_above <= P.area + 1e-12
    assert abs(a_below + a_above - P.area) <= 1e-9


@given(seeds, st.floats(0, 2 * math.pi), st.floats(-6, 6))
def test_clip_result_on_boundary(seed, theta, offset):
    P = random_convex(np.random.default_rng(seed))
    R = clip_halfplane(P, theta, offset)
    if R is None:
        return
    xi = (math.cos(theta), math.sin(theta))
    for v in R.vertices:
        assert v[0] * xi[0] + v[1] * xi[1] <= offset + 1e-9
        assert contains_point(P, v, strict=False)
