import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hedgehog_sections.errors import DiscontinuousSupportFunction, NonDifferentiableAt
from hedgehog_sections.support_fn import (
    TWO_PI,
    Direction,
    SupportFunction,
    TrigPolynomial,
    derivative,
    envelope_residual,
    evaluate,
    is_centrally_symmetric,
    is_trivial,
    normalize_angle,
    support_point,
    supporting_line,
)

coef = st.floats(-3, 3, allow_nan=False)
angles = st.floats(-20, 20, allow_nan=False)
polys = st.builds(
    TrigPolynomial,
    coef,
    st.lists(coef, max_size=5).map(tuple),
    st.lists(coef, max_size=5).map(tuple),
)


def kinked():
    return SupportFunction.piecewise(
        [((0.0, math.pi), TrigPolynomial(0.77)), ((math.pi, TWO_PI), TrigPolynomial(0.77, (), (-0.1,)))]
    )


# ---- examples

def test_evaluate_examples(disk, sin4, trefoil):
    assert evaluate(disk, 1.23) == 0.77
    assert evaluate(sin4, 0.0) == 0.0
    assert evaluate(trefoil, math.pi / 2) == pytest.approx(-1.0, abs=1e-14)


def test_derivative_examples(disk, sin4, trefoil):
    assert derivative(disk, 2.0) == 0.0
    assert derivative(sin4, 0.0) == pytest.approx(4.0, abs=1e-14)
    assert derivative(trefoil, 0.0) == pytest.approx(6.0, abs=1e-14)


def test_support_point_examples(disk, sin4, trefoil):
    for t in np.linspace(0, TWO_PI, 17):
        x = support_point(disk, t)
        assert x.x == pytest.approx(0.77 * math.cos(t), abs=1e-15)
        assert x.y == pytest.approx(0.77 * math.sin(t), abs=1e-15)
    assert tuple(support_point(sin4, 0.0)) == pytest.approx((0.0, 4.0), abs=1e-14)
    assert tuple(support_point(trefoil, 0.0)) == pytest.approx((1.0, 6.0), abs=1e-14)


def test_envelope_residual_examples():
    h = SupportFunction.constant(1.0)
    assert envelope_residual(h, 0.0, (1.0, 5.0)) == pytest.approx((0.0, 5.0), abs=1e-15)
    assert envelope_residual(h, 0.0, (0.0, 0.0)) == pytest.approx((-1.0, 0.0), abs=1e-15)


def test_supporting_line_examples(disk, sin4, trefoil):
    L = supporting_line(disk, math.pi / 2)
    assert L.offset == 0.77 and abs(L.residual((12.0, 0.77))) <= 1e-12
    L = supporting_line(sin4, 0.0)
    assert L.offset == 0.0 and abs(L.residual((0.0, -3.0))) <= 1e-12
    assert supporting_line(trefoil, 0.0).offset == pytest.approx(1.0, abs=1e-15)
    assert abs(L.residual(L.point_at(2.5))) <= 1e-9


def test_is_trivial_examples(disk, sin4):
    assert is_trivial(SupportFunction.from_coefficients(0.0, (3.0,), (-2.0,)))
    assert not is_trivial(disk)
    assert not is_trivial(sin4)


def test_is_centrally_symmetric_examples(disk, sin4, trefoil):
    assert is_centrally_symmetric(disk)
    assert is_centrally_symmetric(sin4)
    assert not is_centrally_symmetric(trefoil)


def test_piecewise_symmetry_uses_grid():
    q = math.pi / 2
    bump, flat = TrigPolynomial(1.0, (), (0.0, 0.1)), TrigPolynomial(1.0)
    h = SupportFunction.piecewise([((0, q), bump), ((q, 2 * q), flat), ((2 * q, 3 * q), bump), ((3 * q, 4 * q), flat)])
    assert is_centrally_symmetric(h)
    assert not is_centrally_symmetric(kinked())


# ---- breakpoints

def test_discontinuous_rejected():
    with pytest.raises(DiscontinuousSupportFunction):
        SupportFunction.piecewise([((0, math.pi), TrigPolynomial(1.0)), ((math.pi, TWO_PI), TrigPolynomial(2.0))])


def test_kink_is_flagged_and_derivative_raises():
    h = kinked()
    assert h.kink_at(math.pi) and h.kink_at(0.0)
    with pytest.raises(NonDifferentiableAt):
        derivative(h, math.pi)
    with pytest.raises(NonDifferentiableAt):
        support_point(h, 0.0)
    assert evaluate(h, math.pi) == pytest.approx(0.77)


def test_smooth_breakpoint_not_a_kink():
    p = TrigPolynomial(1.0, (0.5,), (0.3,))
    h = SupportFunction.piecewise([((0, 2.0), p), ((2.0, TWO_PI), p)])
    assert h.kinks() == []
    assert derivative(h, 2.0) == pytest.approx(p.derivative()(2.0))


def test_piecewise_arc_may_wrap():
    p = TrigPolynomial(2.0)
    h = SupportFunction.piecewise([((5.0, 1.0 + TWO_PI), p), ((1.0, 5.0), p)])
    assert h(0.0) == 2.0 and h(3.0) == 2.0


# ---- properties

@given(polys, st.lists(angles, min_size=1, max_size=20))
def test_envelope_property(poly, thetas):
    h = SupportFunction.analytic(poly)
    scale = max(1.0, sum(abs(c) for c in poly.cos + poly.sin) + abs(poly.const))
    for t in thetas:
        f, df = envelope_residual(h, t, support_point(h, t))
        assert abs(f) <= 1e-10 * scale and abs(df) <= 1e-10 * scale


@pytest.mark.parametrize("name", ["disk", "sin4", "trefoil"])
def test_derivative_matches_central_difference(name, request):
    h = request.getfixturevalue(name)
    step = 1e-5
    for t in np.random.default_rng(1).uniform(0, TWO_PI, 500):
        fd = (h(t + step) - h(t - step)) / (2 * step)
        assert abs(derivative(h, t) - fd) <= 1e-6


def test_derivative_fd_on_kinked_away_from_kinks():
    h = kinked()
    step = 1e-5
    for t in np.random.default_rng(2).uniform(0, TWO_PI, 500):
        if min(abs(t - k) for k in (0.0, math.pi, TWO_PI)) > 2 * step:
            assert abs(derivative(h, t) - (h(t + step) - h(t - step)) / (2 * step)) <= 1e-6


@given(st.floats(0.01, 10), st.floats(-50, 50))
def test_disk_traces_circle(t, theta):
    h = SupportFunction.constant(t)
    assert abs(support_point(h, theta).norm() - t) <= 1e-12


@given(polys, st.floats(0, TWO_PI, exclude_max=True))
def test_periodicity_exact_on_canonical_angle(poly, theta):
    h = SupportFunction.analytic(poly)
    shifted = theta + TWO_PI
    if normalize_angle(shifted) == theta:
        assert h(shifted) == h(theta)
    assert abs(h(shifted) - h(theta)) <= 1e-12 * max(1.0, abs(h(theta)))


def test_periodicity_piecewise():
    h = kinked()
    for t in np.random.default_rng(3).uniform(-10, 10, 200):
        assert evaluate(h, t) == evaluate(h, normalize_angle(t))
        assert evaluate(h, t) == evaluate(h, Direction(t))


@given(polys, st.floats(0.3, 5.9))
def test_analytic_extension_consistency(poly, cut):
    h = SupportFunction.piecewise([((0.0, cut), poly), ((cut, TWO_PI), poly)])
    window = np.linspace(cut - 0.2, cut + 0.2, 100)
    for t in window:
        assert h.extend(0, t) == pytest.approx(h.extend(1, t), abs=1e-12)
        assert h.extend(0, t) == pytest.approx(h(t), abs=1e-12)


@given(polys, polys, st.floats(-10, 10))
def test_trig_arithmetic_closure(p, q, t):
    scale = 1 + sum(map(abs, p.cos + p.sin + (p.const,))) * (1 + sum(map(abs, q.cos + q.sin + (q.const,))))
    assert (p + q)(t) == pytest.approx(p(t) + q(t), abs=1e-12 * scale)
    assert (p - q)(t) == pytest.approx(p(t) - q(t), abs=1e-12 * scale)
    assert (p * q)(t) == pytest.approx(p(t) * q(t), abs=1e-11 * scale)


@given(polys, st.floats(-10, 10))
def test_vectorized_values_match_scalar(p, t):
    h = SupportFunction.analytic(p)
    assert h.values(np.array([t]))[0] == pytest.approx(h(t), abs=1e-12)


@given(polys)
def test_json_round_trip_single(poly):
    h = SupportFunction.analytic(poly)
    data = json.loads(json.dumps(h.to_dict()))
    assert "arc" not in data["pieces"][0]
    assert SupportFunction.from_dict(data).pieces[0].poly.isclose(h.pieces[0].poly)


def test_json_round_trip_piecewise():
    h = kinked()
    back = SupportFunction.from_dict(json.loads(json.dumps(h.to_dict())))
    for t in np.linspace(0, TWO_PI, 50):
        assert back(t) == h(t)
    assert back.kinks() == pytest.approx(h.kinks())
