from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strategies import sphere_points
from tcbeta import geometry as geo
from tcbeta.errors import AntipodalInput, AtPole, DiscontinuousJoin, EvenDimension, InvalidPoint, OutOfRange

T = np.linspace(0.0, 1.0, 101)


def test_unit_point_validation():
    p = geo.unit_point([0.0, 0.0, 1.0 + 1e-8])
    assert abs(np.linalg.norm(p) - 1.0) < 1e-15
    with pytest.raises(InvalidPoint):
        geo.unit_point([1.0, 1.0])
    with pytest.raises(InvalidPoint):
        geo.unit_point([1.0])
    with pytest.raises(InvalidPoint):
        geo.unit_point([np.nan, 0.0])


def test_poles():
    assert list(geo.pole(1, 2)) == [0.0, 0.0, 1.0]
    assert list(geo.pole(-1, 1)) == [0.0, -1.0]


@given(sphere_points(3), sphere_points(3))
def test_angle_between_symmetric_and_bounded(x, y):
    a = geo.angle_between(x, y)
    assert 0.0 <= a <= np.pi + 1e-12
    assert a == pytest.approx(geo.angle_between(y, x), abs=1e-12)
    assert geo.angle_between(x, -y) == pytest.approx(np.pi - a, abs=1e-9)


@given(sphere_points(2), sphere_points(2))
def test_slerp_endpoints_and_norm(x, y):
    if float(np.dot(x, y)) <= -1 + 1e-6:
        with pytest.raises(AntipodalInput):
            geo.Slerp(x, -x)
        return
    pts = geo.slerp(x, y, T)
    assert np.allclose(pts[0], x, atol=1e-12)
    assert np.allclose(pts[-1], y, atol=1e-12)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    # constant speed
    steps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    assert np.ptp(steps) < 1e-9


def test_slerp_rejects_antipodal():
    x = geo.unit_point([1.0, 0.0, 0.0])
    with pytest.raises(AntipodalInput):
        geo.slerp(x, -x, 0.5)


@given(sphere_points(3))
def test_stereographic_roundtrip(x):
    for s in (1, -1):
        if np.linalg.norm(x - geo.pole(s, 3)) < 1e-6:
            continue
        u = geo.stereo_project(s, x)
        assert np.allclose(geo.stereo_unproject(s, u), x, atol=1e-9)


def test_stereographic_pole_and_antipole():
    n = geo.pole(1, 2)
    with pytest.raises(AtPole):
        geo.stereo_project(1, n)
    assert np.allclose(geo.stereo_project(-1, n), 0.0)


def test_vector_field():
    x = geo.unit_point([0.5, 0.5, 0.5, 0.5])
    v = geo.vector_field(x)
    assert list(v) == [-0.5, 0.5, -0.5, 0.5]
    assert abs(np.dot(v, x)) < 1e-15
    with pytest.raises(EvenDimension):
        geo.vector_field(geo.unit_point([0.0, 0.0, 1.0]))


@given(sphere_points(3))
def test_vector_field_unit_tangent(x):
    v = geo.vector_field(x)
    assert abs(np.dot(v, x)) < 1e-12
    assert abs(np.linalg.norm(v) - 1.0) < 1e-12


def _segments(m=3):
    p = geo.unit_point(np.eye(m + 1)[0])
    q = geo.unit_point(np.eye(m + 1)[1])
    h = (p + geo.pole(1, m)) / np.sqrt(2.0)
    return [
        geo.Constant(p),
        geo.Slerp(p, q),
        geo.GreatArcForward(p, geo.vector_field(p)),
        geo.GreatArcBackward(p, geo.vector_field(p)),
        geo.GreatArcForward(p, geo.vector_field(p), -p),
        geo.PoleApproach(h, 1),
        geo.ReversedPoleApproach(-h, -1),
        geo.PoleArc(1, m),
        geo.PoleArc(-1, m),
        geo.ChartLine(1, geo.stereo_project(1, p), geo.stereo_project(1, q)),
    ]


@pytest.mark.parametrize("seg", _segments(), ids=lambda s: s.kind)
def test_segment_reversal_and_norm(seg):
    a = seg(T)
    b = seg.reversed()(1.0 - T)
    assert np.max(np.abs(a - b)) < 1e-12
    assert np.allclose(np.linalg.norm(a, axis=1), 1.0, atol=1e-12)


@pytest.mark.parametrize("seg", _segments(), ids=lambda s: s.kind)
def test_segment_json_roundtrip(seg):
    back = geo.segment_from_json(json.loads(json.dumps(seg.to_json())))
    assert np.array_equal(back(T), seg(T))


def test_great_arc_hits_antipode_and_midpoint():
    p = geo.unit_point([1.0, 0.0, 0.0, 0.0])
    arc = geo.GreatArcForward(p, geo.vector_field(p))
    assert np.allclose(arc(1.0), -p, atol=1e-15)
    assert np.allclose(arc(0.5), [0.0, 1.0, 0.0, 0.0], atol=1e-15)


def test_pole_arc_reverses_to_opposite_sign():
    a = geo.PoleArc(1, 2)
    assert np.allclose(a(0.0), [0, 0, 1])
    assert np.allclose(a(0.5), [0, 1, 0])
    assert np.allclose(a(1.0), [0, 0, -1])
    r = a.reversed()
    assert isinstance(r, geo.PoleArc) and r.sign == -1


def test_path_algebra():
    p = geo.unit_point([1.0, 0.0, 0.0])
    q = geo.unit_point([0.0, 1.0, 0.0])
    r = geo.unit_point([0.0, 0.0, 1.0])
    a = geo.PiecewisePath.single(geo.Slerp(p, q))
    b = geo.PiecewisePath.single(geo.Slerp(q, r))
    c = geo.concat([a, b], [0.25, 0.75])
    assert c.breakpoints == (0.0, 0.25, 1.0)
    assert np.allclose(c(0.25), q)
    rev = geo.reverse(c)
    assert np.max(np.abs(rev(T) - c(1.0 - T))) < 1e-12
    assert geo.max_breakpoint_gap(c) < 1e-15
    with pytest.raises(DiscontinuousJoin) as exc:
        geo.concat([a, a])
    assert exc.value.index == 0
    with pytest.raises(OutOfRange):
        c(1.5)
    back = geo.PiecewisePath.from_json(json.loads(json.dumps(c.to_json())))
    assert np.array_equal(back(T), c(T))


def test_breakpoint_uses_left_segment():
    p = geo.unit_point([1.0, 0.0])
    q = geo.unit_point([0.0, 1.0])
    a = geo.PiecewisePath.single(geo.Constant(p))
    b = geo.PiecewisePath.single(geo.Slerp(p, q))
    c = geo.concat([a, b])
    assert c.segments[int(np.searchsorted(c.breakpoints, 0.5)) - 1].kind == "Constant"
    assert np.array_equal(c(0.5), p)


@settings(max_examples=50)
@given(st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=1, max_size=5))
def test_concat_breakpoints_increase(ws):
    p = geo.unit_point([1.0, 0.0])
    w = np.asarray(ws) / sum(ws)
    c = geo.concat([geo.constant_path(p)] * len(ws), list(w))
    assert c.breakpoints[0] == 0.0 and c.breakpoints[-1] == 1.0
    assert all(x < y for x, y in zip(c.breakpoints, c.breakpoints[1:]))
