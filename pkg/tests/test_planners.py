from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings

from strategies import odd_tuples, pairs
from tcbeta import geometry as geo
from tcbeta import planners as pl
from tcbeta.errors import EvenM, EvenN, InvalidPoint, OddN

T = np.linspace(0.0, 1.0, 201)


def _dev(a, b):
    return float(np.max(np.abs(a - b)))


@settings(max_examples=300, deadline=None)
@given(pairs())
def test_pair_planner_is_bidirectional(xy):
    x, y = xy
    fwd, bwd = pl.plan_pair(x, y), pl.plan_pair(y, x)
    assert _dev(fwd(T), bwd(1.0 - T)) < 1e-9
    assert _dev(fwd(0.0), x) < 1e-9 and _dev(fwd(1.0), y) < 1e-9
    assert np.max(np.abs(np.linalg.norm(fwd(T), axis=1) - 1.0)) < 1e-9
    assert geo.max_breakpoint_gap(fwd) < 1e-9
    assert pl.classify_pair(x, y).tag == pl.classify_pair(y, x).tag


@settings(max_examples=300, deadline=None)
@given(odd_tuples())
def test_tuple_planner_is_bidirectional(pts):
    w = pl.WaypointTuple.of(pts)
    fwd, bwd = pl.plan_tuple(w), pl.plan_tuple(w.reversal())
    assert _dev(fwd(T), bwd(1.0 - T)) < 1e-9
    for i, p in enumerate(w.points):
        assert _dev(fwd(i / (w.n - 1)), p) < 1e-9
    assert np.max(np.abs(np.linalg.norm(fwd(T), axis=1) - 1.0)) < 1e-9
    assert geo.max_breakpoint_gap(fwd) < 1e-9


@settings(max_examples=200, deadline=None)
@given(odd_tuples())
def test_tuple_domains_map_to_partner_rules(pts):
    a, b = pl.classify_tuple(pts), pl.classify_tuple(pts[::-1])
    assert a.j == b.j
    assert b.pair_rules == tuple(pl._RULE_PARTNER[r] for r in reversed(a.pair_rules))


@settings(max_examples=100, deadline=None)
@given(odd_tuples(ns=(3, 5), ms=(3,)))
def test_even_adapter_bidirectional(pts):
    w = pl.WaypointTuple.of(pts[:-1])
    fwd, bwd = pl.plan_tuple_even(w), pl.plan_tuple_even(w.reversal())
    assert _dev(fwd(T), bwd(1.0 - T)) < 1e-9
    for t, p in zip(fwd.meta["times"], w.points):
        assert _dev(fwd(t), p) < 1e-9


def test_pair_domains():
    n = geo.pole(1, 2)
    s = geo.pole(-1, 2)
    assert pl.classify_pair(n, s).tag == "V"
    assert pl.classify_pair(n, n).tag == "UMinus"
    assert pl.classify_pair(s, s).tag == "UPlus"
    e = np.array([1.0, 0.0, 0.0])
    assert pl.classify_pair(e, -e).tag == "UPlus"
    assert "near_pole" in pl.classify_pair(n, e).flags


def test_pole_to_pole_passes_equator():
    path = pl.plan_pair(geo.pole(1, 2), geo.pole(-1, 2))
    assert path.meta["domain"] == "V"
    assert len(path.segments) == 3
    assert np.allclose(path(0.5), [0.0, 1.0, 0.0], atol=1e-15)


def test_chart_path_single_segment():
    x = geo.unit_point([1.0, 0.0, 0.0])
    y = geo.unit_point([0.0, 1.0, 0.0])
    path = pl.plan_pair(x, y)
    assert len(path.segments) == 1
    assert path.meta["domain"] in ("UPlus", "UMinus")


def test_antipodal_waypoints_use_vector_field():
    p = geo.unit_point([1.0, 0.0, 0.0, 0.0])
    path = pl.plan_tuple([p, -p, p])
    assert path.meta["rules"] == ["ArcForwardRule", "ArcBackwardRule"]
    assert path.meta["j"] == 2
    assert np.allclose(path(0.25), [0.0, 1.0, 0.0, 0.0], atol=1e-15)
    assert np.allclose(path(0.75), [0.0, 1.0, 0.0, 0.0], atol=1e-15)


def test_rule_positions():
    p = geo.unit_point([1.0, 0.0, 0.0, 0.0])
    q = geo.unit_point([0.0, 0.0, 1.0, 0.0])
    d = pl.classify_tuple([p, q, -q, p, p])
    assert d.pair_rules == ("SlerpRule", "ArcForwardRule", "SlerpRule", "ConstantRule")
    assert d.j == 1
    d = pl.classify_tuple([p, q, q, -q, p])
    assert d.pair_rules == ("SlerpRule", "ConstantRule", "ArcBackwardRule", "SlerpRule")


def test_near_boundary_flag():
    p = geo.unit_point([1.0, 0.0, 0.0, 0.0])
    q = geo.unit_point([np.cos(1e-7), np.sin(1e-7), 0.0, 0.0])
    d = pl.classify_tuple([p, q, p])
    assert d.flags == ("near_boundary:1", "near_boundary:2")
    assert pl.classify_tuple([p, p, p]).flags == ()


def test_parity_errors():
    p3 = geo.unit_point([1.0, 0.0, 0.0, 0.0])
    p2 = geo.unit_point([1.0, 0.0, 0.0])
    with pytest.raises(EvenN):
        pl.plan_tuple([p3] * 4)
    with pytest.raises(EvenM):
        pl.plan_tuple([p2] * 3)
    with pytest.raises(EvenM):
        pl.plan([p2] * 4)
    with pytest.raises(OddN):
        pl.plan_tuple_even([p3] * 3)
    with pytest.raises(InvalidPoint):
        pl.WaypointTuple.of([p3, p2])


def test_even_adapter_times():
    p = geo.unit_point([1.0, 0.0, 0.0, 0.0])
    q = geo.unit_point([0.0, 1.0, 0.0, 0.0])
    path = pl.plan_tuple_even([p, q, -q, p])
    assert path.meta["times"] == [0.0, 0.25, 0.75, 1.0]
    assert path.meta["basepoint_time"] == 0.5
    assert np.allclose(path(0.5), [1.0, 0.0, 0.0, 0.0])


def test_dispatch():
    p = geo.unit_point([1.0, 0.0, 0.0, 0.0])
    assert pl.plan([p, -p]).meta["domain"] in pl.PAIR_TAGS
    assert pl.plan([p, p, p]).meta["domain"] == "V_0"
    assert "basepoint_time" in pl.plan([p, p, p, p]).meta


def test_waypoint_tuple_json():
    w = pl.WaypointTuple.of([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
    back = pl.WaypointTuple.from_json(json.loads(json.dumps(w.to_json())))
    assert back.n == 3 and back.m == 1
    with pytest.raises(InvalidPoint):
        pl.WaypointTuple.from_json({"m": 2, "points": [[1.0, 0.0], [0.0, 1.0]]})
