"""Bidirectional motion planners on spheres.

Two constructions are provided:

* ``plan_pair``: two-point planner over the three open sets U+, U- (stereographic
  charts) and V (opposite open hemispheres), valid on every S^m.
* ``plan_tuple``: n-waypoint planner for odd n on odd spheres, over the pieces
  V_j indexed by the number of consecutive antipodal waypoints.

Every planner commutes with the reversal involution: planning the reversed
input gives the reversed path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import geometry as geo
from .errors import EvenM, EvenN, InvalidPoint, OddN
from .geometry import PiecewisePath, UnitPoint

EPS_POLE = 1e-9
EPS_EQUAL = 1e-9
EPS_ANTIPODAL = 1e-9
NEAR_BOUNDARY = 1e-6

PAIR_TAGS = ("UPlus", "UMinus", "V")
TUPLE_RULES = ("ConstantRule", "SlerpRule", "ArcForwardRule", "ArcBackwardRule")
_RULE_PARTNER = {
    "ConstantRule": "ConstantRule",
    "SlerpRule": "SlerpRule",
    "ArcForwardRule": "ArcBackwardRule",
    "ArcBackwardRule": "ArcForwardRule",
}


@dataclass(frozen=True, eq=False)
class WaypointTuple:
    points: tuple[UnitPoint, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise InvalidPoint("a waypoint tuple needs at least two points")
        if len({len(p) for p in self.points}) != 1:
            raise InvalidPoint("all waypoints must lie on the same sphere")

    @classmethod
    def of(cls, points: Sequence) -> "WaypointTuple":
        if isinstance(points, WaypointTuple):
            return points
        return cls(tuple(geo.unit_point(p) for p in points))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.points[0]) - 1

    def reversal(self) -> "WaypointTuple":
        return WaypointTuple(self.points[::-1])

    def to_json(self) -> dict:
        return {"m": self.m, "points": [[float(c) for c in p] for p in self.points]}

    @classmethod
    def from_json(cls, d: dict) -> "WaypointTuple":
        w = cls.of(d["points"])
        if "m" in d and int(d["m"]) != w.m:
            raise InvalidPoint(f"declared m={d['m']} but points live on S^{w.m}")
        return w


@dataclass(frozen=True)
class PairDomain:
    tag: str
    margin: float
    margins: dict[str, float] = field(default_factory=dict, compare=False)
    flags: tuple[str, ...] = ()

    @property
    def admissible(self) -> tuple[str, ...]:
        return tuple(t for t in PAIR_TAGS if self.margins.get(t, -np.inf) > 0)


@dataclass(frozen=True)
class TupleDomain:
    j: int
    pair_rules: tuple[str, ...]
    flags: tuple[str, ...] = ()


def _pair_margins(x: UnitPoint, y: UnitPoint) -> dict[str, float]:
    m = len(x) - 1
    north, south = geo.pole(1, m), geo.pole(-1, m)
    dn = min(geo.dist(x, north), geo.dist(y, north))
    ds = min(geo.dist(x, south), geo.dist(y, south))
    margins = {
        "UPlus": dn if dn > EPS_POLE else -np.inf,
        "UMinus": ds if ds > EPS_POLE else -np.inf,
        "V": -np.inf,
    }
    if x[m] * y[m] < 0:
        margins["V"] = min(abs(float(x[m])), abs(float(y[m])))
    return margins


def _point_flags(x: UnitPoint, label: str) -> list[str]:
    m = len(x) - 1
    flags = []
    if min(geo.dist(x, geo.pole(1, m)), geo.dist(x, geo.pole(-1, m))) <= NEAR_BOUNDARY:
        flags.append(f"near_pole:{label}")
    if abs(float(x[m])) <= NEAR_BOUNDARY:
        flags.append(f"near_equator:{label}")
    return flags


def classify_pair(x, y) -> PairDomain:
    """Pick the admissible domain with the largest margin (ties: UPlus, UMinus, V).

    The margins are symmetric in (x, y), so the choice is the same for (y, x).
    """
    x, y = geo.unit_point(x), geo.unit_point(y)
    if len(x) != len(y):
        raise InvalidPoint("points lie on spheres of different dimension")
    margins = _pair_margins(x, y)
    best = None
    for tag in PAIR_TAGS:
        if margins[tag] > 0 and (best is None or margins[tag] > margins[best]):
            best = tag
    assert best is not None, "U+, U- and V cover S^m x S^m"
    flags = sorted(set(f.split(":")[0] for f in _point_flags(x, "x") + _point_flags(y, "y")))
    return PairDomain(best, margins[best], margins, tuple(flags))


def plan_pair(x, y) -> PiecewisePath:
    """Bidirectional planner on S^m x S^m for any m >= 1."""
    x, y = geo.unit_point(x), geo.unit_point(y)
    dom = classify_pair(x, y)
    m = len(x) - 1
    if dom.tag in ("UPlus", "UMinus"):
        s = 1 if dom.tag == "UPlus" else -1
        seg = geo.ChartLine(s, geo.stereo_project(s, x), geo.stereo_project(s, y))
        path = PiecewisePath.single(seg)
    else:
        sx = 1 if x[m] > 0 else -1
        sy = -sx
        path = geo.concat(
            [
                PiecewisePath.single(geo.PoleApproach(x, sx)),
                PiecewisePath.single(geo.PoleArc(sx, m)),
                PiecewisePath.single(geo.ReversedPoleApproach(y, sy)),
            ],
            [1 / 3, 1 / 3, 1 / 3],
        )
    meta = {"domain": dom.tag, "margin": dom.margin, "rules": [], "flags": list(dom.flags)}
    return PiecewisePath(path.segments, path.breakpoints, meta)


def _check_odd(w: WaypointTuple):
    if w.n % 2 == 0 or w.n < 3:
        raise EvenN(f"the waypoint planner needs odd n >= 3, got n={w.n}")
    if w.m % 2 == 0:
        raise EvenM(
            f"S^{w.m} has even dimension: no non-vanishing vector field, so no "
            "n-waypoint planner is constructed (upper bound n+1 is non-constructive)"
        )


def classify_tuple(w, eps_equal: float = EPS_EQUAL, eps_antipodal: float = EPS_ANTIPODAL) -> TupleDomain:
    """Rule per consecutive pair and the index j of the piece V_j containing w.

    x_i = -x_{i+1} is exactly the condition that the sign-twisted tuple
    (x_1, -x_2, x_3, ...) repeats at position i, so j counts antipodal steps.
    """
    w = WaypointTuple.of(w)
    _check_odd(w)
    l = (w.n - 1) // 2
    rules = []
    flags = []
    for i in range(1, w.n):
        a, b = w.points[i - 1], w.points[i]
        d = float(np.dot(a, b))
        if d >= 1.0 - eps_equal:
            rules.append("ConstantRule")
        elif d <= -1.0 + eps_antipodal:
            rules.append("ArcForwardRule" if i <= l else "ArcBackwardRule")
        else:
            rules.append("SlerpRule")
        gap = min(geo.dist(a, b), geo.dist(a, -b))
        if 0.0 < gap <= NEAR_BOUNDARY:
            flags.append(f"near_boundary:{i}")
    j = sum(r in ("ArcForwardRule", "ArcBackwardRule") for r in rules)
    return TupleDomain(j, tuple(rules), tuple(flags))


def _rule_segment(rule: str, a: UnitPoint, b: UnitPoint) -> geo.Segment:
    if rule == "ConstantRule":
        # numerically-equal but distinct points get the (tiny) geodesic so that
        # both endpoints are met exactly
        return geo.Constant(a) if np.array_equal(a, b) else geo.Slerp(a, b)
    if rule == "SlerpRule":
        return geo.Slerp(a, b)
    if rule == "ArcForwardRule":
        return geo.GreatArcForward(a, geo.vector_field(a), b)
    if rule == "ArcBackwardRule":
        return geo.GreatArcBackward(b, geo.vector_field(b), a)
    raise ValueError(rule)


def plan_tuple(w) -> PiecewisePath:
    """Planner through n (odd) waypoints on S^m (m odd); waypoint i at time i/(n-1)."""
    w = WaypointTuple.of(w)
    dom = classify_tuple(w)
    pieces = [
        PiecewisePath.single(_rule_segment(r, w.points[i], w.points[i + 1]))
        for i, r in enumerate(dom.pair_rules)
    ]
    k = len(pieces)
    path = geo.concat(pieces, [1.0 / k] * k) if k > 1 else pieces[0]
    meta = {
        "domain": f"V_{dom.j}",
        "j": dom.j,
        "rules": list(dom.pair_rules),
        "flags": list(dom.flags),
        "times": [i / k for i in range(w.n)],
    }
    return PiecewisePath(path.segments, path.breakpoints, meta)


def default_basepoint(m: int) -> UnitPoint:
    x0 = np.zeros(m + 1)
    x0[0] = 1.0
    return geo.unit_point(x0)


def plan_tuple_even(w, basepoint=None) -> PiecewisePath:
    """Even-n planner: insert ``basepoint`` in the middle slot and run the odd planner.

    The middle slot is fixed by reversal, so equivariance is inherited.  The
    times at which the original waypoints are visited are recorded in
    ``meta["times"]``.
    """
    w = WaypointTuple.of(w)
    if w.n % 2:
        raise OddN(f"n={w.n} is odd; use plan_tuple")
    x0 = default_basepoint(w.m) if basepoint is None else geo.unit_point(basepoint)
    if len(x0) != w.m + 1:
        raise InvalidPoint("basepoint lies on a sphere of different dimension")
    h = w.n // 2
    extended = WaypointTuple(w.points[:h] + (x0,) + w.points[h:])
    path = plan_tuple(extended)
    times = list(path.meta["times"])
    meta = dict(path.meta)
    meta["basepoint_time"] = times[h]
    meta["times"] = times[:h] + times[h + 1:]
    return PiecewisePath(path.segments, path.breakpoints, meta)


def plan(points) -> PiecewisePath:
    """Dispatch on n: pair planner for n=2, odd planner, or the even adapter."""
    w = WaypointTuple.of(points)
    if w.n == 2:
        return plan_pair(*w.points)
    if w.n % 2:
        return plan_tuple(w)
    return plan_tuple_even(w)


def waypoint_times(path: PiecewisePath, n: int) -> list[float]:
    times = path.meta.get("times")
    if times is None:
        return [i / (n - 1) for i in range(n)]
    return list(times)
