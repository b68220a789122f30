"""Closed-form spherical geometry on S^m embedded in R^(m+1).

Points are plain float64 arrays of length m+1 with unit norm; ``unit_point``
is the single validation entry point.  Paths are piecewise maps [0, 1] -> S^m
assembled from an enumerated set of segment kinds, so that reversal is exact
and every path round-trips through JSON.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from .errors import (
    AntipodalInput,
    AtPole,
    DiscontinuousJoin,
    EvenDimension,
    InvalidPoint,
    OutOfRange,
)

UnitPoint = np.ndarray

RENORMALIZE_TOL = 1e-6
EPS_ANTIPODAL = 1e-9
ILL_CONDITIONED = 1e-6
JOIN_TOL = 1e-9


def unit_point(coords: Sequence[float] | np.ndarray) -> UnitPoint:
    """Validate ``coords`` as a point of S^m, m >= 1.

    Vectors whose norm is within 1e-6 of 1 are renormalized; anything else is
    rejected rather than silently projected.
    """
    x = np.array(coords, dtype=float).reshape(-1)
    if x.size < 2:
        raise InvalidPoint(f"a point of S^m needs at least 2 coordinates, got {x.size}")
    r = math.sqrt(float(x @ x))
    if not math.isfinite(r):
        raise InvalidPoint("non-finite coordinate")
    if abs(r - 1.0) > RENORMALIZE_TOL:
        raise InvalidPoint(f"norm {r!r} is not 1 within {RENORMALIZE_TOL}")
    if r != 1.0:
        x = x / r
    x.setflags(write=False)
    return x


@lru_cache(maxsize=None)
def pole(sign: int, m: int) -> UnitPoint:
    """North pole (0,...,0,1) for sign=+1, south pole for sign=-1."""
    p = np.zeros(m + 1)
    p[m] = 1.0 if sign > 0 else -1.0
    p.setflags(write=False)
    return p


def _normalize_rows(w: np.ndarray) -> np.ndarray:
    return w / np.linalg.norm(w, axis=-1, keepdims=True)


def dist(x: np.ndarray, y: np.ndarray) -> float:
    d = x - y
    return math.sqrt(float(d @ d))


def angle_between(x: UnitPoint, y: UnitPoint) -> float:
    # atan2 form stays accurate near 0 and pi, where arccos does not
    return 2.0 * math.atan2(dist(x, y), dist(x, -y))


def slerp(x: UnitPoint, y: UnitPoint, t, eps_antipodal: float = EPS_ANTIPODAL):
    """Great-circle interpolation from x (t=0) to y (t=1).

    ``t`` may be a scalar or an array; an array yields one row per entry.
    Raises AntipodalInput when <x, y> <= -1 + eps_antipodal.
    """
    if float(np.dot(x, y)) <= -1.0 + eps_antipodal:
        raise AntipodalInput("slerp is undefined for antipodal endpoints")
    ts = np.asarray(t, dtype=float)
    theta = angle_between(x, y)
    if theta == 0.0:
        out = np.broadcast_to(x, ts.shape + x.shape).copy()
        return out
    s = np.sin(theta)
    a = (np.sin((1.0 - ts) * theta) / s)[..., None]
    b = (np.sin(ts * theta) / s)[..., None]
    return a * x + b * y


def stereo_project(pole_sign: int, x: UnitPoint) -> np.ndarray:
    """Stereographic chart from the pole ``pole_sign`` onto R^m."""
    x = np.asarray(x, dtype=float)
    m = x.shape[-1] - 1
    h = pole_sign * x[..., m]
    head = x[..., :m]
    d = x - pole(pole_sign, m)
    if np.any(np.sum(d * d, axis=-1) <= 1e-24):
        raise AtPole(f"point coincides with the projection pole {pole_sign:+d}")
    r2 = np.sum(head * head, axis=-1)
    # 1 - h cancels near the pole; |head|^2 / (1 + h) is the same number computed stably
    with np.errstate(divide="ignore", invalid="ignore"):
        denom = np.where(h > 0, r2 / (1.0 + h), 1.0 - h)
    return head / denom[..., None]


def stereo_unproject(pole_sign: int, u) -> UnitPoint:
    """Inverse of :func:`stereo_project`; accepts a vector or a stack of rows."""
    u = np.asarray(u, dtype=float)
    r2 = np.sum(u * u, axis=-1, keepdims=True)
    head = 2.0 * u / (1.0 + r2)
    last = pole_sign * (r2 - 1.0) / (r2 + 1.0)
    return np.concatenate([head, last], axis=-1)


def vector_field(x: UnitPoint) -> np.ndarray:
    """Unit tangent field v(x) = (-x2, x1, -x4, x3, ...) on an odd sphere."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] % 2:
        raise EvenDimension(f"S^{x.shape[-1] - 1} carries no non-vanishing vector field")
    v = np.empty_like(x)
    v[..., 0::2] = -x[..., 1::2]
    v[..., 1::2] = x[..., 0::2]
    return v


# ---------------------------------------------------------------------------
# segments


def _pt(a) -> list[float]:
    return [float(c) for c in a]


@dataclass(frozen=True, eq=False)
class Segment:
    """A map [0,1] -> S^m; subclasses implement ``_eval`` on an array of times."""

    kind = "Segment"

    @property
    def m(self) -> int:
        raise NotImplementedError

    def _eval(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        out = self._eval(np.atleast_1d(s))
        return out[0] if s.ndim == 0 else out

    def reversed(self) -> "Segment":
        raise NotImplementedError

    def fields(self) -> dict[str, Any]:
        raise NotImplementedError

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.fields()}

    @property
    def ill_conditioned(self) -> bool:
        return False


@dataclass(frozen=True, eq=False)
class Constant(Segment):
    p: np.ndarray
    kind = "Constant"

    @property
    def m(self):
        return len(self.p) - 1

    def _eval(self, s):
        return np.broadcast_to(self.p, (len(s), len(self.p))).copy()

    def reversed(self):
        return self

    def fields(self):
        return {"p": _pt(self.p)}


@dataclass(frozen=True, eq=False)
class Slerp(Segment):
    p: np.ndarray
    q: np.ndarray
    kind = "Slerp"

    def __post_init__(self):
        if float(np.dot(self.p, self.q)) <= -1.0 + EPS_ANTIPODAL:
            raise AntipodalInput("Slerp segment between antipodal points")
        object.__setattr__(self, "_theta", angle_between(self.p, self.q))

    @property
    def m(self):
        return len(self.p) - 1

    @property
    def ill_conditioned(self):
        return float(np.dot(self.p, self.q)) < -1.0 + ILL_CONDITIONED

    def _eval(self, s):
        theta = self._theta
        if theta == 0.0:
            return np.broadcast_to(self.p, s.shape + self.p.shape).copy()
        d = math.sin(theta)
        return (np.sin((1.0 - s) * theta) / d)[:, None] * self.p + (np.sin(s * theta) / d)[:, None] * self.q

    def reversed(self):
        return Slerp(self.q, self.p)

    def fields(self):
        return {"p": _pt(self.p), "q": _pt(self.q)}


def _check_tangent(p, v):
    if abs(float(np.dot(p, v))) > 1e-9 or abs(float(np.linalg.norm(v)) - 1.0) > 1e-9:
        raise InvalidPoint("great-arc direction must be a unit tangent vector at p")


@dataclass(frozen=True, eq=False)
class GreatArcForward(Segment):
    """Half great circle from p leaving in direction v.

    The arc ends at -p.  When ``end`` is given (a point numerically antipodal
    to p) the arc is bent by the vanishing correction t*(end + p) so that it
    lands exactly on ``end``; for end == -p this is the plain arc
    cos(pi t) p + sin(pi t) v.
    """

    p: np.ndarray
    v: np.ndarray
    end: np.ndarray | None = None
    kind = "GreatArcForward"

    def __post_init__(self):
        _check_tangent(self.p, self.v)

    @property
    def m(self):
        return len(self.p) - 1

    def _forward(self, s):
        w = np.cos(np.pi * s)[:, None] * self.p + np.sin(np.pi * s)[:, None] * self.v
        if self.end is not None:
            w = w + s[:, None] * (self.end + self.p)
            w = _normalize_rows(w)
        return w

    def _eval(self, s):
        return self._forward(s)

    def reversed(self):
        return GreatArcBackward(self.p, self.v, self.end)

    def fields(self):
        d = {"p": _pt(self.p), "v": _pt(self.v)}
        if self.end is not None:
            d["end"] = _pt(self.end)
        return d


@dataclass(frozen=True, eq=False)
class GreatArcBackward(GreatArcForward):
    """The forward arc from p traversed backwards: starts at ``end`` (or -p), finishes at p."""

    kind = "GreatArcBackward"

    def _eval(self, s):
        return self._forward(1.0 - s)

    def reversed(self):
        return GreatArcForward(self.p, self.v, self.end)


@dataclass(frozen=True, eq=False)
class PoleApproach(Segment):
    """Radial-chord path from p to the pole of its own hemisphere."""

    p: np.ndarray
    sign: int
    kind = "PoleApproach"

    def __post_init__(self):
        if self.sign * float(self.p[-1]) <= 0:
            raise InvalidPoint("PoleApproach needs p strictly inside the hemisphere of its pole")

    @property
    def m(self):
        return len(self.p) - 1

    def _approach(self, s):
        target = pole(self.sign, self.m)
        return _normalize_rows((1.0 - s)[:, None] * self.p + s[:, None] * target)

    def _eval(self, s):
        return self._approach(s)

    def reversed(self):
        return ReversedPoleApproach(self.p, self.sign)

    def fields(self):
        return {"p": _pt(self.p), "sign": int(self.sign)}


@dataclass(frozen=True, eq=False)
class ReversedPoleApproach(PoleApproach):
    kind = "ReversedPoleApproach"

    def _eval(self, s):
        return self._approach(1.0 - s)

    def reversed(self):
        return PoleApproach(self.p, self.sign)


@dataclass(frozen=True, eq=False)
class PoleArc(Segment):
    """Meridian in the (x_m, x_{m+1}) plane from pole ``sign`` to the opposite pole."""

    sign: int
    dim: int
    kind = "PoleArc"

    @property
    def m(self):
        return self.dim

    def _eval(self, s):
        out = np.zeros((len(s), self.dim + 1))
        out[:, self.dim - 1] = np.sin(np.pi * s)
        out[:, self.dim] = self.sign * np.cos(np.pi * s)
        return out

    def reversed(self):
        return PoleArc(-self.sign, self.dim)

    def fields(self):
        return {"sign": int(self.sign), "m": int(self.dim)}


@dataclass(frozen=True, eq=False)
class ChartLine(Segment):
    """Straight line a -> b in the stereographic chart of pole ``pole_sign``."""

    pole_sign: int
    a: np.ndarray
    b: np.ndarray
    kind = "ChartLine"

    @property
    def m(self):
        return len(self.a)

    def _eval(self, s):
        u = (1.0 - s)[:, None] * self.a + s[:, None] * self.b
        return stereo_unproject(self.pole_sign, u)

    def reversed(self):
        return ChartLine(self.pole_sign, self.b, self.a)

    def fields(self):
        return {"pole": int(self.pole_sign), "a": _pt(self.a), "b": _pt(self.b)}


_KINDS = {
    cls.kind: cls
    for cls in (
        Constant,
        Slerp,
        GreatArcForward,
        GreatArcBackward,
        PoleApproach,
        ReversedPoleApproach,
        PoleArc,
        ChartLine,
    )
}


def segment_from_json(d: dict[str, Any]) -> Segment:
    kind = d["kind"]
    arr = lambda key: np.asarray(d[key], dtype=float)  # noqa: E731
    if kind == "Constant":
        return Constant(arr("p"))
    if kind == "Slerp":
        return Slerp(arr("p"), arr("q"))
    if kind in ("GreatArcForward", "GreatArcBackward"):
        end = arr("end") if d.get("end") is not None else None
        return _KINDS[kind](arr("p"), arr("v"), end)
    if kind in ("PoleApproach", "ReversedPoleApproach"):
        return _KINDS[kind](arr("p"), int(d["sign"]))
    if kind == "PoleArc":
        return PoleArc(int(d["sign"]), int(d["m"]))
    if kind == "ChartLine":
        return ChartLine(int(d["pole"]), arr("a"), arr("b"))
    raise ValueError(f"unknown segment kind {kind!r}")


# ---------------------------------------------------------------------------
# piecewise paths


@dataclass(frozen=True, eq=False)
class PiecewisePath:
    segments: tuple[Segment, ...]
    breakpoints: tuple[float, ...]
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        bp = self.breakpoints
        if len(bp) != len(self.segments) + 1:
            raise ValueError("need exactly one more breakpoint than segments")
        if bp[0] != 0.0 or bp[-1] != 1.0 or any(b >= c for b, c in zip(bp, bp[1:])):
            raise ValueError("breakpoints must increase strictly from 0 to 1")

    @classmethod
    def single(cls, seg: Segment, **meta) -> "PiecewisePath":
        return cls((seg,), (0.0, 1.0), dict(meta))

    @property
    def m(self) -> int:
        return self.segments[0].m

    @property
    def start(self) -> UnitPoint:
        return self.segments[0](0.0)

    @property
    def end(self) -> UnitPoint:
        return self.segments[-1](1.0)

    def __call__(self, t):
        return evaluate(self, t)

    def flags(self) -> list[str]:
        out = list(self.meta.get("flags", []))
        for i, seg in enumerate(self.segments):
            if seg.ill_conditioned:
                out.append(f"ill_conditioned_slerp:{i}")
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "breakpoints": [float(b) for b in self.breakpoints],
            "segments": [s.to_json() for s in self.segments],
        }

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "PiecewisePath":
        segs = tuple(segment_from_json(s) for s in d["segments"])
        path = cls(segs, tuple(float(b) for b in d["breakpoints"]))
        if path.m != int(d["m"]):
            raise ValueError("declared m does not match the segment dimension")
        return path


def evaluate(path: PiecewisePath, t):
    """Evaluate ``path`` at a scalar time or an array of times in [0, 1].

    At an interior breakpoint the left segment is used.
    """
    ts = np.asarray(t, dtype=float)
    flat = np.atleast_1d(ts)
    if np.any(~((flat >= 0.0) & (flat <= 1.0))):
        raise OutOfRange("path parameter must lie in [0, 1]")
    bp = np.asarray(path.breakpoints)
    k = len(path.segments)
    if k == 1:
        out = path.segments[0]._eval(flat)
        return out[0] if ts.ndim == 0 else out
    idx = np.searchsorted(bp, flat, side="left") - 1
    np.clip(idx, 0, k - 1, out=idx)
    out = np.empty((len(flat), path.m + 1))
    for i, seg in enumerate(path.segments):
        sel = idx == i
        if not sel.any():
            continue
        lo, hi = bp[i], bp[i + 1]
        s = np.minimum(np.maximum((flat[sel] - lo) / (hi - lo), 0.0), 1.0)
        out[sel] = seg._eval(s)
    return out[0] if ts.ndim == 0 else out


def reverse(path: PiecewisePath) -> PiecewisePath:
    """The path t -> path(1 - t), built segment by segment."""
    bp = [1.0 - b for b in reversed(path.breakpoints)]
    bp[0], bp[-1] = 0.0, 1.0
    segs = tuple(s.reversed() for s in reversed(path.segments))
    return PiecewisePath(segs, tuple(bp), dict(path.meta))


def concat(paths: Sequence[PiecewisePath], weights: Sequence[float] | None = None) -> PiecewisePath:
    """Concatenate paths; path i runs over a parameter interval of length weights[i]."""
    if not paths:
        raise ValueError("nothing to concatenate")
    if weights is None:
        weights = [1.0 / len(paths)] * len(paths)
    w = np.asarray(weights, dtype=float)
    if len(w) != len(paths) or np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-12:
        raise ValueError("weights must be positive, one per path, and sum to 1")
    for i, (a, b) in enumerate(zip(paths, paths[1:])):
        gap = dist(a.end, b.start)
        if gap > JOIN_TOL:
            raise DiscontinuousJoin(i, gap)
    offsets = np.concatenate([[0.0], np.cumsum(w)])
    offsets /= offsets[-1]
    segs: list[Segment] = []
    bps = [0.0]
    for p, lo, hi in zip(paths, offsets, offsets[1:]):
        segs.extend(p.segments)
        bps.extend(lo + (hi - lo) * b for b in p.breakpoints[1:])
    bps[-1] = 1.0
    meta: dict[str, Any] = {}
    for p in paths:
        meta.update(p.meta)
    return PiecewisePath(tuple(segs), tuple(bps), meta)


def constant_path(p: UnitPoint) -> PiecewisePath:
    return PiecewisePath.single(Constant(np.asarray(p, dtype=float)))


def sample(path: PiecewisePath, count: int = 201) -> np.ndarray:
    return evaluate(path, np.linspace(0.0, 1.0, count))


def max_breakpoint_gap(path: PiecewisePath) -> float:
    """Largest jump between consecutive segments at interior breakpoints."""
    gaps = [
        float(np.linalg.norm(a(1.0) - b(0.0)))
        for a, b in zip(path.segments, path.segments[1:])
    ]
    return max(gaps, default=0.0)

