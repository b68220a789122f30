"""Hypothesis strategies for sphere points and waypoint tuples."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

coord = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def sphere_points(draw, m: int):
    v = np.array(draw(st.lists(coord, min_size=m + 1, max_size=m + 1)))
    r = np.linalg.norm(v)
    if r < 1e-3:
        v = np.zeros(m + 1)
        v[0] = 1.0
        r = 1.0
    return v / r


@st.composite
def pairs(draw, dims=(1, 2, 3, 4, 5)):
    m = draw(st.sampled_from(dims))
    x = draw(sphere_points(m))
    kind = draw(st.sampled_from(["free", "antipodal", "equal", "pole"]))
    if kind == "antipodal":
        y = -x
    elif kind == "equal":
        y = x.copy()
    elif kind == "pole":
        y = np.zeros(m + 1)
        y[m] = draw(st.sampled_from([1.0, -1.0]))
    else:
        y = draw(sphere_points(m))
    return x, y


@st.composite
def odd_tuples(draw, ns=(3, 5, 7), ms=(1, 3, 5)):
    n = draw(st.sampled_from(ns))
    m = draw(st.sampled_from(ms))
    pts = [draw(sphere_points(m))]
    for _ in range(n - 1):
        kind = draw(st.sampled_from(["free", "free", "antipodal", "equal"]))
        if kind == "antipodal":
            pts.append(-pts[-1])
        elif kind == "equal":
            pts.append(pts[-1].copy())
        else:
            pts.append(draw(sphere_points(m)))
    return pts
