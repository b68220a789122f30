"""Two-point bidirectional planning on S^2.

The planner picks one of three domains per pair: a stereographic chart away
from the north pole (UPlus), one away from the south pole (UMinus), or the
set V of pairs in opposite open hemispheres, where the path runs through
the poles.  Swapping the endpoints yields exactly the reversed path.
"""

from __future__ import annotations

import numpy as np

from tcbeta import geometry as geo
from tcbeta import planners as pl

rng = np.random.default_rng(0)
t = np.linspace(0.0, 1.0, 201)

north, south = geo.pole(1, 2), geo.pole(-1, 2)
cases = {
    "north to south": (north, south),
    "equator to antipode": (np.array([1.0, 0.0, 0.0]), np.array([-1.0, 0.0, 0.0])),
    "random": tuple(v / np.linalg.norm(v) for v in rng.standard_normal((2, 3))),
}

for name, (x, y) in cases.items():
    dom = pl.classify_pair(x, y)
    path = pl.plan_pair(x, y)
    back = pl.plan_pair(y, x)
    dev = np.max(np.abs(path(t) - back(1.0 - t)))
    kinds = [s.kind for s in path.segments]
    print(f"{name:22s} domain={dom.tag:6s} margin={dom.margin:.3f} segments={kinds}")
    print(f"{'':22s} reversal deviation {dev:.1e}, flags {list(dom.flags)}")

mid = pl.plan_pair(north, south)(0.5)
print("pole-to-pole path at t=1/2:", np.round(mid, 12) + 0.0)
