"""n-waypoint bidirectional planning on odd spheres.

Consecutive waypoints are joined by a constant path, a geodesic, or (for
antipodal steps) half a great circle along the field v(x) = (-x2, x1, ...).
Arcs in the first half of the tuple run forward and arcs in the second half
run backward, so that reversing the tuple reverses the path.  Even n is
handled by inserting a basepoint in the middle slot.
"""

from __future__ import annotations

import numpy as np

from tcbeta import planners as pl
from tcbeta.errors import EvenM

t = np.linspace(0.0, 1.0, 401)
p = np.array([1.0, 0.0, 0.0, 0.0])
q = np.array([0.0, 0.0, 1.0, 0.0])

for pts in ([p, -p, p], [p, q, -q, p, p], [q, -q, q, -q, q]):
    path = pl.plan_tuple(pts)
    back = pl.plan_tuple(pts[::-1])
    dev = np.max(np.abs(path(t) - back(1.0 - t)))
    way = max(np.max(np.abs(path(s) - x)) for s, x in zip(path.meta["times"], pts))
    print(f"n={len(pts)} piece {path.meta['domain']}: {path.meta['rules']}")
    print(f"    reversal deviation {dev:.1e}, waypoint deviation {way:.1e}")

path = pl.plan_tuple_even([p, -p, q, q])
print("even n=4: waypoint times", path.meta["times"], "basepoint at", path.meta["basepoint_time"])

try:
    pl.plan([[1.0, 0.0, 0.0]] * 3)
except EvenM as exc:
    print("S^2 with n=3:", exc)
