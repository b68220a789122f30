"""Interval bounds for TC_n, TC^beta_n and TC^Sigma_n with their derivations."""

from __future__ import annotations

from tcbeta import bounds as bd
from tcbeta.spaces import parse_space

engine = bd.BoundsEngine()

print(bd.explain(engine.compute(parse_space("S(2)"), 4, "sigma")))
print(bd.explain(engine.compute(parse_space("S(3)"), 4, "beta")))
print(bd.explain(engine.compute(parse_space("RP(4)"), 4, "sigma")))

print("TC^beta_n(S^m), rows n = 2..7, columns m = 1..6")
for n in range(2, 8):
    cells = []
    for m in range(1, 7):
        b = engine.compute(parse_space(f"S({m})"), n, "beta")
        cells.append(f"{b.lower}" if b.exact else f"{b.lower}-{b.upper}")
    print(f"  n={n}: " + "  ".join(f"{c:>4s}" for c in cells))
