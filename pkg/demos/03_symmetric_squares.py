"""Mod-2 cohomology of symmetric squares and their cup-lengths.

H*(SP^2(X); F2) is built from a basis of H*(X) and its Steenrod squares.
Cup-lengths of SP^2(X^l) bound the bidirectional complexity of X from below.
"""

from __future__ import annotations

import time

from tcbeta import cohomology as coh


def report(label, ring):
    t = time.perf_counter()
    s = coh.nakaoka_sp2(ring)
    w = coh.cup_length_witness(s)
    took = time.perf_counter() - t
    print(f"SP^2({label}): {len(s)} basis elements, Poincare {s.poincare()}")
    print(f"    cup-length {w.length} in {took:.2f}s; witness product = {s.format_class(w.product)}")
    return w.length


for m in (2, 3):
    report(f"S^{m}", coh.ring_of_sphere(m))
report("RP^2", coh.ring_of_rp(2))
report("RP^4", coh.ring_of_rp(4))

rp2 = coh.ring_of_rp(2)
for l in (2, 3):
    cl = report(f"(RP^2)^{l}", coh.tensor_power(rp2, l))
    print(f"    => TC^beta_{2 * l}(RP^2) >= {cl + 1}")

print("zero-divisor cup-length of RP^2, n=2:", coh.zero_divisor_cup_length(rp2, 2))
