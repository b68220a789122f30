"""Independent brute-force references used by the tests.

Nothing here imports the ring machinery under test except where a ring's own
multiplication is the thing being fed in.
"""

from __future__ import annotations

import itertools


def rp_tensor_square_zcl(m: int) -> int:
    """Zero-divisor cup-length of H*(RP^m)^(x)2 by exhaustive enumeration.

    Elements are frozensets of exponent pairs (a, b) standing for x^a (x) x^b,
    truncated at x^(m+1).  The kernel of x^a (x) x^b -> x^(a+b) is found by
    testing every vector of the (m+1)^2-dimensional space.
    """
    basis = [(a, b) for a in range(m + 1) for b in range(m + 1)]

    def mul(u: frozenset, v: frozenset) -> frozenset:
        out: set = set()
        for (a, b), (c, d) in itertools.product(u, v):
            if a + c <= m and b + d <= m:
                out ^= {(a + c, b + d)}
        return frozenset(out)

    def image(u: frozenset) -> frozenset:
        out: set = set()
        for a, b in u:
            if a + b <= m:
                out ^= {a + b}
        return frozenset(out)

    kernel = []
    for mask in range(1, 1 << len(basis)):
        u = frozenset(basis[k] for k in range(len(basis)) if mask >> k & 1)
        if not image(u):
            kernel.append(u)
    products = set(kernel)
    k = 1
    while True:
        nxt = {mul(p, z) for p in products for z in kernel} - {frozenset()}
        if not nxt:
            return k
        products = nxt
        k += 1


def brute_cup_length(r) -> int:
    """Cup-length by enumerating every element of the augmentation ideal."""
    pos = r.positive_ids()
    ideal = []
    for mask in range(1, 1 << len(pos)):
        v = 0
        for k, i in enumerate(pos):
            if mask >> k & 1:
                v |= 1 << i
        ideal.append(v)
    products = set(ideal)
    k = 1
    while True:
        nxt = {r.mul(p, z) for p in products for z in ideal} - {0}
        if not nxt:
            return k
        products = nxt
        k += 1


def gf2_rank_brute(vectors: list[int], width: int) -> int:
    """Rank as log2 of the size of the span, built by closure."""
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return len(span).bit_length() - 1
