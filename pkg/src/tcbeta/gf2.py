"""Exact linear algebra over F2 with vectors packed into Python ints.

Bit k of an int is the coefficient of basis vector k.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def bits(v: int) -> Iterator[int]:
    """Indices of the set bits of ``v``, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def from_ids(ids: Iterable[int]) -> int:
    v = 0
    for i in ids:
        v ^= 1 << i
    return v


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of F2^N.

    Rows are keyed by their leading (highest) bit.
    """

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[int] = ()):
        self.rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        rows = self.rows
        while v:
            top = v.bit_length() - 1
            r = rows.get(top)
            if r is None:
                return v
            v ^= r
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True when it was independent of the current span."""
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[int]) -> int:
    return len(EchelonBasis(vectors))


def nullspace(images: list[int]) -> list[int]:
    """Kernel of the linear map sending basis vector k to ``images[k]``.

    Returns a basis of the kernel as ints over the domain coordinates.
    """
    pivots: dict[int, tuple[int, int]] = {}  # leading bit of image -> (image, combo)
    kernel = []
    for k, img in enumerate(images):
        combo = 1 << k
        while img:
            top = img.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                pivots[top] = (img, combo)
                break
            img ^= hit[0]
            combo ^= hit[1]
        else:
            kernel.append(combo)
    return kernel
