from __future__ import annotations

from hypothesis import given, strategies as st

from oracles import gf2_rank_brute
from tcbeta import gf2

vecs = st.lists(st.integers(min_value=0, max_value=(1 << 10) - 1), max_size=12)


def test_bits_roundtrip():
    assert list(gf2.bits(0b101001)) == [0, 3, 5]
    assert gf2.from_ids([0, 3, 5]) == 0b101001
    assert gf2.from_ids([2, 2]) == 0


@given(vecs)
def test_rank_matches_span_closure(vs):
    assert gf2.rank(vs) == gf2_rank_brute(vs, 10)


@given(vecs)
def test_echelon_membership(vs):
    ech = gf2.EchelonBasis(vs)
    for v in vs:
        assert v in ech
    acc = 0
    for v in vs[::2]:
        acc ^= v
    assert acc in ech


@given(vecs)
def test_nullspace_is_kernel_of_full_dimension(images):
    ker = gf2.nullspace(images)
    for combo in ker:
        acc = 0
        for k in gf2.bits(combo):
            acc ^= images[k]
        assert acc == 0
    assert gf2.rank(ker) == len(ker)
    assert len(ker) + gf2.rank(images) == len(images)
