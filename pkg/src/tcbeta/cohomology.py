"""Mod-2 cohomology rings, Steenrod squares and cup-lengths.

A class is an int bitmask over basis ids (see :mod:`tcbeta.gf2`).  Rings
expose products and squares of basis elements through ``mul_basis`` and
``sq_basis``; everything else is bilinear extension.

Constructors: spheres, real projective spaces, tensor products (Kunneth with
the Cartan formula) and the symmetric square ``nakaoka_sp2``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import reduce
from typing import Any, Iterable, Sequence

from . import gf2
from .errors import ClosureError, MissingSteenrod, UnsupportedSpace
from .spaces import RP, Power, Product, SpaceSpec, Sphere


def binom_mod2(j: int, k: int) -> int:
    """C(j, k) mod 2 by Lucas: odd iff the bits of k are a subset of those of j."""
    return int(0 <= k <= j and (k & j) == k)


@dataclass(frozen=True)
class BasisElement:
    """One homogeneous basis vector.

    ``label`` is one of ("Unit",), ("Monomial", exps), ("Phi", i, j) with
    i < j, or ("E", s, i).
    """

    id: int
    degree: int
    label: tuple

    def name(self) -> str:
        kind = self.label[0]
        if kind == "Unit":
            return "1"
        if kind == "Monomial":
            exps = self.label[1]
            if not any(exps):
                return "1"
            return "*".join(f"x{k + 1}^{e}" if e > 1 else f"x{k + 1}" for k, e in enumerate(exps) if e)
        if kind == "Phi":
            return f"phi(b{self.label[1]}(x)b{self.label[2]})"
        return f"E{self.label[1]}(b{self.label[2]})"


@dataclass(frozen=True)
class CohClass:
    bits: int
    homogeneous_degree: int | None = None

    def ids(self) -> list[int]:
        return list(gf2.bits(self.bits))

    def __bool__(self):
        return self.bits != 0


class GradedRing:
    """Finite graded-commutative F2 algebra with basis element 0 as the unit."""

    unit_id = 0

    def __init__(self, basis: Sequence[BasisElement], name: str = ""):
        self.basis = tuple(basis)
        self.name = name
        self.degrees = [b.degree for b in self.basis]
        self.top_degree = max(self.degrees)
        self._mul_cache: dict[tuple[int, int], int] = {}

    # -- subclass hooks -------------------------------------------------
    def _mul(self, i: int, j: int) -> int:
        raise NotImplementedError

    def _sq(self, k: int, i: int) -> int:
        raise MissingSteenrod(f"{self.name or 'ring'} carries no Steenrod squares")

    has_sq = False

    # -- basis-level API -------------------------------------------------
    def __len__(self) -> int:
        return len(self.basis)

    def mul_basis(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if i == 0:
            return 1 << j
        key = (i, j)
        v = self._mul_cache.get(key)
        if v is None:
            v = self._mul(i, j) if self.degrees[i] + self.degrees[j] <= self.top_degree else 0
            self._mul_cache[key] = v
        return v

    def sq_basis(self, k: int, i: int) -> int:
        d = self.degrees[i]
        if k == 0:
            return 1 << i
        if k > d:
            return 0
        return self._sq(k, i)

    # -- class-level API -------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        out = 0
        bs = list(gf2.bits(b))
        for i in gf2.bits(a):
            for j in bs:
                out ^= self.mul_basis(i, j)
        return out

    def sq(self, k: int, a: int) -> int:
        out = 0
        for i in gf2.bits(a):
            out ^= self.sq_basis(k, i)
        return out

    def multiply(self, a: CohClass, b: CohClass) -> CohClass:
        deg = None
        if a.homogeneous_degree is not None and b.homogeneous_degree is not None:
            deg = a.homogeneous_degree + b.homogeneous_degree
        return CohClass(self.mul(a.bits, b.bits), deg)

    def element(self, i: int) -> CohClass:
        return CohClass(1 << i, self.degrees[i])

    def positive_ids(self) -> list[int]:
        return [b.id for b in self.basis if b.degree > 0]

    def ids_in_degree(self, d: int) -> list[int]:
        return [b.id for b in self.basis if b.degree == d]

    def degree_of(self, v: int) -> int | None:
        """Degree of a nonzero homogeneous class, None if mixed or zero."""
        ds = {self.degrees[i] for i in gf2.bits(v)}
        return ds.pop() if len(ds) == 1 else None

    def poincare(self) -> list[int]:
        out = [0] * (self.top_degree + 1)
        for d in self.degrees:
            out[d] += 1
        return out

    def index(self, label: tuple) -> int:
        for b in self.basis:
            if b.label == label:
                return b.id
        raise KeyError(label)

    def name_of(self, i: int) -> str:
        return self.basis[i].name()

    def format_class(self, v: int) -> str:
        if not v:
            return "0"
        return " + ".join(self.name_of(i) for i in gf2.bits(v))

    # -- export ------------------------------------------------------------
    def mult_table(self) -> dict[tuple[int, int], int]:
        """All nonzero products of basis elements, keyed with i <= j."""
        n = len(self.basis)
        out = {}
        for i in range(n):
            for j in range(i, n):
                v = self.mul_basis(i, j)
                if v:
                    out[(i, j)] = v
        return out

    def sq_table(self) -> dict[tuple[int, int], int]:
        out = {}
        for b in self.basis:
            for k in range(1, b.degree + 1):
                v = self.sq_basis(k, b.id)
                if v:
                    out[(k, b.id)] = v
        return out

    def to_json(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "name": self.name,
            "basis": [
                {"id": b.id, "degree": b.degree, "label": _label_json(b.label), "name": b.name()}
                for b in self.basis
            ],
            "mult": [
                {"i": i, "j": j, "ids": list(gf2.bits(v))} for (i, j), v in self.mult_table().items()
            ],
        }
        if self.has_sq:
            d["sq"] = [
                {"k": k, "i": i, "ids": list(gf2.bits(v))} for (k, i), v in self.sq_table().items()
            ]
        return d


def _label_json(label: tuple) -> list:
    return [list(x) if isinstance(x, tuple) else x for x in label]


class TableRing(GradedRing):
    """Ring given by explicit product and square tables."""

    def __init__(self, basis, mult: dict, sq: dict | None = None, name: str = ""):
        super().__init__(basis, name)
        self._table = {(min(i, j), max(i, j)): v for (i, j), v in mult.items()}
        self._sqt = sq
        self.has_sq = sq is not None

    def _mul(self, i, j):
        return self._table.get((i, j), 0)

    def _sq(self, k, i):
        if self._sqt is None:
            return super()._sq(k, i)
        return self._sqt.get((k, i), 0)


def ring_of_sphere(m: int) -> GradedRing:
    """H*(S^m; F2) = F2[e]/(e^2), |e| = m, all positive squares zero."""
    if m < 1:
        raise ValueError("m >= 1")
    basis = [BasisElement(0, 0, ("Monomial", (0,))), BasisElement(1, m, ("Monomial", (1,)))]
    return TableRing(basis, {}, {}, name=f"S({m})")


def ring_of_rp(m: int) -> GradedRing:
    """H*(RP^m; F2) = F2[x]/(x^(m+1)), Sq^k(x^j) = C(j,k) x^(j+k)."""
    if m < 1:
        raise ValueError("m >= 1")
    basis = [BasisElement(j, j, ("Monomial", (j,))) for j in range(m + 1)]
    mult = {(a, b): 1 << (a + b) for a in range(1, m + 1) for b in range(a, m + 1) if a + b <= m}
    sq = {
        (k, j): 1 << (j + k)
        for j in range(1, m + 1)
        for k in range(1, j + 1)
        if j + k <= m and binom_mod2(j, k)
    }
    return TableRing(basis, mult, sq, name=f"RP({m})")


class TensorRing(GradedRing):
    """Tensor product A (x) B over F2; basis (a, b) has id a * len(B) + b."""

    def __init__(self, a: GradedRing, b: GradedRing):
        self.a, self.b = a, b
        nb = len(b)
        basis = []
        for ea in a.basis:
            for eb in b.basis:
                basis.append(
                    BasisElement(ea.id * nb + eb.id, ea.degree + eb.degree, _tensor_label(ea.label, eb.label))
                )
        super().__init__(basis, name=f"{a.name}*{b.name}")
        self.has_sq = a.has_sq and b.has_sq

    def tensor(self, u: int, w: int) -> int:
        nb = len(self.b)
        out = 0
        for p in gf2.bits(u):
            out |= w << (p * nb)
        return out

    def split(self, i: int) -> tuple[int, int]:
        return divmod(i, len(self.b))

    def _mul(self, i, j):
        ia, ib = self.split(i)
        ja, jb = self.split(j)
        return self.tensor(self.a.mul_basis(ia, ja), self.b.mul_basis(ib, jb))

    def _sq(self, k, i):
        if not self.has_sq:
            return super()._sq(k, i)
        ia, ib = self.split(i)
        out = 0
        for r in range(0, k + 1):
            u = self.a.sq_basis(r, ia)
            if u:
                w = self.b.sq_basis(k - r, ib)
                if w:
                    out ^= self.tensor(u, w)
        return out


def _tensor_label(la: tuple, lb: tuple) -> tuple:
    if la[0] == "Monomial" and lb[0] == "Monomial":
        return ("Monomial", la[1] + lb[1])
    return ("Tensor", la, lb)


def kunneth(a: GradedRing, b: GradedRing) -> GradedRing:
    """Kunneth ring of a product space; squares by the Cartan formula."""
    return TensorRing(a, b)


def tensor_power(r: GradedRing, n: int) -> GradedRing:
    return reduce(kunneth, [r] * n)


# ---------------------------------------------------------------------------
# symmetric square


class NakaokaRing(GradedRing):
    """H*(SP^2(X); F2) from a homogeneous basis b_0 = 1, b_1, ... of H*(X).

    Basis: 1, phi(b_i (x) b_j) for i < j, E_s(b_i) for 2 <= s <= deg b_i.
    Products of phi-elements expand bilinearly through

        phi(b_i(x)b_j) phi(b_u(x)b_v) = phi(b_i b_u (x) b_j b_v) + phi(b_i b_v (x) b_j b_u)

    with phi(c(x)d) = phi(d(x)c) and phi(b(x)b) = sum_s E_s(Sq^(deg b - s) b);
    any product with an E-element vanishes.
    """

    def __init__(self, r: GradedRing):
        if not r.has_sq:
            raise MissingSteenrod("the symmetric-square ring needs Steenrod squares on the input")
        self.source = r
        deg = r.degrees
        n = len(r)
        basis = [BasisElement(0, 0, ("Unit",))]
        self.phi_id: dict[tuple[int, int], int] = {}
        self.e_id: dict[tuple[int, int], int] = {}
        for i in range(n):
            for j in range(i + 1, n):
                self.phi_id[(i, j)] = len(basis)
                basis.append(BasisElement(len(basis), deg[i] + deg[j], ("Phi", i, j)))
        for i in range(n):
            for s in range(2, deg[i] + 1):
                self.e_id[(s, i)] = len(basis)
                basis.append(BasisElement(len(basis), deg[i] + s, ("E", s, i)))
        super().__init__(basis, name=f"SP2({r.name})")
        self._diag: dict[int, int] = {}

    def name_of(self, i: int) -> str:
        label = self.basis[i].label
        src = self.source.name_of
        if label[0] == "Phi":
            return f"phi({src(label[1])}(x){src(label[2])})"
        if label[0] == "E":
            return f"E{label[1]}({src(label[2])})"
        return "1"

    def E(self, s: int, c: int) -> int:
        out = 0
        for k in gf2.bits(c):
            idx = self.e_id.get((s, k))
            if idx is None:
                raise ClosureError(f"E_{s}(b_{k}) is not a basis element (deg b_{k} = {self.source.degrees[k]})")
            out ^= 1 << idx
        return out

    def diag(self, i: int) -> int:
        v = self._diag.get(i)
        if v is None:
            d = self.source.degrees[i]
            v = 0
            for s in range(2, d + 1):
                v ^= self.E(s, self.source.sq_basis(d - s, i))
            self._diag[i] = v
        return v

    def phi(self, c: int, d: int) -> int:
        """phi(c (x) d) for arbitrary classes c, d of the source ring."""
        if not c or not d:
            return 0
        out = 0
        ds = list(gf2.bits(d))
        for a in gf2.bits(c):
            for b in ds:
                if a < b:
                    out ^= 1 << self.phi_id[(a, b)]
                elif a > b:
                    out ^= 1 << self.phi_id[(b, a)]
                else:
                    out ^= self.diag(a)
        return out

    def _mul(self, x, y):
        lx, ly = self.basis[x].label, self.basis[y].label
        if lx[0] != "Phi" or ly[0] != "Phi":
            return 0
        _, i, j = lx
        _, u, v = ly
        r = self.source
        return self.phi(r.mul_basis(i, u), r.mul_basis(j, v)) ^ self.phi(r.mul_basis(i, v), r.mul_basis(j, u))


def nakaoka_sp2(r: GradedRing) -> NakaokaRing:
    return NakaokaRing(r)


def sp2_basis_size(r: GradedRing) -> int:
    n = len(r)
    return 1 + n * (n - 1) // 2 + sum(max(0, d - 1) for d in r.degrees)


# ---------------------------------------------------------------------------
# cup-length


@dataclass(frozen=True)
class CupLength:
    length: int
    witness: tuple[int, ...]  # basis ids whose product is nonzero
    product: int

    def __int__(self):
        return self.length


def _ideal_powers(r: GradedRing, first: Iterable[tuple[int, tuple[int, ...]]], gens: Sequence[int],
                  gen_words: Sequence[tuple[int, ...]]) -> CupLength:
    """Iterate S_{k+1} = span{s * g} from a spanning family of S_1.

    Each spanning vector carries the word of basis ids / generators that
    produced it, so the last nonempty stage yields a witness product.
    """
    layer = []
    ech = gf2.EchelonBasis()
    for v, word in first:
        if ech.add(v):
            layer.append((v, word))
    if not layer:
        return CupLength(0, (), 0)
    k = 1
    while True:
        ech = gf2.EchelonBasis()
        nxt = []
        for v, word in layer:
            for g, gw in zip(gens, gen_words):
                p = r.mul(v, g)
                if p and ech.add(p):
                    nxt.append((p, word + gw))
        if not nxt:
            v, word = layer[0]
            return CupLength(k, word, v)
        layer = nxt
        k += 1


def ideal_generators(r: GradedRing) -> list[int]:
    """Basis ids whose span complements the square of the augmentation ideal."""
    pos = r.positive_ids()
    sq = gf2.EchelonBasis()
    for a, b in itertools.combinations_with_replacement(pos, 2):
        v = r.mul_basis(a, b)
        if v:
            sq.add(v)
    gens = []
    for i in sorted(pos, key=lambda i: (r.degrees[i], i)):
        if sq.add(1 << i):
            gens.append(i)
    return gens


def cup_length_witness(r: GradedRing) -> CupLength:
    """Longest nonzero product of positive-degree classes, with a witness.

    S_1 is the augmentation ideal I and S_{k+1} = S_k * I; since S_k is an
    ideal this equals S_k times a set of ideal generators of I.
    """
    gens = ideal_generators(r)
    first = [(1 << i, (i,)) for i in r.positive_ids()]
    return _ideal_powers(r, first, [1 << g for g in gens], [(g,) for g in gens])


def cup_length(r: GradedRing) -> int:
    return cup_length_witness(r).length


def multiplication_images(t: GradedRing, r: GradedRing, n: int) -> list[int]:
    """Image in r of each basis element of r^(x)n under x_1 (x) ... (x) x_n -> x_1 ... x_n."""
    size = len(r)
    images = []
    for idx in range(len(t)):
        digits = []
        rest = idx
        for _ in range(n):
            rest, dgt = divmod(rest, size)
            digits.append(dgt)
        v = 1
        for dgt in digits:
            v = r.mul(v, 1 << dgt)
            if not v:
                break
        images.append(v)
    return images


def leg(r: GradedRing, n: int, j: int, i: int) -> int:
    """Basis id of 1 (x) ... (x) b_i (x) ... (x) 1 with b_i in slot j of r^(x)n."""
    return i * len(r) ** (n - 1 - j)


def zero_divisor_cup_length(r: GradedRing, n: int) -> int:
    """Cup-length of the kernel of multiplication r^(x)n -> r."""
    if n < 1:
        raise ValueError("n >= 1")
    if n == 1:
        return 0
    t = tensor_power(r, n)
    kernel = gf2.nullspace(multiplication_images(t, r, n))
    if not kernel:
        return 0
    # the kernel is the ideal generated by b in slot j minus b in slot 0
    gens = [
        (1 << leg(r, n, j, i)) ^ (1 << leg(r, n, 0, i))
        for i in r.positive_ids()
        for j in range(1, n)
    ]
    first = [(v, ()) for v in kernel]
    return _ideal_powers(t, first, gens, [()] * len(gens)).length


# ---------------------------------------------------------------------------
# validation


def check_ring_axioms(r: GradedRing, samples: int = 200, full: bool = False, seed: int = 0) -> list[str]:
    """Return a list of violated ring invariants (empty when all hold)."""
    failures = []
    n = len(r)
    ids = range(n)
    labels = [b.label for b in r.basis]
    if len(set(labels)) != n:
        failures.append("duplicate basis labels")
    for i in ids:
        if r.mul_basis(0, i) != 1 << i:
            failures.append(f"unit fails on b{i}")
    for i in ids:
        for j in range(i, n):
            v = r.mul_basis(i, j)
            if v != r.mul_basis(j, i):
                failures.append(f"not commutative at ({i},{j})")
            if v and r.degree_of(v) != r.degrees[i] + r.degrees[j]:
                failures.append(f"product b{i}*b{j} not in degree {r.degrees[i] + r.degrees[j]}")
    if full:
        triples: Iterable = itertools.product(ids, repeat=3)
    else:
        rng = random.Random(seed)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
    for i, j, k in triples:
        if r.mul(r.mul_basis(i, j), 1 << k) != r.mul(1 << i, r.mul_basis(j, k)):
            failures.append(f"not associative at ({i},{j},{k})")
    if r.has_sq:
        for i in ids:
            d = r.degrees[i]
            if r.sq_basis(0, i) != 1 << i:
                failures.append(f"Sq0 != id on b{i}")
            if d and r.sq_basis(d, i) != r.mul_basis(i, i):
                failures.append(f"top square != cup square on b{i}")
            for k in range(1, d):
                v = r.sq_basis(k, i)
                if v and r.degree_of(v) != d + k:
                    failures.append(f"Sq{k}(b{i}) in wrong degree")
    return failures


# ---------------------------------------------------------------------------
# spaces


def ring_of_space(spec: SpaceSpec) -> GradedRing:
    if isinstance(spec, Sphere):
        return ring_of_sphere(spec.m)
    if isinstance(spec, RP):
        return ring_of_rp(spec.m)
    if isinstance(spec, Product):
        return reduce(kunneth, [ring_of_space(p) for p in spec.parts])
    if isinstance(spec, Power):
        return tensor_power(ring_of_space(spec.base), spec.k)
    raise UnsupportedSpace(f"no cohomology ring is constructed for {spec}")
