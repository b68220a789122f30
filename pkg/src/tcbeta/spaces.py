"""Space descriptions and the text grammar used on the command line.

Grammar (whitespace-insensitive, decimal integers)::

    space := "S(" m ")" | "RP(" m ")"
           | "Surface(" g ")" | "Surface(" g ",nonorientable)"
           | "ConnSumRP(" g "," m ")"
           | "Product(" space ("," space)* ")"
           | "Power(" space "," k ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError


class SpaceSpec:
    """Base class of the space AST."""

    @property
    def dim(self) -> int:
        raise NotImplementedError

    @property
    def connectivity(self) -> int:
        return 0

    @property
    def has_ring(self) -> bool:
        return False

    def factors(self) -> tuple["SpaceSpec", ...]:
        return (self,)


@dataclass(frozen=True)
class Sphere(SpaceSpec):
    m: int

    @property
    def dim(self):
        return self.m

    @property
    def connectivity(self):
        return self.m - 1

    @property
    def has_ring(self):
        return True

    def __str__(self):
        return f"S({self.m})"


@dataclass(frozen=True)
class RP(SpaceSpec):
    m: int

    @property
    def dim(self):
        return self.m

    @property
    def has_ring(self):
        return True

    def __str__(self):
        return f"RP({self.m})"


@dataclass(frozen=True)
class Surface(SpaceSpec):
    genus: int
    orientable: bool = True

    @property
    def dim(self):
        return 2

    def __str__(self):
        return f"Surface({self.genus})" if self.orientable else f"Surface({self.genus},nonorientable)"


@dataclass(frozen=True)
class ConnSumRP(SpaceSpec):
    g: int
    m: int

    def __post_init__(self):
        if self.g < 2 or self.m < 2:
            raise ValueError("ConnSumRP(g, m) needs g >= 2 and m >= 2")

    @property
    def dim(self):
        return self.m

    def __str__(self):
        return f"ConnSumRP({self.g},{self.m})"


@dataclass(frozen=True)
class Product(SpaceSpec):
    parts: tuple[SpaceSpec, ...]

    @property
    def dim(self):
        return sum(p.dim for p in self.parts)

    @property
    def connectivity(self):
        return min(p.connectivity for p in self.parts)

    @property
    def has_ring(self):
        return all(p.has_ring for p in self.parts)

    def factors(self):
        return tuple(f for p in self.parts for f in p.factors())

    def __str__(self):
        return "Product(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Power(SpaceSpec):
    base: SpaceSpec
    k: int

    @property
    def dim(self):
        return self.k * self.base.dim

    @property
    def connectivity(self):
        return self.base.connectivity

    @property
    def has_ring(self):
        return self.base.has_ring

    def factors(self):
        return self.base.factors() * self.k

    def __str__(self):
        return f"Power({self.base},{self.k})"


def power(base: SpaceSpec, k: int) -> SpaceSpec:
    """X^k with X^1 collapsed to X."""
    return base if k == 1 else Power(base, k)


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(\S))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        for mt in _TOKEN.finditer(text):
            if mt.group(1):
                self.toks.append(("int", mt.group(1), mt.start(1)))
            elif mt.group(2):
                self.toks.append(("name", mt.group(2), mt.start(2)))
            elif mt.group(3):
                self.toks.append(("punct", mt.group(3), mt.start(3)))
        self.i = 0

    def _pos(self) -> int:
        return self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)

    def fail(self, expected: list[str], pos: int | None = None):
        raise ParseError(self.text, self._pos() if pos is None else pos, expected)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def punct(self, ch: str):
        kind, val, _ = self.peek()
        if kind != "punct" or val != ch:
            self.fail([repr(ch)])
        self.i += 1

    def integer(self, lo: int, what: str) -> int:
        kind, val, pos = self.peek()
        if kind != "int":
            self.fail([what])
        self.i += 1
        v = int(val)
        if v < lo:
            self.fail([f"{what} >= {lo}"], pos)
        return v

    def space(self) -> SpaceSpec:
        kind, name, pos = self.peek()
        names = ["S", "RP", "Surface", "ConnSumRP", "Product", "Power"]
        if kind != "name" or name not in names + ["Sphere"]:
            self.fail(names)
        self.i += 1
        self.punct("(")
        if name in ("S", "Sphere"):
            # connected spaces only: S^0 is excluded
            out: SpaceSpec = Sphere(self.integer(1, "m"))
        elif name == "RP":
            out = RP(self.integer(1, "m"))
        elif name == "Surface":
            g = self.integer(0, "genus")
            orientable = True
            if self.peek()[1] == ",":
                self.i += 1
                kind, word, wpos = self.peek()
                if kind != "name" or word.lower() not in ("nonorientable", "orientable"):
                    self.fail(["'nonorientable'"])
                self.i += 1
                orientable = word.lower() == "orientable"
            if not orientable and g < 1:
                self.fail(["genus >= 1 for a nonorientable surface"], pos)
            out = Surface(g, orientable)
        elif name == "ConnSumRP":
            g = self.integer(2, "g")
            self.punct(",")
            out = ConnSumRP(g, self.integer(2, "m"))
        elif name == "Product":
            parts = [self.space()]
            while self.peek()[1] == ",":
                self.i += 1
                parts.append(self.space())
            out = Product(tuple(parts))
        else:
            base = self.space()
            self.punct(",")
            out = Power(base, self.integer(1, "k"))
        self.punct(")")
        return out


def parse_space(text: str) -> SpaceSpec:
    """Parse the space grammar; raises ParseError with position and expected tokens."""
    p = _Parser(text)
    spec = p.space()
    if p.i != len(p.toks):
        p.fail(["end of input"])
    return spec
