"""Interval bounds for TC_n, TC^beta_n and TC^Sigma_n of concrete spaces.

The engine explores the finite graph of nodes (space, n, flavor) linked by the
inequalities below, seeds each node with its direct bounds (registry values,
dimension and connectivity bounds, cup-length bounds, the sphere planner),
and propagates until no interval tightens.  Every tightening is recorded as a
RuleApplication; the lattice is bounded so the loop terminates.
"""

from __future__ import annotations

import ast
import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any

from . import cohomology as coh
from .errors import InconsistentBounds, UnsupportedSpace
from .spaces import ConnSumRP, Power, RP, SpaceSpec, Sphere, Surface, power

FLAVORS = ("TC", "TCbeta", "TCsigma")
FLAVOR_ALIASES = {
    "tc": "TC",
    "beta": "TCbeta",
    "tcbeta": "TCbeta",
    "sigma": "TCsigma",
    "tcsigma": "TCsigma",
}
SYMBOLS = {"TC": "TC", "TCbeta": "TC^β", "TCsigma": "TC^Σ"}

# SP^2 rings beyond this many basis elements are skipped by L4a/L4b, tensor
# powers beyond this size by L0
SP2_LIMIT = 2000
ZCL_LIMIT = 1024

CITATIONS = {
    "CHAIN": "TC_n(X) <= TC^beta_n(X) <= TC^Sigma_n(X)",
    "EQ2": "TC^beta_2(X) = TC^Sigma_2(X): for n=2 reversal generates the full symmetric group",
    "U1": "TC^Sigma_n(X) <= n dim(X) + 1",
    "U2": "TC^beta_n(X) < (n dim(X) + 1)/(q + 1) + 1 for X q-connected (equivariant connectivity bound)",
    "U3": "TC^beta_2n(X) <= TC^beta_2n+1(X)",
    "L3": "TC^Sigma_2(X^l) <= TC^beta_2l(X)",
    "L4a": "TC^beta_2l(X) >= cl(H*(SP^2(X^l); F2)) + 1",
    "L4b": "TC^Sigma_2k(X) >= k cl(H*(SP^2(X); F2)) + 1",
    "L0": "TC_n(X) >= zero-divisor cup-length over F2 + 1",
    "PLANNER": "explicit bidirectional n-waypoint planner on S^m for n, m odd: TC^beta_n(S^m) <= n",
}


def normalize_flavor(flavor: str) -> str:
    if flavor in FLAVORS:
        return flavor
    try:
        return FLAVOR_ALIASES[flavor.lower()]
    except KeyError:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of TC, beta, sigma") from None


def normalize_space(spec: SpaceSpec) -> SpaceSpec:
    if isinstance(spec, Power):
        return power(normalize_space(spec.base), spec.k)
    return spec


@dataclass(frozen=True)
class RuleApplication:
    rule_id: str
    kind: str  # "lower" | "upper"
    value: int
    inputs: tuple[str, ...]
    citation: str

    def to_json(self) -> dict:
        return {
            "rule": self.rule_id,
            "kind": self.kind,
            "value": self.value,
            "inputs": list(self.inputs),
            "citation": self.citation,
        }


@dataclass
class BoundInterval:
    space: str
    flavor: str
    n: int
    lower: int
    upper: int
    derivations: list[RuleApplication] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def headline(self) -> str:
        return f"{self.lower} ≤ {SYMBOLS[self.flavor]}_{self.n} ≤ {self.upper}"

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "flavor": self.flavor,
            "n": self.n,
            "lower": self.lower,
            "upper": self.upper,
            "derivations": [d.to_json() for d in self.derivations],
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# registry


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def safe_eval(expr: str, env: dict[str, Any]):
    """Evaluate integer arithmetic / comparisons / ``a if c else b`` over ``env``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
            return node.value
        if isinstance(node, ast.Name):
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Not):
            return not ev(node.operand)
        if isinstance(node, ast.BoolOp):
            vals = (ev(v) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, right in zip(node.ops, node.comparators):
                r = ev(right)
                if type(op) not in _CMPOPS or not _CMPOPS[type(op)](left, r):
                    return False
                left = r
            return True
        if isinstance(node, ast.IfExp):
            return ev(node.body) if ev(node.test) else ev(node.orelse)
        raise ValueError(f"unsupported registry expression: {ast.dump(node)}")

    return ev(ast.parse(expr, mode="eval"))


@dataclass(frozen=True)
class RegistryEntry:
    id: str
    pattern: str
    constraints: tuple[str, ...]
    flavor: str
    n_predicate: str
    value_expression: str
    citation: str


@lru_cache(maxsize=1)
def load_registry() -> tuple[RegistryEntry, ...]:
    text = resources.files("tcbeta").joinpath("data/registry.json").read_text(encoding="utf-8")
    data = json.loads(text)
    return tuple(
        RegistryEntry(
            e["id"], e["pattern"], tuple(e["constraints"]), e["flavor"],
            e["n_predicate"], e["value_expression"], e["citation"],
        )
        for e in data["entries"]
    )


def _pattern_env(spec: SpaceSpec) -> tuple[str, dict[str, Any]] | None:
    if isinstance(spec, Sphere):
        return "Sphere", {"m": spec.m}
    if isinstance(spec, RP):
        return "RP", {"m": spec.m}
    if isinstance(spec, ConnSumRP):
        return "ConnSumRP", {"g": spec.g, "m": spec.m}
    if isinstance(spec, Surface):
        return "Surface", {"g": spec.genus, "orientable": spec.orientable}
    if isinstance(spec, Power) and isinstance(spec.base, Sphere):
        return "Power(Sphere)", {"m": spec.base.m, "l": spec.k}
    return None


def registry_lookup(spec: SpaceSpec, n: int, flavor: str,
                    entries: tuple[RegistryEntry, ...] | None = None) -> tuple[int, RegistryEntry] | None:
    """Exact cited value for a structural match of all hypotheses, else None."""
    flavor = normalize_flavor(flavor)
    spec = normalize_space(spec)
    matched = _pattern_env(spec)
    if matched is None:
        return None
    pattern, env = matched
    env = dict(env, n=n)
    for e in load_registry() if entries is None else entries:
        if e.pattern != pattern or e.flavor not in ("*", flavor):
            continue
        if all(safe_eval(c, env) for c in e.constraints) and safe_eval(e.n_predicate, env):
            return int(safe_eval(e.value_expression, env)), e
    return None


# ---------------------------------------------------------------------------
# direct bounds


def strict_upper(v: Fraction) -> int:
    """Largest integer strictly below v."""
    return math.ceil(v) - 1


def u2_value(spec: SpaceSpec, n: int) -> int:
    q = spec.connectivity
    return strict_upper(Fraction(n * spec.dim + 1, q + 1) + 1)


Node = tuple[SpaceSpec, int, str]


def node_name(node: Node) -> str:
    spec, n, flavor = node
    return f"{flavor}_{n}({spec})"


class BoundsEngine:
    """Holds the cup-length caches; ``compute`` is deterministic."""

    def __init__(self, sp2_limit: int = SP2_LIMIT, zcl_limit: int = ZCL_LIMIT,
                 registry: tuple[RegistryEntry, ...] | None = None):
        self.sp2_limit = sp2_limit
        self.zcl_limit = zcl_limit
        self.registry = registry
        self._cl: dict[str, int | None] = {}
        self._zcl: dict[tuple[str, int], int | None] = {}

    # cached ring computations; None means skipped

    def sp2_cup_length(self, spec: SpaceSpec) -> int | None:
        key = str(spec)
        if key not in self._cl:
            r = coh.ring_of_space(spec)
            if coh.sp2_basis_size(r) > self.sp2_limit:
                self._cl[key] = None
            else:
                self._cl[key] = coh.cup_length(coh.nakaoka_sp2(r))
        return self._cl[key]

    def zcl(self, spec: SpaceSpec, n: int) -> int | None:
        key = (str(spec), n)
        if key not in self._zcl:
            r = coh.ring_of_space(spec)
            if len(r) ** n > self.zcl_limit:
                self._zcl[key] = None
            else:
                self._zcl[key] = coh.zero_divisor_cup_length(r, n)
        return self._zcl[key]

    def _direct(self, node: Node, notes: list[str]) -> list[RuleApplication]:
        spec, n, flavor = node
        out: list[RuleApplication] = []
        hit = registry_lookup(spec, n, flavor, self.registry)
        if hit is not None:
            v, e = hit
            rid = f"REGISTRY:{e.id}"
            out.append(RuleApplication(rid, "lower", v, (), e.citation))
            out.append(RuleApplication(rid, "upper", v, (), e.citation))
        if flavor == "TCsigma":
            out.append(RuleApplication("U1", "upper", n * spec.dim + 1, (f"dim={spec.dim}",), CITATIONS["U1"]))
        if flavor in ("TCbeta", "TCsigma"):
            out.append(RuleApplication(
                "U2", "upper", u2_value(spec, n), (f"dim={spec.dim}", f"q={spec.connectivity}"), CITATIONS["U2"]))
        if flavor == "TCbeta" and isinstance(spec, Sphere) and spec.m % 2 and n % 2:
            out.append(RuleApplication("PLANNER", "upper", n, (), CITATIONS["PLANNER"]))
        if not spec.has_ring:
            if flavor == "TC" or n % 2 == 0:
                notes.append(f"{node_name(node)}: no cohomology ring for {spec}; ring rules skipped")
            return out
        if flavor == "TCbeta" and n % 2 == 0:
            x = power(spec, n // 2)
            cl = self.sp2_cup_length(x)
            if cl is None:
                notes.append(f"{node_name(node)}: L4a skipped, SP^2({x}) exceeds {self.sp2_limit} basis elements")
            else:
                out.append(RuleApplication("L4a", "lower", cl + 1, (f"cl(SP^2({x}))={cl}",), CITATIONS["L4a"]))
        if flavor == "TCsigma" and n % 2 == 0:
            cl = self.sp2_cup_length(spec)
            if cl is None:
                notes.append(f"{node_name(node)}: L4b skipped, SP^2({spec}) exceeds {self.sp2_limit} basis elements")
            else:
                k = n // 2
                out.append(RuleApplication(
                    "L4b", "lower", k * cl + 1, (f"cl(SP^2({spec}))={cl}", f"k={k}"), CITATIONS["L4b"]))
        if flavor == "TC":
            z = self.zcl(spec, n)
            if z is None:
                notes.append(f"{node_name(node)}: L0 skipped, tensor power exceeds {self.zcl_limit} basis elements")
            else:
                out.append(RuleApplication("L0", "lower", z + 1, (f"zcl_{n}={z}",), CITATIONS["L0"]))
        return out

    # graph of inequalities; each edge (rule, small, big) means value(small) <= value(big)

    def _edges(self, node: Node) -> list[tuple[str, Node, Node]]:
        spec, n, flavor = node
        out = [
            ("CHAIN", (spec, n, "TC"), (spec, n, "TCbeta")),
            ("CHAIN", (spec, n, "TCbeta"), (spec, n, "TCsigma")),
        ]
        if n == 2:
            out.append(("EQ2", (spec, 2, "TCbeta"), (spec, 2, "TCsigma")))
            out.append(("EQ2", (spec, 2, "TCsigma"), (spec, 2, "TCbeta")))
        if flavor == "TCbeta":
            if n % 2 == 0:
                out.append(("U3", (spec, n, "TCbeta"), (spec, n + 1, "TCbeta")))
                out.append(("L3", (power(spec, n // 2), 2, "TCsigma"), (spec, n, "TCbeta")))
            elif n >= 5:
                out.append(("U3", (spec, n - 1, "TCbeta"), (spec, n, "TCbeta")))
        if flavor == "TCsigma" and n == 2 and isinstance(spec, Power):
            out.append(("L3", (spec, 2, "TCsigma"), (spec.base, 2 * spec.k, "TCbeta")))
        return out

    def compute(self, spec: SpaceSpec, n: int, flavor: str) -> BoundInterval:
        if n < 2:
            raise ValueError("n >= 2")
        flavor = normalize_flavor(flavor)
        spec = normalize_space(spec)
        start: Node = (spec, n, flavor)

        # explore the connected component of the inequality graph
        seen = {start}
        queue = [start]
        edges: list[tuple[str, Node, Node]] = []
        edge_keys = set()
        while queue:
            node = queue.pop(0)
            for e in self._edges(node):
                key = (e[0], node_name(e[1]), node_name(e[2]))
                if key not in edge_keys:
                    edge_keys.add(key)
                    edges.append(e)
                for other in (e[1], e[2]):
                    if other not in seen:
                        seen.add(other)
                        queue.append(other)
        nodes = sorted(seen, key=node_name)
        edges.sort(key=lambda e: (e[0], node_name(e[1]), node_name(e[2])))

        lower = {v: 1 for v in nodes}
        upper: dict[Node, float] = {v: math.inf for v in nodes}
        log: dict[Node, list[RuleApplication]] = {v: [] for v in nodes}
        notes: list[str] = []
        for v in nodes:
            for app in self._direct(v, notes):
                if app.kind == "lower" and app.value > lower[v]:
                    lower[v] = app.value
                    log[v].append(app)
                elif app.kind == "upper" and app.value < upper[v]:
                    upper[v] = app.value
                    log[v].append(app)

        changed = True
        while changed:
            changed = False
            for rule, small, big in edges:
                if lower[small] > lower[big]:
                    lower[big] = lower[small]
                    log[big].append(RuleApplication(
                        rule, "lower", lower[big], (node_name(small) + ".lower",), CITATIONS[rule]))
                    changed = True
                if upper[big] < upper[small]:
                    upper[small] = upper[big]
                    log[small].append(RuleApplication(
                        rule, "upper", int(upper[small]), (node_name(big) + ".upper",), CITATIONS[rule]))
                    changed = True

        bad = [v for v in nodes if lower[v] > upper[v]]
        if bad:
            lines = []
            for v in bad:
                lines.append(f"{node_name(v)}: lower {lower[v]} > upper {upper[v]}")
                lines.extend(f"  {a.rule_id} {a.kind} {a.value}" for a in log[v])
            raise InconsistentBounds("inconsistent bounds (wrong rule encoding?):\n" + "\n".join(lines))
        return BoundInterval(str(spec), flavor, n, lower[start], int(upper[start]), log[start], notes)


_DEFAULT = BoundsEngine()


def compute_bounds(spec: SpaceSpec, n: int, flavor: str, engine: BoundsEngine | None = None) -> BoundInterval:
    return (engine or _DEFAULT).compute(spec, n, flavor)


def explain(interval: BoundInterval) -> str:
    lines = [f"{interval.headline()}   for X = {interval.space}"]
    for a in interval.derivations:
        rel = "≥" if a.kind == "lower" else "≤"
        inputs = f" from {', '.join(a.inputs)}" if a.inputs else ""
        lines.append(f"  [{a.rule_id}] {rel} {a.value}{inputs}  -- {a.citation}")
    if interval.lower == 1 and not any(a.kind == "lower" for a in interval.derivations):
        lines.append("  [trivial] ≥ 1")
    for note in interval.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


__all__ = [
    "FLAVORS", "BoundInterval", "BoundsEngine", "RuleApplication", "RegistryEntry",
    "UnsupportedSpace", "compute_bounds", "explain", "load_registry", "registry_lookup",
    "normalize_flavor", "safe_eval", "strict_upper", "u2_value",
]
