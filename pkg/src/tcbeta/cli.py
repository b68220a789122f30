"""Command line: ``tcb plan | sp2 | bounds | verify``.

Exit codes: 0 success, 2 parse/usage error, 3 domain error, 4 verification
failure.  Every failure prints a JSON error object on stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import bounds as bd
from . import cohomology as coh
from . import planners as pl
from . import verify as vf
from .errors import DomainError, InconsistentBounds, ParseError, TCBError
from .spaces import Sphere, parse_space

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4
SP2_MAX_BASIS = 20000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(code: int, error: str, message: str, **extra) -> int:
    obj = {"error": error, "message": message, "exit_code": code}
    obj.update(extra)
    print(json.dumps(obj, sort_keys=True), file=sys.stderr)
    return code


def _default_seed() -> int:
    raw = os.environ.get("TCB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"TCB_SEED must be an integer, got {raw!r}") from None


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_plan(args) -> int:
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            data = json.load(fh)
    elif args.points:
        data = json.loads(args.points)
    else:
        raise UsageError("plan needs --input FILE or --points JSON")
    if isinstance(data, list):
        data = {"points": data}
    w = pl.WaypointTuple.from_json(data)
    if args.space:
        spec = parse_space(args.space)
        if not isinstance(spec, Sphere):
            raise UsageError(f"plan works on spheres only, got {spec}")
        if spec.m != w.m:
            raise DomainError(f"points lie on S^{w.m} but --space is {spec}")
    path = pl.plan(w)
    times = pl.waypoint_times(path, w.n)
    dev = float(np.max(np.abs(path(np.asarray(times)) - np.asarray(w.points))))
    if not dev < vf.TOLERANCE:
        return _fail(EXIT_VERIFY, "WaypointMismatch", f"planned path misses a waypoint by {dev:.3e}")
    meta = {
        "n": w.n,
        "m": w.m,
        "domain": path.meta.get("domain"),
        "rules": path.meta.get("rules", []),
        "flags": path.flags(),
        "times": times,
        "segments": len(path.segments),
        "waypoint_deviation": dev,
    }
    doc = {"meta": meta, "path": path.to_json()}
    if args.out:
        _emit(json.dumps(path.to_json(), indent=2), args.out)
        print(json.dumps(meta, indent=2))
    else:
        print(json.dumps(doc, indent=2))
    if args.csv:
        ts = np.linspace(0.0, 1.0, args.samples)
        pts = path(ts)
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            wr = csv.writer(fh)
            wr.writerow(["t"] + [f"x{k}" for k in range(w.m + 1)])
            for t, p in zip(ts, pts):
                wr.writerow([repr(float(t))] + [repr(float(c)) for c in p])
    return EXIT_OK


def poincare_text(counts: Sequence[int]) -> str:
    terms = []
    for d, c in enumerate(counts):
        if not c:
            continue
        mono = "1" if d == 0 else ("t" if d == 1 else f"t^{d}")
        terms.append(mono if c == 1 else (f"{c}" if d == 0 else f"{c}{mono}"))
    return " + ".join(terms) if terms else "0"


def cmd_sp2(args) -> int:
    spec = parse_space(args.space)
    r = coh.ring_of_space(spec)
    size = coh.sp2_basis_size(r)
    if size > args.max_basis:
        raise DomainError(f"SP^2({spec}) has {size} basis elements, above --max-basis {args.max_basis}")
    s = coh.nakaoka_sp2(r)
    cl = coh.cup_length_witness(s)
    doc = {
        "space": str(spec),
        "basis_size": len(s),
        "poincare": s.poincare(),
        "poincare_polynomial": poincare_text(s.poincare()),
        "cup_length": cl.length,
        "witness": [s.name_of(i) for i in cl.witness],
        "witness_product": s.format_class(cl.product),
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(f"H*(SP^2({spec}); F2)")
        print(f"  Poincare polynomial: {doc['poincare_polynomial']}")
        print(f"  cup-length: {cl.length}")
        print(f"  witness: {' * '.join(doc['witness']) or '(none)'} = {doc['witness_product']}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    spec = parse_space(args.space)
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    try:
        flavor = bd.normalize_flavor(args.flavor)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    iv = bd.compute_bounds(spec, args.n, flavor)
    if args.format == "json":
        print(json.dumps(iv.to_json(), indent=2))
    else:
        sys.stdout.write(bd.explain(iv))
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    suites = vf.SUITES if args.suite == "all" else (args.suite,)
    reports = [vf.run_suite(s, args.trials, seed) for s in suites]
    _emit(vf.reports_json(reports), args.out)
    if args.out:
        for r in reports:
            print(f"{r.suite:20s} {'ok' if r.passed else 'FAIL'}  max_deviation={r.max_deviation:.3e}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tcb", description="bidirectional planners, SP^2 cohomology and TC bounds")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("plan", help="plan a path through waypoints on a sphere")
    q.add_argument("--input", help="waypoint JSON file {m, points}")
    q.add_argument("--points", help="waypoints as an inline JSON list")
    q.add_argument("--space", help="S(m); checked against the points")
    q.add_argument("--out", help="write path JSON here")
    q.add_argument("--csv", help="write a sampled polyline here")
    q.add_argument("--samples", type=int, default=201)
    q.set_defaults(func=cmd_plan)

    q = sub.add_parser("sp2", help="cohomology of the symmetric square")
    q.add_argument("--space", required=True)
    q.add_argument("--format", choices=("table", "json"), default="table")
    q.add_argument("--max-basis", type=int, default=SP2_MAX_BASIS)
    q.set_defaults(func=cmd_sp2)

    q = sub.add_parser("bounds", help="interval for TC, TC^beta or TC^Sigma")
    q.add_argument("--space", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--flavor", default="beta", help="tc | beta | sigma")
    q.add_argument("--format", choices=("table", "json"), default="table")
    q.set_defaults(func=cmd_bounds)

    q = sub.add_parser("verify", help="seeded property suites")
    q.add_argument("--suite", default="all", choices=("all",) + vf.SUITES)
    q.add_argument("--trials", type=int, default=200, help="random inputs per configuration")
    q.add_argument("--seed", type=int, default=None, help="defaults to $TCB_SEED or 0")
    q.add_argument("--out", help="write the JSON report here")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "samples", 2) < 2:
            raise UsageError("--samples must be at least 2")
        return args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "UsageError", str(exc))
    except ParseError as exc:
        return _fail(EXIT_USAGE, exc.code, str(exc), position=exc.pos, expected=exc.expected)
    except json.JSONDecodeError as exc:
        return _fail(EXIT_USAGE, "ParseError", f"invalid JSON: {exc}")
    except InconsistentBounds as exc:
        return _fail(EXIT_VERIFY, exc.code, str(exc))
    except TCBError as exc:
        return _fail(EXIT_DOMAIN, exc.code, str(exc))
    except (OSError, ValueError, KeyError) as exc:
        return _fail(EXIT_DOMAIN, type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
