"""Command-line front end.

Every command prints a JSON report on stdout (and to ``--out`` when
given). Exit codes: 0 all checks pass, 1 a mathematical check failed,
2 usage or input error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import hashlib
import inspect
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .constructions import Family, FamilySpec, named_extremal, random_gn_member
from .enumeration import Scope
from .errors import CapacityError, ConstructionError, GraphFormatError, InvalidParameter, PreconditionError, SearchCapExceeded
from .graph6 import decode, encode
from .patterns import Pattern, PatternTag, find_pattern, two_cycles_or_certificate
from .planarity import face_census, is_outerplanar, planar_embedding
from .search import spex_argmax, turan_number
from .spectral import spectral_radius
from .verify import SUITES

SCHEMA = "planex.report/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _strip_elapsed(obj):
    if isinstance(obj, dict):
        return {k: _strip_elapsed(v) for k, v in obj.items() if k != "elapsed"}
    if isinstance(obj, list):
        return [_strip_elapsed(v) for v in obj]
    return obj


def result_digest(result: dict) -> str:
    """sha256 of the result with timing fields removed."""
    text = json.dumps(_strip_elapsed(result), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _emit(args: argparse.Namespace, params: dict, result: dict, start: float) -> None:
    report = {
        "schema": SCHEMA,
        "manifest": {
            "command": args.command,
            "parameters": params,
            "version": __version__,
            "seed": getattr(args, "seed", None),
            "elapsed": time.perf_counter() - start,
            "digest": result_digest(result),
        },
        "result": result,
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")


def _read_graph(args: argparse.Namespace):
    if args.graph6 is not None:
        return decode(args.graph6)
    if args.graph6_file is not None:
        lines = [ln.strip() for ln in Path(args.graph6_file).read_text().splitlines() if ln.strip()]
        if not lines:
            raise UsageError(f"{args.graph6_file} holds no graph")
        return decode(lines[0])
    raise UsageError("give --graph6 or --graph6-file")


def _write_witnesses(path: str | None, forms: list[str]) -> None:
    if path:
        Path(path).write_text("".join(f + "\n" for f in forms))


# -- commands ---------------------------------------------------------------------


def cmd_construct(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    params = {"family": args.family, "n": args.n, "ell": args.ell}
    if args.family == "GN_MEMBER":
        if args.seed is None:
            raise UsageError("GN_MEMBER draws a random attachment sequence and needs --seed")
        g, seq = random_gn_member(args.n, random.Random(args.seed))
        result = {"family": "GN_MEMBER", "n": args.n, "attachments": [list(p) for p in seq],
                  "edges": g.num_edges, "graph6": encode(g)}
        _emit(args, params, result, start)
        return EXIT_OK
    try:
        rep = named_extremal(FamilySpec(Family(args.family), args.n, args.ell))
    except ConstructionError as exc:
        _emit(args, params, {"error": str(exc)}, start)
        return EXIT_FAIL
    _emit(args, params, rep.to_dict(), start)
    return EXIT_OK


def _outerplanar_or_none(g):
    try:
        return is_outerplanar(g)
    except CapacityError:  # the test needs one spare vertex
        return None


def cmd_check(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    g = _read_graph(args)
    pattern = Pattern.parse(args.pattern)
    witness = find_pattern(g, pattern)
    emb = planar_embedding(g)
    result: dict = {
        "graph6": encode(g),
        "n": g.n,
        "edges": g.num_edges,
        "pattern": str(pattern),
        "free": witness is None,
        "planar": emb is not None,
        "outerplanar": _outerplanar_or_none(g),
    }
    if witness is not None:
        if pattern.tag is PatternTag.K1_PK:
            result["witness"] = {"apex": witness[0], "path": list(witness[1])}
        else:
            result["witness"] = {"cycles": [list(c) for c in witness]}
    if pattern.tag is PatternTag.T_C and pattern.t == 2 and emb is not None and g.n and g.min_degree() >= 3:
        result["two_cycles"] = two_cycles_or_certificate(g).to_dict()
    if emb is not None:
        c = face_census(emb)
        result["faces"] = {"sizes": {str(k): v for k, v in c.face_sizes.items()}, "e3": c.e3, "e33": c.e33}
        if args.embedding:
            result["embedding"] = json.loads(emb.to_json())
    _emit(args, {"pattern": args.pattern}, result, start)
    return EXIT_OK if witness is None else EXIT_FAIL


def cmd_spectral(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    g = _read_graph(args)
    res = spectral_radius(g, args.tol)
    result = {"graph6": encode(g), "n": g.n, "edges": g.num_edges, **res.to_dict(args.vector)}
    _emit(args, {"tol": args.tol}, result, start)
    return EXIT_OK


def cmd_turan(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    rep = turan_number(args.scope, args.n, Pattern.parse(args.pattern), prune=not args.no_prune, jobs=args.jobs)
    _write_witnesses(args.witnesses, rep.witnesses)
    params = {"scope": args.scope, "n": args.n, "pattern": args.pattern, "prune": not args.no_prune}
    _emit(args, params, rep.to_dict(), start)
    return EXIT_OK


def cmd_spex(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    if args.pattern is None:
        raise UsageError("spex needs --pattern")
    rep = spex_argmax(args.scope, args.n, Pattern.parse(args.pattern), tol=args.tol,
                      prune=not args.no_prune, jobs=args.jobs)
    _write_witnesses(args.witnesses, rep.witnesses)
    params = {"scope": args.scope, "n": args.n, "pattern": args.pattern, "tol": args.tol}
    _emit(args, params, rep.to_dict(), start)
    return EXIT_CAP if rep.partial else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    names = args.suite or list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
    if "grown-family" in names and args.seed is None:
        raise UsageError("the grown-family suite samples random members and needs --seed")
    results = []
    for name in names:
        fn = SUITES[name]
        kwargs = {}
        accepted = inspect.signature(fn).parameters
        if args.n_max is not None and "n_max" in accepted:
            kwargs["n_max"] = args.n_max
        if "seed" in accepted:
            kwargs["seed"] = args.seed
        if "jobs" in accepted:
            kwargs["jobs"] = args.jobs
        r = fn(**kwargs)
        results.append(r)
        print(f"{r.status.upper():8s} {r.name:22s} {r.summary}", file=sys.stderr)
    result = {"suites": [r.to_dict() for r in results],
              "all_passed": all(r.passed for r in results)}
    _emit(args, {"suites": names, "n_max": args.n_max}, result, start)
    return EXIT_OK if result["all_passed"] else EXIT_FAIL


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planex", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"planex {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--graph6", help="graph as a graph6 string")
        sp.add_argument("--graph6-file", help="file whose first line is a graph6 string")

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--out", help="also write the JSON report here")

    sp = sub.add_parser("construct", help="build a named extremal family with self-checks")
    sp.add_argument("family", choices=[f.value for f in Family] + ["GN_MEMBER"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--seed", type=int, help="required for GN_MEMBER")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("check", help="test a graph for a pattern (exit 1 when present)")
    graph_input(sp)
    sp.add_argument("--pattern", required=True, help="C<l>, <t>C<l>, <t>C or K1P<k>")
    sp.add_argument("--embedding", action="store_true", help="include the rotation system and faces")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("spectral", help="spectral radius and Perron vector")
    graph_input(sp)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--vector", action="store_true", help="include the Perron vector")
    common(sp)
    sp.set_defaults(func=cmd_spectral)

    for name, func, help_ in (("turan", cmd_turan, "maximum edges of a pattern-free graph"),
                              ("spex", cmd_spex, "maximum spectral radius of a pattern-free graph")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--scope", choices=[s.value for s in Scope], default=Scope.PLANAR.value)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--pattern", required=name == "turan")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--no-prune", action="store_true", help="filter only complete graphs")
        sp.add_argument("--witnesses", help="write witness graph6 lines here")
        if name == "spex":
            sp.add_argument("--tol", type=float, default=1e-8, help="tie margin on rho")
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("verify", help="run verification suites and print a pass/fail matrix")
    sp.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} (repeatable; default all)")
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CapacityError, SearchCapExceeded) as exc:
        print(f"planex: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, InvalidParameter, GraphFormatError, PreconditionError) as exc:
        print(f"planex: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
