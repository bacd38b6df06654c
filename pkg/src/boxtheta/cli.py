"""Command-line interface: ``boxtheta {verify,nodes,search,bound,theta-eval}``.

Machine-readable output goes to stdout, human-readable text to stderr.
Exit status is 0 on success, 1 when a check fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import automorphisms, cuboid, curves, variety
from .suites import DEFAULT_SEED, SUITES, run_suite
from .theta import CHARACTERISTICS, DomainError, ThetaChar, TruncationError, theta_eval

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _complex_arg(text: str) -> complex:
    try:
        re, im = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from None
    return complex(re, im)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _say(text: str) -> None:
    print(text, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boxtheta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("--suite", required=True, choices=list(SUITES))
    p.add_argument("--samples", type=_positive_int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, help="tolerance (default per suite, or $BOX_TOL)")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for reproducible output")

    p = sub.add_parser("nodes", help="list the 48 singular points")
    p.add_argument("--method", choices=("algebraic", "orbit"), default="algebraic")
    p.add_argument("--closure", action="store_true", help="with --method orbit, also report the group order")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="search for Euler bricks or perfect cuboids")
    p.add_argument("--max-edge", type=_positive_int, required=True)
    p.add_argument("--mode", choices=cuboid.MODES, default="euler")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--no-timing", action="store_true")

    p = sub.add_parser("bound", help="test d <= 176 + 16 g")
    p.add_argument("--degree", type=_positive_int, required=True)
    p.add_argument("--genus", type=int, required=True)

    p = sub.add_parser("theta-eval", help="evaluate one theta function (use --z=RE,IM for negative RE)")
    p.add_argument("--char", choices=[f"{c.a}{c.b}" for c in CHARACTERISTICS], required=True)
    p.add_argument("--z", type=_complex_arg, required=True, metavar="RE,IM")
    p.add_argument("--double-arg", action="store_true", help="evaluate at 2z (second kind)")
    return parser


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, args.samples, args.seed, args.tol)
    _say(report.summary())
    if args.json:
        _emit(report.to_json(timing=not args.no_timing))
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_nodes(args) -> int:
    points = variety.singular_points()
    payload = {"method": args.method}
    ok = len(points) == 48
    if args.method == "orbit":
        orbit = automorphisms.node_orbit(automorphisms.full_generators())
        matches = orbit == set(variety.singular_points_exact())
        points = sorted((variety.BoxPoint.from_coords([complex(c) for c in v]) for v in orbit), key=lambda p: p.to_json())
        payload["matches_algebraic"] = matches
        ok = ok and matches and len(points) == 48
        if args.closure:
            _, report = automorphisms.group_closure_order(automorphisms.full_generators())
            payload["closure"] = report.to_json()
            _say(report.summary())
    payload["count"] = len(points)
    payload["points"] = [p.to_json() for p in points]
    _say(f"{len(points)} singular points ({args.method})")
    if args.json:
        _emit(payload)
    else:
        for p in points:
            _say("  [" + " : ".join(f"{c:.6g}" for c in p.coords) + "]")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_search(args) -> int:
    cfg = cuboid.SearchConfig(args.max_edge, args.mode, args.workers, args.csv)
    try:
        found, summary = cuboid.run_search(cfg, timing=not args.no_timing)
    except OSError as exc:
        _say(f"cannot write {args.csv}: {exc}")
        return EXIT_FAIL
    for cand in found:
        _say(f"  {cand.edges} diagonals {cand.d12}, {cand.d13}, {cand.d23}, space {cand.space_diag}")
    _say(f"{summary['primitive_count']} primitive {args.mode} solutions with edges <= {args.max_edge}")
    _emit(summary)
    return EXIT_OK


def _cmd_bound(args) -> int:
    try:
        inv = curves.CurveInvariants(args.degree, args.genus)
    except ValueError as exc:
        _say(f"boxtheta bound: error: {exc}")
        return EXIT_USAGE
    print("true" if curves.degree_genus_bound(inv) else "false")
    return EXIT_OK


def _cmd_theta_eval(args) -> int:
    ch = ThetaChar.parse(args.char)
    if args.double_arg and ch.b != 0:
        _say("boxtheta theta-eval: error: --double-arg needs characteristic 00 or 10")
        return EXIT_USAGE
    z = 2 * args.z if args.double_arg else args.z
    try:
        result = theta_eval(ch, z)
    except DomainError as exc:
        _say(f"boxtheta theta-eval: error: {exc}")
        return EXIT_USAGE
    except TruncationError as exc:
        _say(str(exc))
        return EXIT_FAIL
    _emit(
        {
            "char": args.char,
            "z": [args.z.real, args.z.imag],
            "double_arg": args.double_arg,
            "value": [result.value.real, result.value.imag],
            "error_bound": result.error_bound,
            "terms": result.terms,
        }
    )
    return EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "nodes": _cmd_nodes,
    "search": _cmd_search,
    "bound": _cmd_bound,
    "theta-eval": _cmd_theta_eval,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors this way
        return EXIT_USAGE if exc.code else EXIT_OK
    return _COMMANDS[args.command](args)


def entry_point() -> None:
    sys.exit(main())
