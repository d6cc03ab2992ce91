"""Command-line front end.

Usage::

    polycob class 1 1.5 4 1 2 --json
    polycob admissible 2 3.5 4 1 2
    polycob smooth 1 1 1 1
    polycob chamber 1 1.5 4 1 2
    polycob polytope 2 0.5 4 0.5 2.5 --svg ex3.svg
    polycob bend --k 2 --theta 0.5 1 1.5 4 1 2
    polycob bend orbit --k 1 --steps 16 --json 1 1.5 4 1 2
    polycob fixed-points 1 1.5 4 1 2 --pivot 4 5
    polycob equilateral 7 --epsilon 1/1000

Exit codes: 0 success, 2 invalid input, 3 length vector on a wall,
4 empty moduli space, 5 equilateral input to ``class`` without ``--epsilon``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .admissible import enumerate_admissible
from .cobordism import (
    Pivot,
    arrange,
    cobordism_class,
    default_pivot,
    equilateral_class,
    perturbed_equilateral_check,
    type2_submanifolds,
)
from .errors import EmptyModuliError, InputError, NoPivotError, PolycobError, WallError
from .lengths import (
    LengthVector,
    chamber_signature,
    degenerate_partition,
    format_rational,
    is_nonempty,
    parse_rational,
)
from .polygon import (
    DEFAULT_TOL,
    action_angle,
    bend_action,
    build_type1,
    diagonals,
    orbit,
    random_polygon,
    trajectory_jsonl,
)
from .polytope5 import classify_shape, emit, moment_polygon

EXIT_OK, EXIT_INPUT, EXIT_WALL, EXIT_EMPTY, EXIT_EQUILATERAL = 0, 2, 3, 4, 5

COMMANDS = ("class", "admissible", "smooth", "chamber", "polytope", "bend",
            "fixed-points", "equilateral")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _parser(name: str, *, lengths: bool = True, pivot: bool = False, threads: bool = False,
            sim: bool = False) -> _Parser:
    p = _Parser(prog=f"polycob {name}")
    if lengths:
        p.add_argument("lengths", nargs="+", help="side lengths: integers, p/q or decimals")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    if pivot:
        p.add_argument("--pivot", nargs=2, type=int, metavar=("I", "J"),
                       help="1-based edges whose diagonal is bent")
    if threads:
        p.add_argument("--threads", type=int, default=1)
    if sim:
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="closure tolerance")
        p.add_argument("--seed", type=int, default=None,
                       help="draw a random starting polygon instead of the fixed one")
    return p


def _dump(obj) -> str:
    return json.dumps(obj)


def _lengths(tokens: Sequence[str]) -> LengthVector:
    return LengthVector(tokens)


def _pivot(args) -> Pivot | None:
    return Pivot(*args.pivot) if getattr(args, "pivot", None) else None


def _cmd_class(argv, out) -> int:
    p = _parser("class", pivot=True, threads=True)
    p.add_argument("--epsilon", default=None, help="add epsilon to the last length")
    args = p.parse_intermixed_args(argv)
    r = _lengths(args.lengths)
    if args.epsilon is not None:
        entries = list(r.entries)
        entries[-1] += parse_rational(args.epsilon)
        r = LengthVector(entries)
    try:
        result = cobordism_class(r, _pivot(args), threads=args.threads)
    except NoPivotError as exc:
        raise NoPivotError(f"{exc}; pass --epsilon to perturb the last length") from exc
    if args.json:
        print(_dump(result.to_json()), file=out)
    else:
        hist = ", ".join(f"l={k}: {v}" for k, v in result.histogram.items()) or "none"
        print(f"r = ({', '.join(result.r.to_json())}), pivot {tuple(result.pivot.to_json())}", file=out)
        print(f"M_r ~ {result}", file=out)
        print(f"admissible sets by cardinality: {hist}", file=out)
    return EXIT_OK


def _cmd_admissible(argv, out) -> int:
    p = _parser("admissible", pivot=True, threads=True)
    args = p.parse_intermixed_args(argv)
    r = _lengths(args.lengths)
    pivot = _pivot(args)
    arranged = arrange(r, pivot) if pivot else r
    family = enumerate_admissible(arranged, threads=args.threads)
    if args.json:
        print(_dump({
            "n": r.n,
            "r": arranged.to_json(),
            "sets": [s.to_json() for s in family],
            "histogram": {str(k): v for k, v in family.histogram.items()},
        }), file=out)
    else:
        print(f"{len(family)} admissible index set(s) for r = ({', '.join(arranged.to_json())})", file=out)
        for s in family:
            print("  {" + ", ".join(map(str, s.indices)) + "}", file=out)
    return EXIT_OK


def _cmd_smooth(argv, out) -> int:
    args = _parser("smooth").parse_intermixed_args(argv)
    r = _lengths(args.lengths)
    witness = degenerate_partition(r)
    partition = None
    if witness is not None:
        partition = {
            "plus": [i + 1 for i, e in enumerate(witness) if e > 0],
            "minus": [i + 1 for i, e in enumerate(witness) if e < 0],
        }
    if args.json:
        print(_dump({"r": r.to_json(), "smooth": witness is None, "nonempty": is_nonempty(r),
                     "partition": partition}), file=out)
    elif witness is None:
        print("smooth", file=out)
    else:
        print(f"not smooth: sum over {partition['plus']} equals sum over {partition['minus']}", file=out)
    return EXIT_OK


def _cmd_chamber(argv, out) -> int:
    args = _parser("chamber").parse_intermixed_args(argv)
    r = _lengths(args.lengths)
    sig = chamber_signature(r)
    rows = [(sorted(s), sign) for s, sign in zip(sig.subsets(), sig.signs)]
    if args.json:
        print(_dump({"r": r.to_json(), "smooth": not sig.has_zero(),
                     "partitions": [{"subset": s, "sign": sign} for s, sign in rows]}), file=out)
    else:
        for s, sign in rows:
            print(f"{'+-0'[[1, -1, 0].index(sign)]} {{{', '.join(map(str, s))}}}", file=out)
    return EXIT_OK


def _cmd_polytope(argv, out) -> int:
    p = _parser("polytope")
    p.add_argument("--svg", default=None, metavar="PATH", help="write an SVG drawing")
    args = p.parse_intermixed_args(argv)
    r = _lengths(args.lengths)
    poly = moment_polygon(r)
    if poly is None:
        raise EmptyModuliError(f"{r!r}: empty moment polytope")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(emit(poly, "svg"))
    if args.json:
        doc = json.loads(emit(poly, "json"))
        doc["shape"] = classify_shape(poly)
        print(_dump(doc), file=out)
    else:
        shape = classify_shape(poly)
        print(f"{shape['edge_count']}-gon{' (degenerate)' if poly.degenerate else ''}", file=out)
        for x, y in poly.vertices:
            print(f"  ({format_rational(x)}, {format_rational(y)})", file=out)
    return EXIT_OK


def _start_polygon(r: LengthVector, args):
    rng = None if args.seed is None else np.random.default_rng(args.seed)
    return random_polygon(r, rng, closure_tol=args.tol)


def _cmd_bend(argv, out) -> int:
    orbit_mode = bool(argv) and argv[0] == "orbit"
    if orbit_mode:
        argv = argv[1:]
    p = _parser("bend orbit" if orbit_mode else "bend", sim=True)
    p.add_argument("--k", type=int, default=None, help="diagonal index (default n-3)")
    if orbit_mode:
        p.add_argument("--steps", type=int, default=64)
    else:
        p.add_argument("--theta", type=float, required=True)
    args = p.parse_intermixed_args(argv)
    r = _lengths(args.lengths)
    if r.n < 4:
        raise InputError("bending needs n >= 4")
    P = _start_polygon(r, args)
    k = args.k if args.k is not None else r.n - 3
    if orbit_mode:
        samples = orbit(P, k, args.steps)
        ell = diagonals(P)[k - 1][1]
        if args.json:
            out.write(trajectory_jsonl(samples))
        else:
            period = 2 * math.pi / ell if ell else math.inf
            print(f"bending along mu_{k}: l_{k} = {ell:.12g}, period {period:.12g}", file=out)
            for s, Q in enumerate(samples):
                ells = " ".join(f"{d:.12g}" for _, d in diagonals(Q))
                print(f"t={period * s / args.steps:.6f}  l=({ells})  closure={Q.closure_residual:.2e}",
                      file=out)
        return EXIT_OK
    Q = bend_action(P, k, args.theta)
    if args.json:
        print(_dump({"k": k, "theta": args.theta, "initial": P.to_json(), "bent": Q.to_json()}), file=out)
    else:
        for label, poly in (("initial", P), ("bent", Q)):
            try:
                aa = action_angle(poly)
                coords = f"l={np.round(aa.ell, 9).tolist()} theta={np.round(aa.theta, 9).tolist()}"
            except PolycobError:
                coords = "angles undefined"
            print(f"{label}: {coords}", file=out)
            for e in poly.edges:
                print("  " + " ".join(f"{c: .12f}" for c in e), file=out)
    return EXIT_OK


def _cmd_fixed_points(argv, out) -> int:
    p = _parser("fixed-points", pivot=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    args = p.parse_intermixed_args(argv)
    r = _lengths(args.lengths)
    witness = degenerate_partition(r)
    if witness is not None:
        raise WallError(f"{r!r} lies on a wall", witness)
    if not is_nonempty(r):
        raise EmptyModuliError(f"{r!r}: no closed polygon")
    pivot = _pivot(args) or default_pivot(r)
    arranged = arrange(r, pivot)
    n = r.n
    isolated = []
    for s in enumerate_admissible(arranged):
        P = build_type1(arranged, s, closure_tol=args.tol)
        isolated.append({"set": s.to_json(), "l": s.cardinality,
                         "sign": (-1) ** (n - s.cardinality), "polygon": P.to_json()})
    reduced = [v.to_json() for v in type2_submanifolds(r, pivot)]
    if args.json:
        print(_dump({"n": n, "pivot": pivot.to_json(), "r": arranged.to_json(),
                     "type_I": isolated, "type_II": reduced}), file=out)
    else:
        print(f"r arranged = ({', '.join(arranged.to_json())}), pivot {tuple(pivot.to_json())}", file=out)
        print(f"{len(isolated)} isolated fixed point(s):", file=out)
        for item in isolated:
            print(f"  I={{{', '.join(map(str, item['set']))}}}  l={item['l']}  sign={item['sign']:+d}", file=out)
        print(f"{len(reduced)} fixed submanifold(s) (no contribution):", file=out)
        for v in reduced:
            print(f"  M_({', '.join(v)})", file=out)
    return EXIT_OK


def _cmd_equilateral(argv, out) -> int:
    p = _parser("equilateral", lengths=False)
    p.add_argument("n", type=int)
    p.add_argument("--epsilon", default=None)
    args = p.parse_intermixed_args(argv)
    closed = equilateral_class(args.n)
    doc = {"n": args.n, "dimension": closed.dimension, "coefficient": closed.coefficient}
    if args.epsilon is not None:
        eps = parse_rational(args.epsilon)
        check = perturbed_equilateral_check(args.n, eps)
        doc["epsilon"] = format_rational(eps)
        doc["perturbed_coefficient"] = check.coefficient
        doc["agree"] = check.coefficient == closed.coefficient
    if args.json:
        print(_dump(doc), file=out)
    else:
        print(f"equilateral {args.n}-gons ~ {closed.coefficient} CP^{closed.dimension}", file=out)
        if "perturbed_coefficient" in doc:
            print(f"perturbed by {doc['epsilon']}: {doc['perturbed_coefficient']} CP^{closed.dimension}"
                  f" ({'agrees' if doc['agree'] else 'differs'})", file=out)
    return EXIT_OK


HANDLERS = {
    "class": _cmd_class,
    "admissible": _cmd_admissible,
    "smooth": _cmd_smooth,
    "chamber": _cmd_chamber,
    "polytope": _cmd_polytope,
    "bend": _cmd_bend,
    "fixed-points": _cmd_fixed_points,
    "equilateral": _cmd_equilateral,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    if not argv or argv[0] in ("-h", "--help"):
        print(__doc__.strip(), file=out)
        return EXIT_OK if argv else EXIT_INPUT
    if argv[0] == "--version":
        print(__version__, file=out)
        return EXIT_OK
    command, rest = argv[0], argv[1:]
    handler = HANDLERS.get(command)
    if handler is None:
        print(f"polycob: unknown command {command!r}; choose from {', '.join(COMMANDS)}", file=err)
        return EXIT_INPUT
    try:
        return handler(rest, out)
    except _UsageError as exc:
        print(exc, file=err)
        return EXIT_INPUT
    except WallError as exc:
        print(f"polycob: {exc}", file=err)
        return EXIT_WALL
    except EmptyModuliError as exc:
        print(f"polycob: {exc}", file=err)
        return EXIT_EMPTY
    except NoPivotError as exc:
        print(f"polycob: {exc}", file=err)
        return EXIT_EQUILATERAL
    except PolycobError as exc:
        print(f"polycob: {exc}", file=err)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
