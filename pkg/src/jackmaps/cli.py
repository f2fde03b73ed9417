"""Command line front end.

Exit codes: 0 success or all checks passed, 1 a check failed, 2 usage error,
3 refused because of the resource limit.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import __version__
from .algebra import GammaPoly, QuadExt, parse_rational
from .counterexample import counterexample
from .embeddings import (
    BipartiteGraph,
    brute_force_embeddings,
    count_embeddings,
    parse_multirect,
    symbolic_multirect,
)
from .jack import character, character_multirect, jack_powersum, lassalle_normalization, jack_character, theta
from .maps import enumerate_maps, map_count, parse_map
from .nonorientability import MEMO_CAP_ENV, WeightMemo, lacroix_history, lacroix_weight, mean_weight
from .partition import Partition
from .series import (
    DEFAULT_MAX_SIZE,
    EXTENDED_MAX_SIZE,
    ResourceLimitError,
    genseries_multirect,
    genseries_numeric,
    genseries_symbolic,
)
from .verify import SUITES, VerificationReport, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _partition(text):
    try:
        return Partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _ints(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _limit(args):
    return EXTENDED_MAX_SIZE if args.extended else DEFAULT_MAX_SIZE


def _estimate(pi, args, out):
    if args.extended and Partition(pi).size > DEFAULT_MAX_SIZE:
        print(f"estimated cost: {map_count(pi)} maps of face-type {Partition(pi)}", file=sys.stderr)


def _value_json(v, decimal=False):
    if isinstance(v, QuadExt):
        d = v.to_json()
        if decimal:
            d["decimal"] = v.to_float()
        return d
    if isinstance(v, GammaPoly):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v)
    return v


def _emit(args, payload: dict, text: str, rows=None, out=None):
    out = out or sys.stdout
    if args.json:
        json.dump(payload, out, indent=2, sort_keys=False)
        out.write("\n")
    elif args.csv and rows is not None:
        w = csv.writer(out, lineterminator="\n")
        for r in rows:
            w.writerow(r)
    else:
        out.write(text.rstrip("\n") + "\n")


def _emit_report(args, report: VerificationReport):
    rows = [["case", "status", "left", "right"]]
    for c in report.cases:
        rows.append([c.descriptor, "pass" if c.passed else "fail", c.to_json()["left"], c.to_json()["right"]])
    lines = [report.summary()]
    for c in report.cases:
        lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.descriptor}: {c.to_json()['left']} | {c.to_json()['right']}")
    _emit(args, report.to_json(timing=args.timing), "\n".join(lines), rows)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_weight(args):
    M, codec = parse_map(args.map)
    if args.lacroix:
        h, trace = lacroix_history(M)
        w = lacroix_weight(M)
        dec = codec.decode
        payload = {
            "map": args.map,
            "weight": "lacroix",
            "omega": w.to_json(),
            "history": [[dec(a), dec(b)] for a, b in h],
            "trace": [
                {"start": dec(t["start"]), "orbit": [dec(x) for x in t["orbit"]],
                 "removed": [[dec(a), dec(b)] for a, b in t["removed"]]} for t in trace
            ],
        }
    else:
        method = "naive" if args.naive else "recursive"
        w = mean_weight(M, memo=WeightMemo(args.memo), method=method)
        payload = {"map": args.map, "weight": "mean", "omega": w.to_json()}
    rows = [["degree", "coefficient"]] + [[k, str(c)] for k, c in enumerate(w.coeffs)]
    _emit(args, payload, str(w), rows)
    return EXIT_OK


def cmd_maps(args):
    if args.map:
        M, codec = parse_map(args.map)
        info = M.to_json(codec)
        text = "\n".join(f"{k}: {v}" for k, v in info.items() if k != "edge_classification")
        text += "\n" + "\n".join(f"  {e['edge']}: {e['kind']}" + (" bridge" if e["bridge"] else "")
                                 for e in info["edge_classification"])
        _emit(args, info, text, [["edge", "kind", "bridge"]] + [
            ["-".join(map(str, e["edge"])), e["kind"], e["bridge"]] for e in info["edge_classification"]])
        return EXIT_OK
    if args.pi is None:
        raise UsageError("maps needs --pi or --map")
    pi = args.pi
    total = map_count(pi)
    payload = {"pi": list(pi), "count": total}
    text = f"{total} maps of face-type {pi}"
    rows = [["pi", "count"], [str(pi), total]]
    if args.list:
        _estimate(pi, args, sys.stderr)
        if pi.size > _limit(args):
            raise ResourceLimitError(pi, _limit(args))
        listed = []
        for M in enumerate_maps(pi):
            listed.append({"map": repr(M)[4:-1], "chi": M.euler_characteristic, "d": M.d,
                           "black": M.n_black, "white": M.n_white})
        payload["maps"] = listed
        text += "\n" + "\n".join(f"{m['map']}  chi={m['chi']} d={m['d']}" for m in listed)
        rows = [["map", "chi", "d", "black", "white"]] + [[m["map"], m["chi"], m["d"], m["black"], m["white"]] for m in listed]
    _emit(args, payload, text, rows)
    return EXIT_OK


def cmd_embed(args):
    M, _ = parse_map(args.map)
    G = BipartiteGraph.from_map(M)
    if args.symbolic is not None:
        poly = symbolic_multirect(G, args.symbolic)
        payload = {"ell": args.symbolic, "variables": list(poly.variables), "terms": poly.to_json()}
        _emit(args, payload, str(poly), [list(poly.variables) + ["coefficient"]] + [
            list(e) + [str(c)] for e, c in poly.sorted_terms()])
        return EXIT_OK
    if args.multirect:
        P, Q = parse_multirect(args.multirect)
        lam = Partition.from_multirect(P, Q)
    elif args.lam is not None:
        lam = args.lam
    else:
        raise UsageError("embed needs --lambda, --multirect or --symbolic")
    n = count_embeddings(G, lam)
    payload = {"lambda": list(lam), "count": n}
    if args.brute_force:
        payload["brute_force"] = brute_force_embeddings(G, lam)
    _emit(args, payload, str(n) if not args.brute_force else f"{n} (brute force {payload['brute_force']})",
          [["lambda", "count"], [str(lam), n]])
    return EXIT_OK


def cmd_series(args):
    pi = args.pi
    if pi is None:
        raise UsageError("series needs --pi")
    _estimate(pi, args, sys.stderr)
    limit = _limit(args)
    kw = dict(weight=args.weight, memo=args.memo, jobs=args.jobs, limit=limit)
    if args.symbolic:
        if not args.multirect or not args.multirect.isdigit():
            raise UsageError("--symbolic needs --multirect ELL (number of rectangles)")
        sv = genseries_symbolic(pi, int(args.multirect), **kw)
        payload = sv.to_json()
        rows = [list(sv.poly.variables) + ["coefficient"]] + [list(e) + [str(c)] for e, c in sv.poly.sorted_terms()]
        _emit(args, payload, f"(-1)^|pi| * series = {sv.poly}\n[{sv.convention}]", rows)
        return EXIT_OK
    if args.alpha is None:
        raise UsageError("numeric series needs --alpha")
    if args.multirect:
        P, Q = parse_multirect(args.multirect)
        v = genseries_multirect(pi, P, Q, args.alpha, **kw)
        where = {"P": list(P), "Q": list(Q)}
    elif args.lam is not None:
        v = genseries_numeric(pi, args.lam, args.alpha, **kw)
        where = {"lambda": list(args.lam)}
    else:
        raise UsageError("series needs --lambda or --multirect")
    payload = {"pi": list(pi), **where, "alpha": str(args.alpha), "weight": args.weight,
               "value": _value_json(v, args.decimal)}
    text = str(v) + (f"  ~ {v.to_float():.12g}" if args.decimal else "")
    _emit(args, payload, text, [["value", "decimal"] if args.decimal else ["value"],
                                [str(v), v.to_float()] if args.decimal else [str(v)]])
    return EXIT_OK


def cmd_jack(args):
    if args.pi is not None:
        if args.alpha is None:
            raise UsageError("characters need --alpha")
        if args.multirect:
            if not args.multirect.isdigit():
                raise UsageError("--multirect for characters is the number of rectangles ELL")
            poly = character_multirect(args.pi, int(args.multirect), args.alpha)
            payload = {"pi": list(args.pi), "alpha": str(args.alpha), "variables": list(poly.variables),
                       "terms": poly.to_json()}
            _emit(args, payload, str(poly), [list(poly.variables) + ["coefficient"]] + [
                list(e) + [str(c)] for e, c in poly.sorted_terms()])
            return EXIT_OK
        if args.lam is None:
            raise UsageError("characters need --lambda or --multirect")
        ch = jack_character(args.pi, args.lam, args.alpha)
        payload = {"pi": list(args.pi), "lambda": list(args.lam), "alpha": str(args.alpha),
                   "character": _value_json(ch.value, args.decimal),
                   "normalized": str(lassalle_normalization(ch))}
        _emit(args, payload, str(ch.value) + (f"  ~ {ch.value.to_float():.12g}" if args.decimal else ""),
              [["character", "normalized"], [str(ch.value), payload["normalized"]]])
        return EXIT_OK
    if args.lam is None:
        raise UsageError("jack needs --lambda")
    if args.theta is not None:
        t = theta(args.theta, args.lam)
        _emit(args, {"rho": list(args.theta), "lambda": list(args.lam), "theta": t.to_json()},
              t.format("alpha"), [["degree", "coefficient"]] + [[k, str(c)] for k, c in enumerate(t.coeffs)])
        return EXIT_OK
    J = jack_powersum(args.lam)
    rows = [["rho", *[f"alpha^{k}" for k in range(args.lam.size)]]]
    for rho, c in J.coeffs.items():
        rows.append([str(rho)] + [str(c[k]) for k in range(args.lam.size)])
    _emit(args, {"lambda": list(args.lam), "powersum": J.to_json()}, str(J), rows)
    return EXIT_OK


def cmd_compare(args):
    pi = Partition() if args.pi is None else args.pi
    if args.lam is None or args.alpha is None:
        raise UsageError("compare needs --lambda and --alpha")
    _estimate(pi, args, sys.stderr)
    report = VerificationReport("compare", {"pi": str(pi), "lambda": str(args.lam), "alpha": args.alpha,
                                            "weight": args.weight})
    a = genseries_numeric(pi, args.lam, args.alpha, weight=args.weight, memo=args.memo,
                          jobs=args.jobs, limit=_limit(args))
    b = character(pi, args.lam, args.alpha)
    report.add(f"series vs Jack character pi={pi} lambda={args.lam} alpha={args.alpha}", a, b)
    if args.decimal:
        report.config["decimal"] = [a.to_float(), b.to_float()]
    return _emit_report(args, report)


def cmd_verify(args):
    if args.list or not args.suite:
        lines = [f"{k}: {v[1]}" for k, v in SUITES.items()]
        _emit(args, {"suites": {k: v[1] for k, v in SUITES.items()}}, "\n".join(lines),
              [["suite", "description"]] + [[k, v[1]] for k, v in SUITES.items()])
        return EXIT_OK
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; available: {', '.join(SUITES)}")
    return _emit_report(args, run_suite(args.suite))


def cmd_counterexample(args):
    print(f"estimated cost: {map_count((args.n,))} maps of face-type ({args.n}), "
          "visited up to rotations and reflections", file=sys.stderr)
    if not args.extended and args.n > DEFAULT_MAX_SIZE:
        print("refused: this run takes about an hour; pass --extended to start it", file=sys.stderr)
        return EXIT_RESOURCE
    Q = args.Q
    if len(Q) != 3:
        raise UsageError("--Q needs three integers")
    P = (1, 1, 1)
    progress = None
    if args.progress:
        progress = lambda a, b: print(f"shards {a}/{b}", file=sys.stderr, flush=True)
    res = counterexample(args.alpha, Q, P, n=args.n, jobs=args.jobs, memo=args.memo,
                         checkpoint=args.checkpoint, progress=progress)
    report = VerificationReport("counterexample", {"pi": f"({args.n})", "P": list(P), "Q": list(Q),
                                                   "alpha": args.alpha})
    report.add("series", res["series"], passed=True)
    report.add("Jack character", res["character"], passed=True)
    report.add("difference vs predicted", res["difference"], res["predicted"])
    report.seconds = res["seconds"]
    return _emit_report(args, report)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (result independent of it)")
    common.add_argument("--extended", action="store_true", help=f"raise the size limit to {EXTENDED_MAX_SIZE}")
    common.add_argument("--memo", choices=("canonical", "labeled", "off"), default="canonical")
    common.add_argument("--decimal", action="store_true", help="also show floating point values (display only)")
    common.add_argument("--timing", action="store_true", help="include timing in reports")

    p = argparse.ArgumentParser(
        prog="jackmaps",
        description=f"Non-orientability of bipartite maps and Jack characters.  Memo cap: ${MEMO_CAP_ENV}.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("weight", parents=[common], help="measure of non-orientability of a map")
    s.add_argument("map", help='map text such as "B:1-2,3-4|W:2-3,4-1|E:1-3,2-4"')
    s.add_argument("--naive", action="store_true", help="average over all histories")
    s.add_argument("--lacroix", action="store_true", help="single-history weight with its traversal trace")
    s.set_defaults(func=cmd_weight)

    s = sub.add_parser("maps", parents=[common], help="count, list or describe maps")
    s.add_argument("--pi", type=_partition)
    s.add_argument("--map")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_maps)

    s = sub.add_parser("embed", parents=[common], help="embeddings of the graph of a map")
    s.add_argument("map")
    s.add_argument("--lambda", dest="lam", type=_partition)
    s.add_argument("--multirect", help="P=..;Q=..")
    s.add_argument("--symbolic", type=int, metavar="ELL")
    s.add_argument("--brute-force", action="store_true")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("series", parents=[common], help="orientability generating series")
    s.add_argument("--pi", type=_partition)
    s.add_argument("--lambda", dest="lam", type=_partition)
    s.add_argument("--alpha", type=_rational)
    s.add_argument("--multirect", help="P=..;Q=.. for a value, or ELL with --symbolic")
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--weight", choices=("mean", "lacroix"), default="mean")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("jack", parents=[common], help="Jack polynomials, theta coefficients, characters")
    s.add_argument("--lambda", dest="lam", type=_partition)
    s.add_argument("--theta", type=_partition, metavar="RHO")
    s.add_argument("--pi", type=_partition)
    s.add_argument("--alpha", type=_rational)
    s.add_argument("--multirect", metavar="ELL")
    s.set_defaults(func=cmd_jack)

    s = sub.add_parser("compare", parents=[common], help="series against the Jack character")
    s.add_argument("--pi", type=_partition)
    s.add_argument("--lambda", dest="lam", type=_partition)
    s.add_argument("--alpha", type=_rational)
    s.add_argument("--weight", choices=("mean", "lacroix"), default="mean")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("suite", nargs="?")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("counterexample", parents=[common], help="face-type (9) at three rectangles (long)")
    s.add_argument("--alpha", type=_rational, default=Fraction(1))
    s.add_argument("--Q", type=_ints, default=(3, 2, 1))
    s.add_argument("--n", type=int, default=9, help=argparse.SUPPRESS)
    s.add_argument("--checkpoint", help="directory for per-shard results (resumable)")
    s.add_argument("--progress", action="store_true")
    s.set_defaults(func=cmd_counterexample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "alpha", None) is not None and args.alpha <= 0:
        print("error: alpha must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"refused: {exc}; use --extended for sizes up to {EXTENDED_MAX_SIZE}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
