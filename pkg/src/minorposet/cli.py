"""Command line front end.

Exit codes: 0 success, 1 a checked property is false, 2 error (JSON on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import MinorPosetError, ParseError
from .ingest import emit_dot, load
from .lattice import adjoin_max, cartesian_product, pyr
from .maps import canonical_strong_map, validate_strong_map
from .minorposet import build, qpoly_str, rank_gen
from .minors import enumerate_minors, minor_count
from .poset import cd_index, diamond, poset_isomorphic, prism
from .poset import pyr as poset_pyr
from .properties import (
    find_forbidden_minor,
    has_no_parallels,
    is_geometric,
    lifts_join_irreducibles,
    minor_poset_is_lattice,
)
from .zipping import zipping_sequence


def _read(path):
    if path == "-":
        return load(sys.stdin.read())
    return load(path)


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def cmd_show(args, out):
    L = _read(args.input)
    irr, minimal = L.irreducibles()
    _dump(
        {
            "elements": len(L),
            "generators": L.n,
            "irreducibles": [list(L.closed_set(x)) for x in irr],
            "minimally_generated": minimal,
            "no_parallels": has_no_parallels(L).verdict,
            "lifts_join_irreducibles": lifts_join_irreducibles(L).verdict,
            "geometric": is_geometric(L).verdict,
            "minors": minor_count(L),
        },
        out,
    )
    return 0


def cmd_minors(args, out):
    L = _read(args.input)
    res = {"count": minor_count(L)}
    if args.list:
        res["minors"] = [M.to_json() for M in enumerate_minors(L, args.budget)]
    _dump(res, out)
    return 0


def cmd_poset(args, out):
    P = build(_read(args.input), args.budget)
    _dump(P.to_json(), out)
    return 0


def cmd_rankgen(args, out):
    L = _read(args.input)
    if args.method != "all":
        out.write(qpoly_str(rank_gen(L, args.method)) + "\n")
        return 0
    res = {}
    for m in ("direct", "geometric", "no-parallels"):
        try:
            res[m] = qpoly_str(rank_gen(L, m))
        except MinorPosetError as exc:
            res[m] = {"inapplicable": str(exc)}
    values = {v for v in res.values() if isinstance(v, str)}
    res["agree"] = len(values) == 1
    _dump(res, out)
    return 0 if res["agree"] else 1


def cmd_cdindex(args, out):
    out.write(str(cd_index(build(_read(args.input), args.budget))) + "\n")
    return 0


CHECKS = {
    "no-parallels": lambda L, b: has_no_parallels(L),
    "jilp": lambda L, b: lifts_join_irreducibles(L),
    "geometric": lambda L, b: is_geometric(L),
    "lattice": lambda L, b: minor_poset_is_lattice(L, b),
    "forbidden": lambda L, b: find_forbidden_minor(L, budget=b),
}


def cmd_check(args, out):
    L = _read(args.input)
    names = [n for n in CHECKS if n != "forbidden"] if args.property == "all" else [args.property]
    reports = {n: CHECKS[n](L, args.budget).to_json() for n in names}
    _dump(reports, out)
    return 0 if all(r["verdict"] for r in reports.values()) else 1


def _load_map(path, source):
    with open(path) as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid map file: {exc}") from None
    target = load(spec["target"])
    images = [None] * len(source)
    for src, dst in spec["images"]:
        try:
            x = source.element_of(sum(1 << (i - 1) for i in src))
            y = target.element_of(sum(1 << (i - 1) for i in dst))
        except KeyError:
            raise ParseError(f"map entry {[src, dst]} does not name elements") from None
        if source.masks[x] != sum(1 << (i - 1) for i in src):
            raise ParseError(f"{src} is not a closed set of the source")
        images[x] = y
    if None in images:
        raise ParseError("the map must give an image for every source element")
    return validate_strong_map(source, target, images)


def cmd_zip_trace(args, out):
    L = _read(args.input)
    f = _load_map(args.map, L) if args.map else canonical_strong_map(L)
    seq = zipping_sequence(f, args.budget, keep_posets=False)
    _dump(seq.to_json(), out)
    return 0


def cmd_product(args, out):
    L = _read(args.input)
    res = {}
    if args.other:
        K = _read(args.other)
        lhs = build(cartesian_product(L, K), args.budget)
        rhs = diamond(build(L, args.budget), build(K, args.budget))
        res["cartesian"] = {"size": len(lhs), "isomorphic": poset_isomorphic(lhs, rhs)}
    M = build(L, args.budget)
    lhs = build(adjoin_max(L), args.budget)
    res["adjoin_max"] = {"size": len(lhs), "isomorphic": poset_isomorphic(lhs, poset_pyr(M))}
    lhs = build(pyr(L), args.budget)
    res["pyr"] = {"size": len(lhs), "isomorphic": poset_isomorphic(lhs, prism(M))}
    _dump(res, out)
    return 0 if all(v["isomorphic"] for v in res.values()) else 1


def cmd_dot(args, out):
    out.write(emit_dot(_read(args.input), args.mode))
    return 0


def make_parser():
    p = argparse.ArgumentParser(prog="minorposet", description="Minor posets of generator enriched lattices.")
    p.add_argument("--budget", type=int, default=10**6, help="maximum number of minors to enumerate")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("input", help="lattice spec (JSON file, or - for stdin)")
        s.set_defaults(fn=fn)
        return s

    verb("show", cmd_show, "summary of a lattice")
    s = verb("minors", cmd_minors, "count (and list) minors")
    s.add_argument("--list", action="store_true")
    verb("poset", cmd_poset, "the minor poset as JSON")
    s = verb("rankgen", cmd_rankgen, "rank generating function of the minor poset")
    s.add_argument("--method", choices=["direct", "geometric", "no-parallels", "all"], default="direct")
    verb("cdindex", cmd_cdindex, "cd-index of the minor poset")
    s = verb("check", cmd_check, "structural properties")
    s.add_argument("--property", choices=["all", "no-parallels", "jilp", "geometric", "lattice", "forbidden"],
                   default="all")
    s = verb("zip-trace", cmd_zip_trace, "zipping sequence of a strong surjection")
    s.add_argument("--map", help="JSON map file; default is the canonical map from the Boolean lattice")
    s = verb("product", cmd_product, "verify the product laws for minor posets")
    s.add_argument("other", nargs="?", help="second lattice for the Cartesian product")
    s = verb("dot", cmd_dot, "Graphviz output")
    s.add_argument("--mode", choices=["diagram", "hasse"], default="diagram")
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except MinorPosetError as exc:
        err.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        return 2
    except OSError as exc:
        err.write(json.dumps({"error": "IOError", "message": str(exc)}, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
