"""Command-line front end: ``lineham <command> ...``.

Exit codes: 0 when every verdict passes, 1 on a failed verdict, 2 on usage,
format or bound errors (with a JSON error object on stdout).
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
import time

from . import trails
from .generators import (
    Fig1bParams,
    connectivity_profile,
    find_qualifying_instances,
    gen_fig1b,
    verify_qualifying_vertex_side,
)
from .io import (
    FormatError,
    SCHEMA_VERSION,
    canonical_json,
    graph_hash,
    load_graph,
    parse_hypergraph,
)
from .multigraph import GraphError, essential_connectivity, line_graph, vertex_connectivity
from .quasigraph import DeskScaleError, NoWitness, SearchBudgetExceeded, skeletal_search
from .reduction import ReductionError, build_he, reduce_graph, reduction_trace
from .trails import RegimeExceeded

log = logging.getLogger("lineham")


class UsageError(Exception):
    pass


def _emit(obj, args) -> None:
    text = json.dumps(json.loads(canonical_json(obj)), indent=2, sort_keys=True)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _graph(args):
    if not args.input:
        raise UsageError("an input graph file is required")
    return load_graph(args.input, args.format)


def _apply_bounds(args) -> None:
    for item in args.bound or []:
        key, _, val = item.partition("=")
        table = {"trail_edges": "TRAIL_MAX_EDGES", "ham_vertices": "HAM_MAX_VERTICES",
                 "partition_vertices": "NW_MAX_VERTICES"}
        if key not in table or not val.isdigit():
            raise UsageError(f"bad --bound {item!r}; expected one of {sorted(table)}=N")
        setattr(trails, table[key], int(val))


def cmd_profile(args) -> int:
    g = _graph(args)
    prof = connectivity_profile(g)
    prof["line_graph_essential_connectivity"] = essential_connectivity(line_graph(g))
    _emit({"command": "profile", "graph_hash": graph_hash(g), "profile": prof}, args)
    return 0


def cmd_reduce(args) -> int:
    g = _graph(args)
    red = reduce_graph(g, seed=args.seed)
    anchored = build_he(g, red.core, red, args.e1, args.e2) if args.e1 is not None else None
    _emit({"command": "reduce", "trace": reduction_trace(red, anchored)}, args)
    return 0


def cmd_skeletal(args) -> int:
    if args.hypergraph:
        with open(args.hypergraph) as fh:
            h = parse_hypergraph(fh.read())
    else:
        g = _graph(args)
        red = reduce_graph(g, seed=args.seed)
        h = build_he(g, red.core, red, args.e1, args.e2).he if args.e1 is not None else red.h0
    wit = skeletal_search(h, args.depth, min_classes=args.min_classes)
    _emit({"command": "skeletal", "witness": wit.to_json()}, args)
    return 0


def cmd_certify(args) -> int:
    from .pipeline import certify_instance

    g = _graph(args)
    pairs = [(args.e1, args.e2)] if args.e1 is not None else None
    rep = certify_instance(args.input, g, seed=args.seed, pairs=pairs,
                           min_classes=args.min_classes, require_solid=args.min_classes > 1)
    body = rep.to_json()
    ok = all(v is True or v == "skipped" or (isinstance(v, list) and all(v))
             for v in rep.checks.values())
    for p in body["pairs"]:
        c = p.get("counting")
        if c and not (all(x for x in c["verdicts"].values() if x is not None) and all(c["identities"].values())):
            ok = False
    body["all_pass"] = ok
    _emit(body, args)
    return 0 if ok else 1


def cmd_trail(args) -> int:
    g = _graph(args)
    res = trails.endgame(g, args.e1, args.e2, seed=args.seed)
    _emit({"command": "trail", "route": res.route, "trail": res.trail.to_json(),
           "transcript": res.transcript}, args)
    return 0 if res.transcript.get("verified") else 1


def cmd_hamcheck(args) -> int:
    g = _graph(args)
    lg = line_graph(g)
    out = {"command": "hamcheck", "graph_hash": graph_hash(g), "line_graph_vertices": lg.num_vertices(),
           "ham_path": trails.ham_path_exists(lg)}
    if g.num_edges() >= 3:
        agree, lhs, rhs = trails.crosscheck_preimage(g, best_effort=True)
        out.update({"ham_connected": lhs, "all_pairs_dominating_trail": rhs, "agree": agree})
    else:
        agree = True
    _emit(out, args)
    return 0 if agree else 1


def cmd_counterexample(args) -> int:
    if args.family != "fig1b":
        raise UsageError(f"unknown family {args.family!r}")
    g = gen_fig1b(Fig1bParams(args.q))
    lg = line_graph(g)
    out = {
        "command": "counterexample", "family": "fig1b", "q": args.q,
        "vertices": g.num_vertices(), "edges": g.num_edges(),
        "line_graph_connectivity": vertex_connectivity(lg),
        "two_essential_edge_connectivity": connectivity_profile(g)["two_essential_edge_connectivity"],
    }
    out["line_graph_essential_connectivity"] = essential_connectivity(lg)
    if lg.num_vertices() <= trails.HAM_MAX_VERTICES:
        out["line_graph_ham_path"] = trails.ham_path_exists(lg)
    else:
        out["line_graph_ham_path"] = "beyond exact regime"
    _emit(out, args)
    return 0


def cmd_sweep(args) -> int:
    results = []
    ok = True
    for name, g in find_qualifying_instances(args.budget):
        t0 = time.time()
        red = reduce_graph(g, seed=args.seed)
        fails = 0
        routes: dict = {}
        for e1, e2 in itertools.permutations(g.edge_ids, 2):
            try:
                r = trails.endgame(g, e1, e2, red=red)
                routes[r.route] = routes.get(r.route, 0) + 1
            except Exception as exc:  # reported, counted as failure
                log.error("pair (%s, %s) of %s failed: %s", e1, e2, name, exc)
                fails += 1
        lg = line_graph(g)
        ham = trails.ham_connected(lg) if lg.num_vertices() <= trails.HAM_MAX_VERTICES else None
        entry = {"name": name, "graph_hash": graph_hash(g), "edges": g.num_edges(),
                 "vertex_side_verified": verify_qualifying_vertex_side(g),
                 "routes": routes, "failures": fails, "ham_connected": ham,
                 "seconds": round(time.time() - t0, 2)}
        ok = ok and fails == 0 and ham is not False and entry["vertex_side_verified"]
        results.append(entry)
    _emit({"command": "sweep", "schema_version": SCHEMA_VERSION, "instances": results, "all_pass": ok}, args)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lineham", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_graph=True):
        if needs_graph:
            sp.add_argument("input", nargs="?", help="graph file")
            sp.add_argument("--format", choices=["graph6", "edgelist"], default="edgelist")
        sp.add_argument("--json", metavar="OUT", help="also write the report to this file")
        sp.add_argument("--seed", type=int, default=None, help="permute the W-selection order")
        sp.add_argument("--bound", action="append", metavar="KEY=N",
                        help="override a desk-scale cap (trail_edges, ham_vertices, partition_vertices)")

    sp = sub.add_parser("profile", help="connectivity profile of G and L(G)")
    common(sp)
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("reduce", help="core, H0 and optionally He for a pair of edges")
    common(sp)
    sp.add_argument("--e1", type=int)
    sp.add_argument("--e2", type=int)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("skeletal", help="skeletal witness search")
    common(sp)
    sp.add_argument("--hypergraph", help="hypergraph text file instead of a graph")
    sp.add_argument("--e1", type=int)
    sp.add_argument("--e2", type=int)
    sp.add_argument("--depth", type=int, default=1, help="maximum number of switches")
    sp.add_argument("--min-classes", type=int, default=1)
    sp.set_defaults(func=cmd_skeletal)

    sp = sub.add_parser("certify", help="counting and discharging certificates")
    common(sp)
    sp.add_argument("--e1", type=int)
    sp.add_argument("--e2", type=int)
    sp.add_argument("--min-classes", type=int, default=1)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("trail", help="internally dominating (e1,e2)-trail via the reduction")
    common(sp)
    sp.add_argument("--e1", type=int, required=True)
    sp.add_argument("--e2", type=int, required=True)
    sp.set_defaults(func=cmd_trail)

    sp = sub.add_parser("hamcheck", help="Hamilton-connectivity of L(G) both ways")
    common(sp)
    sp.set_defaults(func=cmd_hamcheck)

    sp = sub.add_parser("counterexample", help="build and profile a known family")
    common(sp, needs_graph=False)
    sp.add_argument("family", choices=["fig1b"])
    sp.add_argument("--q", type=int, default=3)
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("sweep", help="endgame over qualifying instances")
    common(sp, needs_graph=False)
    sp.add_argument("--budget", type=int, default=None, help="maximum number of instances")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _apply_bounds(args)
        return args.func(args)
    except (UsageError, FormatError, GraphError, ReductionError, RegimeExceeded, DeskScaleError,
            SearchBudgetExceeded, NoWitness, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
