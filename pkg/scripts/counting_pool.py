"""Counting and discharging certificates on small cubic graphs with at least two classes forced.

The qualifying instances all give one-class witnesses, so the counting
certificate is exercised here by restricting the search to at least two
classes with the components premise.
"""
from __future__ import annotations

import argparse
import collections
import itertools

import networkx as nx

from lineham.generators import from_networkx
from lineham.multigraph import complete_graph
from lineham.pipeline import certify_pair
from lineham.reduction import reduce_graph

POOL = {
    "K4": lambda: complete_graph(4),
    "prism": lambda: from_networkx(nx.circular_ladder_graph(3)),
    "K3,3": lambda: from_networkx(nx.complete_bipartite_graph(3, 3)),
    "cube": lambda: from_networkx(nx.hypercube_graph(3)),
    "petersen": lambda: from_networkx(nx.petersen_graph()),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("graphs", nargs="*", default=["K4", "prism", "K3,3", "cube"])
    args = ap.parse_args()
    for name in args.graphs:
        g = POOL[name]()
        red = reduce_graph(g)
        status = collections.Counter()
        conclusions = collections.Counter()
        rules = collections.Counter()
        failed = 0
        for e1, e2 in itertools.permutations(g.edge_ids, 2):
            cert = certify_pair(g, e1, e2, red, min_classes=2, require_solid=True)
            status[(cert.status, cert.n)] += 1
            if cert.counting:
                c = cert.counting
                failed += any(v is False for v in c["verdicts"].values()) or not all(c["identities"].values())
                conclusions[cert.discharging["conclusion"]["status"]] += 1
                rules.update(cert.discharging["rule_counts"])
        print(f"{name}: {dict(status)} failed={failed} discharging={dict(conclusions)} rules={dict(rules)}")


if __name__ == "__main__":
    main()
