"""Connectivity profile of the subdivided-K4 family (fig1b) for a range of q."""
from __future__ import annotations

import argparse
import time

from lineham.generators import gen_fig1b
from lineham.multigraph import essential_connectivity, line_graph, r_essential_edge_connectivity, vertex_connectivity
from lineham.trails import HAM_MAX_VERTICES, ham_path_exists


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[1, 3])
    args = ap.parse_args()
    for q in args.q:
        t0 = time.time()
        g = gen_fig1b(q)
        lg = line_graph(g)
        ham = ham_path_exists(lg) if lg.num_vertices() <= HAM_MAX_VERTICES else "n/a"
        print(f"q={q}: |V|={g.num_vertices()} |E|={g.num_edges()} kappa(L)={vertex_connectivity(lg)} "
              f"2-ess edge={r_essential_edge_connectivity(g, 2)} ess(L)={essential_connectivity(lg)} "
              f"ham_path(L)={ham} {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
