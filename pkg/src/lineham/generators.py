"""Instance generators: the subdivided-K4 and pendant families, qualifying graphs, exhaustive enumeration."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

import networkx as nx
import numpy as np

from .multigraph import (
    GraphError,
    Multigraph,
    complete_graph,
    essential_connectivity,
    is_k_connected,
    line_graph,
    r_essential_edge_connectivity,
    vertex_connectivity,
)


@dataclass(frozen=True)
class Fig1bParams:
    q: int = 3

    def __post_init__(self):
        if self.q < 1 or self.q % 2 == 0:
            raise GraphError("q must be an odd positive integer")


def gen_fig1b(p: Fig1bParams | int) -> Multigraph:
    """K4 with every edge replaced by q internally disjoint paths of length 3."""
    if isinstance(p, int):
        p = Fig1bParams(p)
    pairs = []
    nxt = 4
    for i, j in itertools.combinations(range(4), 2):
        for _ in range(p.q):
            a, b = nxt, nxt + 1
            nxt += 2
            pairs += [(i, a), (a, b), (b, j)]
    return Multigraph.from_pairs(pairs, range(nxt))


def gen_pendant(base: Multigraph) -> Multigraph:
    """Attach one new leaf to every vertex of ``base``."""
    top = max(base.vertices, default=-1) + 1
    etop = max(base.edge_ids, default=-1) + 1
    edges = dict(base.edges)
    verts = list(base.vertices)
    for i, v in enumerate(base.vertices):
        edges[etop + i] = (v, top + i)
        verts.append(top + i)
    return Multigraph(verts, edges)


def multiply(g: Multigraph, mu: int) -> Multigraph:
    """Replace every edge by ``mu`` parallel copies."""
    return Multigraph.from_pairs([uv for uv in g.edges.values() for _ in range(mu)], g.vertices)


def from_networkx(nxg) -> Multigraph:
    idx = {v: i for i, v in enumerate(nxg.nodes())}
    return Multigraph.from_pairs([(idx[u], idx[v]) for u, v in nxg.edges()], range(len(idx)))


def subdivide(g: Multigraph, e: int) -> Multigraph:
    u, v = g.ends(e)
    z = max(g.vertices) + 1
    edges = {f: uv for f, uv in g.edges.items() if f != e}
    top = max(g.edge_ids) + 1
    edges[e] = (u, z)
    edges[top] = (z, v)
    return Multigraph(list(g.vertices) + [z], edges)


def attach_cubic_vertex(g: Multigraph, nbrs) -> Multigraph:
    """New vertex joined once to each vertex of ``nbrs``."""
    z = max(g.vertices) + 1
    top = max(g.edge_ids) + 1
    edges = dict(g.edges)
    for i, v in enumerate(nbrs):
        edges[top + i] = (v, z)
    return Multigraph(list(g.vertices) + [z], edges)


# ---------------------------------------------------------------------------
# profiles and qualifying instances

def connectivity_profile(g: Multigraph) -> dict:
    """Edge-side profile of G together with vertex connectivity of L(G)."""
    lg = line_graph(g)
    return {
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "edge_connectivity": r_essential_edge_connectivity(g, 0),
        "essential_edge_connectivity": r_essential_edge_connectivity(g, 1),
        "two_essential_edge_connectivity": r_essential_edge_connectivity(g, 2),
        "line_graph_connectivity": vertex_connectivity(lg),
    }


def is_qualifying(g: Multigraph, k: int = 9) -> bool:
    """L(G) 3-connected and essentially k-connected (edge-side test)."""
    if g.num_edges() <= k:
        return False
    if r_essential_edge_connectivity(g, 2) < k:
        return False
    return is_k_connected(line_graph(g), 3)


def verify_qualifying_vertex_side(g: Multigraph, k: int = 9) -> bool:
    lg = line_graph(g)
    return is_k_connected(lg, 3) and lg.num_vertices() > k and essential_connectivity(lg) >= k


def candidate_pool(max_edges: int = 30) -> Iterator[tuple[str, Multigraph]]:
    """Dense multigraphs, multiplied small graphs and multiedge-reinforced cubic graphs."""
    k5x2 = multiply(complete_graph(5), 2)
    items: list[tuple[str, Multigraph]] = [
        ("K5x2", k5x2),
        ("K6x2", multiply(complete_graph(6), 2)),
        ("K3,3x3", multiply(from_networkx(nx.complete_bipartite_graph(3, 3)), 3)),
        ("octahedron x2", multiply(from_networkx(nx.octahedral_graph()), 2)),
        ("prism x3", multiply(from_networkx(nx.circular_ladder_graph(3)), 3)),
        ("K2,2,2,1 x2", multiply(from_networkx(nx.complete_multipartite_graph(2, 2, 2, 1)), 2)),
        ("K5x2 subdivided", subdivide(k5x2, 0)),
        ("K5x2 + pendant", gen_pendant(k5x2).remove_vertices(range(6, 10))),
    ]
    for mu in (3, 4, 5):
        items.append((f"K4x{mu}", multiply(complete_graph(4), mu)))
    for mu in (4, 5, 6):
        items.append((f"K3x{mu}", multiply(complete_graph(3), mu)))
    for mu in (10, 12):
        items.append((f"K2x{mu}", multiply(complete_graph(2), mu)))
    g = k5x2
    for i, nb in enumerate([(0, 1, 2), (2, 3, 4), (0, 3, 4)]):
        g = attach_cubic_vertex(g, nb)
        items.append((f"K5x2 + {i + 1} cubic", g))
    for name, g in items:
        if g.num_edges() <= max_edges:
            yield name, g


def find_qualifying_instances(budget: int | None = None, max_edges: int = 30, k: int = 9):
    found = 0
    for name, g in candidate_pool(max_edges):
        if budget is not None and found >= budget:
            return
        if is_qualifying(g, k):
            found += 1
            yield name, g


# ---------------------------------------------------------------------------
# enumeration

def _nx_weighted(g: Multigraph):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for u, v in g.edges.values():
        if h.has_edge(u, v):
            h[u][v]["m"] += 1
        else:
            h.add_edge(u, v, m=1)
    return h


def _cheap_invariant(g: Multigraph) -> tuple:
    mults = sorted(g.multiplicity(u, v) for u, v in set(g.edges.values()))
    return (g.num_vertices(), tuple(sorted(g.degree(v) for v in g.vertices)), tuple(mults))


class _IsoSet:
    """Isomorphism-class store keyed by invariants, confirmed by networkx."""

    def __init__(self):
        self.buckets: dict = {}

    def add(self, g: Multigraph) -> bool:
        h = _nx_weighted(g)
        key = (_cheap_invariant(g), nx.weisfeiler_lehman_graph_hash(h, edge_attr="m", iterations=3))
        bucket = self.buckets.setdefault(key, [])
        em = nx.algorithms.isomorphism.numerical_edge_match("m", 0)
        for other in bucket:
            if nx.is_isomorphic(h, other, edge_match=em):
                return False
        bucket.append(h)
        return True


def multigraphs_by_edges(max_edges: int, max_multiplicity: int | None = None,
                         min_edges: int = 1) -> Iterator[Multigraph]:
    """All loopless multigraphs without isolated vertices with at most
    ``max_edges`` edges, one per isomorphism class, by increasing edge count."""
    cap = max_multiplicity or max_edges
    level = [Multigraph()]
    for m in range(1, max_edges + 1):
        store = _IsoSet()
        nxt = []
        for g in level:
            n = g.num_vertices()
            cands = [(u, v) for u, v in itertools.combinations(range(n), 2) if g.multiplicity(u, v) < cap]
            cands += [(u, n) for u in range(n)] + [(n, n + 1)]
            for u, v in cands:
                child = Multigraph.from_pairs(list(g.edges.values()) + [(u, v)])
                if store.add(child):
                    nxt.append(child)
        level = nxt
        if m >= min_edges:
            yield from level


def _perm_tables(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    table = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for r, pm in enumerate(perms):
        for i, (u, v) in enumerate(pairs):
            a, b = pm[u], pm[v]
            table[r, index[(min(a, b), max(a, b))]] = i
    return pairs, table


def enumerate_multigraphs(max_vertices: int, max_multiplicity: int,
                          max_edges: int | None = None) -> Iterator[Multigraph]:
    """Every multigraph on 1..max_vertices vertices (isolated vertices allowed)
    with pair multiplicities at most ``max_multiplicity``, one per isomorphism
    class.  Canonical form: the minimum multiplicity code over all vertex
    permutations."""
    base = max_multiplicity + 1
    for n in range(1, max_vertices + 1):
        pairs, table = _perm_tables(n)
        p = len(pairs)
        limit = p * max_multiplicity if max_edges is None else min(max_edges, p * max_multiplicity)
        weights = base ** np.arange(p, dtype=np.int64)
        level = np.zeros((1, p), dtype=np.int64)
        yield Multigraph(range(n))
        for _ in range(limit):
            if p == 0:
                break
            kids = np.repeat(level, p, axis=0)
            kids[np.arange(len(kids)), np.tile(np.arange(p), len(level))] += 1
            kids = kids[(kids <= max_multiplicity).all(axis=1)]
            if len(kids) == 0:
                break
            keys = np.full(len(kids), np.iinfo(np.int64).max, dtype=np.int64)
            for r in range(len(table)):
                # vector permuted by table[r]: position table[r, i] receives entry i
                codes = kids @ weights[table[r]]
                np.minimum(keys, codes, out=keys)
            _, first = np.unique(keys, return_index=True)
            level = kids[np.sort(first)]
            for vec in level:
                yield Multigraph.from_pairs(
                    [pairs[i] for i in range(p) for _ in range(int(vec[i]))], range(n))


# ---------------------------------------------------------------------------
# random hypergraphs and acyclic quasigraphs (synthetic discharging inputs)

def random_hypergraph(n: int, m: int, rng: random.Random, p3: float = 0.5):
    """``m`` random hyperedges of size 2 or 3 on ``n`` vertices (n >= 3)."""
    from .hypergraph import Hypergraph3

    edges = {}
    for i in range(m):
        size = 3 if rng.random() < p3 else 2
        edges[i] = rng.sample(range(n), size)
    return Hypergraph3(range(n), edges)


def random_acyclic_quasigraph(h, rng: random.Random, p_use: float = 0.8):
    """Greedy random quasigraph whose image stays a forest."""
    from .quasigraph import Quasigraph

    parent = {v: v for v in h.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = {}
    order = list(h.hyperedges)
    rng.shuffle(order)
    for hid in order:
        if rng.random() > p_use:
            continue
        pairs = [tuple(p) for p in itertools.combinations(sorted(h.hyperedges[hid]), 2)]
        rng.shuffle(pairs)
        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                chosen[hid] = frozenset((u, v))
                break
    return Quasigraph(h, chosen)
