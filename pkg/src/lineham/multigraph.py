"""Loopless multigraphs, line graphs, cuts and the connectivity notions built on them."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from ._flow import FlowNetwork

INFINITY = math.inf

#: subset-enumeration oracles refuse graphs above these orders
EDGE_ORACLE_MAX_VERTICES = 22
VERTEX_ORACLE_MAX_VERTICES = 18


class GraphError(ValueError):
    pass


class Multigraph:
    """Loopless multigraph with stable integer vertex and edge ids.

    Edges are stored as ``id -> (u, v)`` with ``u < v``.  Instances are treated
    as immutable; every operation returns a new graph.
    """

    __slots__ = ("_vertices", "_edges", "_adj", "labels")

    def __init__(self, vertices: Iterable[int] = (), edges: Mapping[int, tuple[int, int]] | Iterable = (),
                 labels: Mapping[int, str] | None = None):
        items = edges.items() if isinstance(edges, Mapping) else ((e[0], (e[1], e[2])) for e in edges)
        norm: dict[int, tuple[int, int]] = {}
        vs = set(vertices)
        for eid, (u, v) in items:
            if u == v:
                raise GraphError(f"edge {eid} is a loop at {u}")
            if eid in norm:
                raise GraphError(f"duplicate edge id {eid}")
            norm[eid] = (u, v) if u < v else (v, u)
            vs.add(u)
            vs.add(v)
        self._vertices = tuple(sorted(vs))
        self._edges = dict(sorted(norm.items()))
        adj: dict[int, list[int]] = {v: [] for v in self._vertices}
        for eid, (u, v) in self._edges.items():
            adj[u].append(eid)
            adj[v].append(eid)
        self._adj = {v: tuple(es) for v, es in adj.items()}
        self.labels = dict(labels) if labels else None

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Multigraph":
        """Build a graph numbering the edges ``0, 1, ...`` in the given order."""
        return cls(vertices, {i: tuple(p) for i, p in enumerate(pairs)})

    # -- basic access -----------------------------------------------------
    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> dict[int, tuple[int, int]]:
        return self._edges

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self._edges)

    def ends(self, e: int) -> tuple[int, int]:
        return self._edges[e]

    def other(self, e: int, v: int) -> int:
        a, b = self._edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an end of edge {e}")

    def incident(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> set[int]:
        return {self.other(e, v) for e in self._adj[v]}

    def multiplicity(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        return sum(1 for e in self._adj.get(u, ()) if self._edges[e] == key)

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def is_simple(self) -> bool:
        return len(set(self._edges.values())) == len(self._edges)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __eq__(self, other) -> bool:
        return (isinstance(other, Multigraph) and self._vertices == other._vertices
                and self._edges == other._edges)

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={len(self._vertices)}, m={len(self._edges)})"

    # -- derived graphs ---------------------------------------------------
    def remove_vertices(self, xs: Iterable[int]) -> "Multigraph":
        xs = set(xs)
        return Multigraph([v for v in self._vertices if v not in xs],
                          {e: uv for e, uv in self._edges.items() if uv[0] not in xs and uv[1] not in xs})

    def remove_edges(self, es: Iterable[int]) -> "Multigraph":
        es = set(es)
        return Multigraph(self._vertices, {e: uv for e, uv in self._edges.items() if e not in es})

    def induced(self, xs: Iterable[int]) -> "Multigraph":
        xs = set(xs)
        return self.remove_vertices(set(self._vertices) - xs)

    def components(self) -> list[set[int]]:
        """Connected components, ordered by smallest vertex."""
        seen: set[int] = set()
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                u = stack.pop()
                for e in self._adj[u]:
                    w = self.other(e, u)
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, mapping: Mapping[int, int]) -> "Multigraph":
        return Multigraph([mapping[v] for v in self._vertices],
                          {e: (mapping[u], mapping[v]) for e, (u, v) in self._edges.items()})

    def to_networkx(self):
        import networkx as nx

        g = nx.MultiGraph()
        g.add_nodes_from(self._vertices)
        for e, (u, v) in self._edges.items():
            g.add_edge(u, v, key=e)
        return g


class SimpleGraph(Multigraph):
    """Multigraph without parallel edges."""

    __slots__ = ()

    def __init__(self, vertices=(), edges=(), labels=None):
        super().__init__(vertices, edges, labels)
        if not self.is_simple():
            raise GraphError("parallel edges in a simple graph")

    @classmethod
    def from_pairs(cls, pairs, vertices=()):
        return cls(vertices, {i: tuple(p) for i, p in enumerate(pairs)})

    def adjacent(self, u: int, v: int) -> bool:
        return self.multiplicity(u, v) > 0


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_pairs(itertools.combinations(range(n), 2), range(n))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_pairs([(i, (i + 1) % n) for i in range(n)], range(n))


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_pairs([(i, i + 1) for i in range(n - 1)], range(n))


def star_graph(leaves: int) -> SimpleGraph:
    return SimpleGraph.from_pairs([(0, i) for i in range(1, leaves + 1)])


# ---------------------------------------------------------------------------
# line graph and cuts

def line_graph(g: Multigraph) -> SimpleGraph:
    """Simple line graph; its vertex ids are the edge ids of ``g``."""
    if g.num_edges() == 0:
        raise GraphError("no edges")
    pairs = set()
    for v in g.vertices:
        for e, f in itertools.combinations(g.incident(v), 2):
            pairs.add((e, f) if e < f else (f, e))
    return SimpleGraph(g.edge_ids, {i: p for i, p in enumerate(sorted(pairs))})


@dataclass(frozen=True)
class EdgeCut:
    side: frozenset
    edges: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)


def boundary(g: Multigraph, x: Iterable[int]) -> EdgeCut:
    x = frozenset(x)
    if not x <= set(g.vertices):
        raise GraphError(f"not a vertex subset: {sorted(x - set(g.vertices))}")
    cut = tuple(e for e, (u, v) in g.edges.items() if (u in x) != (v in x))
    return EdgeCut(x, cut)


def _edge_components_after_cut(g: Multigraph, cut: Iterable[int]) -> list[int]:
    """Edge counts of the components of ``g - cut``."""
    h = g.remove_edges(cut)
    counts = []
    for comp in h.components():
        counts.append(sum(1 for e, (u, v) in h.edges.items() if u in comp))
    return counts


def is_r_essential_cut(g: Multigraph, cut: Iterable[int], r: int) -> bool:
    return sum(1 for c in _edge_components_after_cut(g, cut) if c >= r) >= 2


def _cut_network(g: Multigraph):
    index = {v: i for i, v in enumerate(g.vertices)}
    net = FlowNetwork(len(index))
    mult: dict[tuple[int, int], int] = {}
    for u, v in g.edges.values():
        mult[(u, v)] = mult.get((u, v), 0) + 1
    for (u, v), c in mult.items():
        net.add_edge(index[u], index[v], c)
    return net, index


def _r_seeds(g: Multigraph, r: int) -> list[frozenset]:
    """Vertex sets of connected edge sets of size ``r`` (``r`` in {1, 2})."""
    seeds = set()
    if r == 1:
        seeds = {frozenset(uv) for uv in g.edges.values()}
    else:
        for v in g.vertices:
            for e, f in itertools.combinations(g.incident(v), 2):
                seeds.add(frozenset(g.ends(e)) | frozenset(g.ends(f)))
    return sorted(seeds, key=lambda s: sorted(s))


def min_r_essential_cut(g: Multigraph, r: int) -> EdgeCut | None:
    """A minimum r-essential edge cut for ``r <= 2`` (polynomial), or ``None``."""
    if r < 0:
        raise GraphError("r must be nonnegative")
    if r > 2:
        return _min_r_essential_cut_oracle(g, r)
    if g.num_vertices() < 2:
        return None
    net, index = _cut_network(g)
    vs = g.vertices
    best_val = INFINITY
    best_side = None
    if r == 0:
        s = index[vs[0]]
        pairs = (({s}, {index[t]}) for t in vs[1:])
    else:
        seeds = [{index[v] for v in s} for s in _r_seeds(g, r)]
        pairs = ((a, b) for a, b in itertools.combinations(seeds, 2) if not a & b)
    for a, b in pairs:
        val, side = net.max_flow(a, b, limit=best_val)
        if val < best_val:
            best_val, best_side = val, side
            if val == 0:
                break
    if best_side is None:
        return None
    return boundary(g, {vs[i] for i in best_side})


def r_essential_edge_connectivity(g: Multigraph, r: int) -> float | int:
    """Minimum size of an r-essential edge cut, ``INFINITY`` if none exists."""
    cut = min_r_essential_cut(g, r)
    return INFINITY if cut is None else cut.size


def _min_r_essential_cut_oracle(g: Multigraph, r: int) -> EdgeCut | None:
    vs = g.vertices
    if len(vs) > EDGE_ORACLE_MAX_VERTICES:
        raise GraphError("desk-scale bound exceeded")
    best = None
    first, rest = vs[0], vs[1:]
    # fixing the first vertex on one side halves the enumeration
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            x = (first,) + combo
            if len(x) == len(vs):
                continue
            cut = boundary(g, x)
            if best is not None and cut.size >= best.size:
                continue
            if is_r_essential_cut(g, cut.edges, r):
                best = cut
    return best


def r_essential_edge_connectivity_oracle(g: Multigraph, r: int) -> float | int:
    """Subset enumeration over all X of V(g); independent of the flow routine."""
    cut = _min_r_essential_cut_oracle(g, r)
    return INFINITY if cut is None else cut.size


def edge_connectivity(g: Multigraph) -> float | int:
    return r_essential_edge_connectivity(g, 0)


# ---------------------------------------------------------------------------
# vertex connectivity

def _split_network(g: Multigraph):
    """Vertex-split network: ``in = 2i``, ``out = 2i + 1`` with unit vertex capacity."""
    index = {v: i for i, v in enumerate(g.vertices)}
    n = len(index)
    net = FlowNetwork(2 * n)
    for i in range(n):
        net.add_arc(2 * i, 2 * i + 1, 1)
    big = n + 1
    seen = set()
    for u, v in g.edges.values():
        if (u, v) in seen:
            continue
        seen.add((u, v))
        net.add_arc(2 * index[u] + 1, 2 * index[v], big)
        net.add_arc(2 * index[v] + 1, 2 * index[u], big)
    return net, index


def min_essential_vertex_cut(g: Multigraph, limit: float = INFINITY) -> tuple[float | int, frozenset | None]:
    """Size of a minimum essential vertex cut and one such cut.

    Two nontrivial components each contain an edge, so it suffices to separate
    every pair of nonadjacent, vertex-disjoint edges.  With a finite ``limit`` the
    search only decides whether a cut smaller than ``limit`` exists.
    """
    net, index = _split_network(g)
    pairs = sorted(set(g.edges.values()))
    nbr = {v: g.neighbors(v) | {v} for v in g.vertices}
    best, best_cut = limit, None
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        if {c, d} & (nbr[a] | nbr[b]):
            continue
        src = {2 * index[a], 2 * index[a] + 1, 2 * index[b], 2 * index[b] + 1}
        snk = {2 * index[c], 2 * index[c] + 1, 2 * index[d], 2 * index[d] + 1}
        val, side = net.max_flow(src, snk, limit=best)
        if val < best:
            best = val
            cut = frozenset(v for v, i in index.items() if 2 * i in side and 2 * i + 1 not in side)
            best_cut = cut
            if val == 0:
                break
    if best_cut is None:
        return (INFINITY if limit == INFINITY else limit), None
    return best, best_cut


def essential_connectivity(g: Multigraph) -> float | int:
    return min_essential_vertex_cut(g)[0]


def is_essentially_k_connected(g: Multigraph, k: int) -> bool:
    if g.num_vertices() <= k:
        return False
    val, _ = min_essential_vertex_cut(g, limit=k)
    return val >= k


def _nontrivial_parts(g: Multigraph, removed: set) -> int:
    h = g.remove_vertices(removed)
    return sum(1 for c in h.components() if len(c) > 1)


def essential_connectivity_oracle(g: Multigraph) -> float | int:
    vs = g.vertices
    if len(vs) > VERTEX_ORACLE_MAX_VERTICES:
        raise GraphError("desk-scale bound exceeded")
    for k in range(len(vs) + 1):
        for x in itertools.combinations(vs, k):
            if _nontrivial_parts(g, set(x)) >= 2:
                return k
    return INFINITY


def vertex_connectivity(g: Multigraph) -> int:
    """Classical vertex connectivity (complete graphs give ``n - 1``)."""
    import networkx as nx

    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from(g.edges.values())
    if simple.number_of_nodes() <= 1:
        return 0
    return nx.node_connectivity(simple)


def is_k_connected(g: Multigraph, k: int) -> bool:
    return g.num_vertices() > k and vertex_connectivity(g) >= k


def check_obs_2ess(g: Multigraph, k: int) -> bool:
    """Both sides of the line-graph / 2-essential equivalence agree for ``k``."""
    vertex_side = is_essentially_k_connected(line_graph(g), k)
    edge_side = r_essential_edge_connectivity(g, 2) >= k and g.num_edges() > k
    return vertex_side == edge_side


# ---------------------------------------------------------------------------
# claw-free primitives

def is_claw_free(g: Multigraph) -> bool:
    for v in g.vertices:
        nb = sorted(g.neighbors(v))
        for a, b, c in itertools.combinations(nb, 3):
            if not (g.multiplicity(a, b) or g.multiplicity(a, c) or g.multiplicity(b, c)):
                return False
    return True


def local_completion(g: SimpleGraph, x: int) -> SimpleGraph:
    """Add every missing edge between two neighbours of ``x``."""
    if x not in g:
        raise GraphError(f"vertex {x} not in graph")
    edges = dict(g.edges)
    present = set(edges.values())
    nxt = max(edges, default=-1) + 1
    for a, b in itertools.combinations(sorted(g.neighbors(x)), 2):
        if (a, b) not in present:
            edges[nxt] = (a, b)
            present.add((a, b))
            nxt += 1
    return SimpleGraph(g.vertices, edges)


def check_lemma_ess(g: SimpleGraph, completion_sequence: Iterable[int], k: int) -> bool:
    """Essential k-connectivity survives the given local completions."""
    if not g.is_connected():
        raise GraphError("premise failed: graph is not connected")
    if not is_claw_free(g):
        raise GraphError("premise failed: graph is not claw-free")
    if not is_essentially_k_connected(g, k):
        raise GraphError(f"premise failed: graph is not essentially {k}-connected")
    h = g
    for x in completion_sequence:
        h = local_completion(h, x)
    return is_essentially_k_connected(h, k)
