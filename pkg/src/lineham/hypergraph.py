"""3-hypergraphs (hyperedges of size 2 or 3) and their primitive operations."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from ._flow import FlowNetwork
from .multigraph import Multigraph


class HypergraphError(ValueError):
    pass


class Hypergraph3:
    """Hypergraph whose hyperedges have 2 or 3 distinct vertices.

    Hyperedge ids are stable across detachment, quotients and switches.
    """

    __slots__ = ("_vertices", "_edges", "_inc", "labels")

    def __init__(self, vertices: Iterable[int] = (), hyperedges: Mapping[int, Iterable[int]] = (),
                 labels: Mapping[int, str] | None = None):
        vs = set(vertices)
        edges: dict[int, frozenset] = {}
        for hid, members in dict(hyperedges).items():
            members = tuple(members)
            fs = frozenset(members)
            if len(fs) != len(members) or len(fs) not in (2, 3):
                raise HypergraphError(f"hyperedge {hid} must have 2 or 3 distinct vertices, got {members}")
            edges[hid] = fs
            vs |= fs
        self._vertices = tuple(sorted(vs))
        self._edges = dict(sorted(edges.items()))
        inc: dict[int, list[int]] = {v: [] for v in self._vertices}
        for hid, e in self._edges.items():
            for v in e:
                inc[v].append(hid)
        self._inc = {v: tuple(hs) for v, hs in inc.items()}
        self.labels = dict(labels) if labels else None

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], vertices: Iterable[int] = ()) -> "Hypergraph3":
        return cls(vertices, {i: tuple(s) for i, s in enumerate(sets)})

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def hyperedges(self) -> dict[int, frozenset]:
        return self._edges

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(self._edges)

    def incident(self, v: int) -> tuple[int, ...]:
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def size(self, hid: int) -> int:
        return len(self._edges[hid])

    def edges_of_size(self, k: int) -> list[int]:
        return [h for h, e in self._edges.items() if len(e) == k]

    def degree_sum(self) -> int:
        return sum(len(e) for e in self._edges.values())

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def __contains__(self, v) -> bool:
        return v in self._inc

    def __eq__(self, other) -> bool:
        return (isinstance(other, Hypergraph3) and self._vertices == other._vertices
                and self._edges == other._edges)

    def __hash__(self):
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{h}:{''.join(str(v) + ',' for v in sorted(e))[:-1]}" for h, e in self._edges.items())
        return f"Hypergraph3(V={list(self._vertices)}, E={{{body}}})"

    def with_edges(self, edges: Mapping[int, Iterable[int]]) -> "Hypergraph3":
        return Hypergraph3(self._vertices, edges)

    def remove_edges(self, hids: Iterable[int]) -> "Hypergraph3":
        hids = set(hids)
        return Hypergraph3(self._vertices, {h: e for h, e in self._edges.items() if h not in hids})

    def remove_vertex(self, v: int) -> "Hypergraph3":
        """Delete ``v`` together with every hyperedge containing it."""
        return Hypergraph3([u for u in self._vertices if u != v],
                           {h: e for h, e in self._edges.items() if v not in e})


@dataclass(frozen=True)
class Partition:
    """Partition of a vertex set; classes are kept in a canonical order."""

    classes: tuple[frozenset, ...]
    index: Mapping[int, int] = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        classes = tuple(sorted((frozenset(c) for c in self.classes), key=lambda c: min(c)))
        idx = {}
        for i, c in enumerate(classes):
            if not c:
                raise HypergraphError("empty class")
            for v in c:
                if v in idx:
                    raise HypergraphError(f"vertex {v} in two classes")
                idx[v] = i
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "index", idx)

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(frozenset(c) for c in classes))

    @classmethod
    def singletons(cls, vs: Iterable[int]) -> "Partition":
        return cls.of([v] for v in vs)

    @classmethod
    def whole(cls, vs: Iterable[int]) -> "Partition":
        return cls.of([list(vs)])

    def ground(self) -> frozenset:
        return frozenset(self.index)

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, v: int) -> int:
        return self.index[v]

    def image(self, vs: Iterable[int]) -> frozenset:
        return frozenset(self.index[v] for v in vs)


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All set partitions of ``items`` (restricted growth order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def partitions_coarsest_first(vs: Sequence[int]) -> list[Partition]:
    parts = [Partition.of(p) for p in set_partitions(sorted(vs))]
    parts.sort(key=lambda p: (len(p), [sorted(c) for c in p.classes]))
    return parts


# ---------------------------------------------------------------------------
# incidence graph

@dataclass(frozen=True)
class IncidenceGraph:
    """G(H) together with the maps needed to read trails back into H."""

    graph: Multigraph
    node_of: dict          # 3-hyperedge id -> vertex of G(H)
    origin: dict           # edge of G(H) -> (hyperedge id, member vertex or None)

    def hyperedge_at(self, node: int) -> int | None:
        for h, x in self.node_of.items():
            if x == node:
                return h
        return None


def incidence_structure(h: Hypergraph3) -> IncidenceGraph:
    base = (max(h.vertices) + 1) if h.vertices else 0
    edges: dict[int, tuple[int, int]] = {}
    node_of: dict[int, int] = {}
    origin: dict[int, tuple[int, int | None]] = {}
    eid = 0
    for hid, e in h.hyperedges.items():
        if len(e) == 2:
            edges[eid] = tuple(sorted(e))
            origin[eid] = (hid, None)
            eid += 1
        else:
            node = base + hid
            node_of[hid] = node
            for v in sorted(e):
                edges[eid] = (v, node)
                origin[eid] = (hid, v)
                eid += 1
    vertices = list(h.vertices) + list(node_of.values())
    return IncidenceGraph(Multigraph(vertices, edges), node_of, origin)


def incidence_graph(h: Hypergraph3) -> Multigraph:
    return incidence_structure(h).graph


# ---------------------------------------------------------------------------
# cuts, detachment, quotients

def boundary_h(h: Hypergraph3, x: Iterable[int]) -> tuple[int, ...]:
    """Hyperedges meeting ``x`` without being contained in it; ``len`` is d_H(x)."""
    x = frozenset(x)
    if not x <= set(h.vertices):
        raise HypergraphError(f"not a vertex subset: {sorted(x - set(h.vertices))}")
    return tuple(hid for hid, e in h.hyperedges.items() if e & x and not e <= x)


def detach(h: Hypergraph3, e: int, v: int) -> Hypergraph3:
    members = h.hyperedges.get(e)
    if members is None:
        raise HypergraphError(f"no hyperedge {e}")
    if v not in members:
        raise HypergraphError(f"vertex {v} not in hyperedge {e}")
    edges = dict(h.hyperedges)
    if len(members) == 3:
        edges[e] = members - {v}
    else:
        del edges[e]
    return Hypergraph3(h.vertices, edges)


def quotient(h: Hypergraph3, p: Partition) -> tuple[Hypergraph3, dict[int, int]]:
    """H/P on class indices.  Each crossing hyperedge keeps its own id."""
    if p.ground() != frozenset(h.vertices):
        raise HypergraphError("partition does not cover the vertex set")
    edges = {}
    for hid, e in h.hyperedges.items():
        img = p.image(e)
        if len(img) >= 2:
            edges[hid] = img
    return Hypergraph3(range(len(p)), edges), {hid: hid for hid in edges}


def compose_partitions(p: Partition, q: Partition) -> Partition:
    """Partition of the ground set of ``p`` induced by a partition ``q`` of p's classes."""
    return Partition.of([set().union(*(p.classes[i] for i in cls)) for cls in q.classes])


# ---------------------------------------------------------------------------
# switches

def switch_applicable(h: Hypergraph3, u: int) -> bool:
    inc = h.incident(u)
    two = [x for x in inc if h.size(x) == 2]
    three = [x for x in inc if h.size(x) == 3]
    if len(two) != 2 or len(three) != 1:
        return False
    (x,) = h.hyperedges[two[0]] - {u}
    (y,) = h.hyperedges[two[1]] - {u}
    return x != y


def switch(h: Hypergraph3, u: int) -> Hypergraph3:
    """Exchange {u,x},{u,y},{u,a,b} for {u,a},{u,b},{u,x,y}.

    The 3-hyperedge keeps its id; the 2-hyperedge ids are reused in order.
    """
    if not switch_applicable(h, u):
        raise HypergraphError(f"switch precondition fails at {u}")
    inc = h.incident(u)
    two = sorted(x for x in inc if h.size(x) == 2)
    (tri,) = [x for x in inc if h.size(x) == 3]
    x = next(iter(h.hyperedges[two[0]] - {u}))
    y = next(iter(h.hyperedges[two[1]] - {u}))
    a, b = sorted(h.hyperedges[tri] - {u})
    edges = dict(h.hyperedges)
    edges[two[0]] = frozenset((u, a))
    edges[two[1]] = frozenset((u, b))
    edges[tri] = frozenset((u, x, y))
    return Hypergraph3(h.vertices, edges)


def degree_sequence(h: Hypergraph3) -> tuple[int, ...]:
    return tuple(sorted(h.degree(v) for v in h.vertices))


def canonical_form(h: Hypergraph3) -> tuple:
    """Isomorphism invariant that is complete: minimum relabelled edge list.

    Vertices are first split by (2-degree, 3-degree) and only permuted within
    those cells, which keeps the brute force small at desk scale.
    """
    vs = h.vertices
    sig = {v: (sum(1 for x in h.incident(v) if h.size(x) == 2),
               sum(1 for x in h.incident(v) if h.size(x) == 3)) for v in vs}
    cells: dict[tuple, list[int]] = {}
    for v in vs:
        cells.setdefault(sig[v], []).append(v)
    keys = sorted(cells)
    best = None
    for perms in itertools.product(*(itertools.permutations(cells[k]) for k in keys)):
        order = [v for p in perms for v in p]
        lab = {v: i for i, v in enumerate(order)}
        form = tuple(sorted(tuple(sorted(lab[v] for v in e)) for e in h.hyperedges.values()))
        if best is None or form < best:
            best = form
    return (tuple(keys), tuple(len(cells[k]) for k in keys), best or ())


def is_isomorphic(h1: Hypergraph3, h2: Hypergraph3) -> bool:
    if h1.num_vertices() != h2.num_vertices() or h1.num_edges() != h2.num_edges():
        return False
    if degree_sequence(h1) != degree_sequence(h2):
        return False
    return canonical_form(h1) == canonical_form(h2)


def related_hypergraphs(h: Hypergraph3, max_depth: int) -> Iterator[tuple[tuple[int, ...], Hypergraph3]]:
    """Breadth-first ``(switch sequence, hypergraph)`` pairs, exact duplicates skipped."""
    seen = {h}
    queue = deque([((), h)])
    while queue:
        seq, cur = queue.popleft()
        yield seq, cur
        if len(seq) >= max_depth:
            continue
        for u in cur.vertices:
            if switch_applicable(cur, u):
                nxt = switch(cur, u)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((seq + (u,), nxt))


def related_search(h1: Hypergraph3, h2: Hypergraph3, max_depth: int) -> tuple[int, ...] | None:
    if degree_sequence(h1) != degree_sequence(h2):
        return None
    target = canonical_form(h2)
    for seq, cur in related_hypergraphs(h1, max_depth):
        if canonical_form(cur) == target:
            return seq
    return None


# ---------------------------------------------------------------------------
# edge connectivity

def hyper_edge_connectivity(h: Hypergraph3) -> int:
    """min d_H(X) over nonempty proper X, by max-flow on the hyperedge-split network."""
    vs = h.vertices
    if len(vs) < 2:
        raise HypergraphError("need at least two vertices")
    index = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    hids = list(h.hyperedges)
    net = FlowNetwork(n + 2 * len(hids))
    big = len(hids) + 1
    for j, hid in enumerate(hids):
        ein, eout = n + 2 * j, n + 2 * j + 1
        net.add_arc(ein, eout, 1)
        for v in h.hyperedges[hid]:
            net.add_arc(index[v], ein, big)
            net.add_arc(eout, index[v], big)
    best = big
    for t in range(1, n):
        val, _ = net.max_flow({0}, {t}, limit=best)
        best = min(best, val)
    return best


def hyper_edge_connectivity_oracle(h: Hypergraph3) -> int:
    vs = h.vertices
    if len(vs) < 2:
        raise HypergraphError("need at least two vertices")
    best = None
    for k in range(len(vs) - 1):
        for combo in itertools.combinations(vs[1:], k):
            d = len(boundary_h(h, (vs[0],) + combo))
            best = d if best is None else min(best, d)
    return best
