"""Graph -> core -> 3-hypergraph reduction and its bookkeeping.

Edge ids of G survive into the core: suppressing a degree-2 vertex keeps the
higher of its two edge ids, and ``suppressed`` records the path of G-edges
each core edge stands for.  Hyperedges of H0 reuse core edge ids for the
2-hyperedges; h(w) gets a fresh id above every core edge id.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .hypergraph import Hypergraph3, boundary_h, detach
from .multigraph import (
    GraphError,
    Multigraph,
    boundary,
    edge_connectivity,
    is_r_essential_cut,
    min_r_essential_cut,
    r_essential_edge_connectivity,
)

log = logging.getLogger(__name__)


class ReductionError(ValueError):
    pass


@dataclass
class CoreResult:
    source: Multigraph
    core: Multigraph
    suppressed: dict            # core edge id -> tuple of G edge ids (a path in G)
    leaves: frozenset           # V1(G)
    transient: frozenset        # V(G) - V(G0)
    protected: frozenset
    discarded_loops: tuple = ()

    @property
    def trivial(self) -> bool:
        return self.core.num_vertices() <= 1

    def core_edge_of(self, e: int) -> int | None:
        """The core edge whose path contains the G-edge ``e``."""
        for f, path in self.suppressed.items():
            if e in path:
                return f
        return None


@dataclass
class HyperReduction:
    core: CoreResult
    h0: Hypergraph3
    w: frozenset
    h_of: dict                  # temporary vertex -> hyperedge id (absent when omitted)
    omitted: tuple = ()         # temporary vertices with fewer than two neighbours

    @property
    def permanent(self) -> frozenset:
        return frozenset(self.h0.vertices)


@dataclass
class AnchoredHypergraph:
    he: Hypergraph3
    a1: int
    a2: int
    e1: int
    e2: int
    k1: int
    k2: int
    events: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# core

def check_standing_hypothesis(g: Multigraph) -> None:
    """Raise unless G is connected and essentially 3-edge-connected."""
    if not g.is_connected():
        raise ReductionError("graph is not connected")
    cut = min_r_essential_cut(g, 1)
    if cut is not None and cut.size < 3:
        raise ReductionError(f"essential edge-cut of size {cut.size}: edges {sorted(cut.edges)}")


def compute_core(g: Multigraph, check: bool = True) -> CoreResult:
    if g.num_vertices() == 0:
        raise GraphError("empty graph")
    if check:
        check_standing_hypothesis(g)
    leaves = frozenset(v for v in g.vertices if g.degree(v) == 1)
    vertices = set(g.vertices) - leaves
    edges = {e: uv for e, uv in g.edges.items() if not (set(uv) & leaves)}
    paths = {e: (e,) for e in edges}
    loops = []

    def incident(v):
        return sorted(e for e, (a, b) in edges.items() if v in (a, b))

    changed = True
    while changed:
        changed = False
        for z in sorted(vertices):
            inc = incident(z)
            if len(inc) != 2:
                continue
            lo, hi = inc
            x = edges[lo][0] if edges[lo][1] == z else edges[lo][1]
            y = edges[hi][0] if edges[hi][1] == z else edges[hi][1]
            # order the path so it runs x .. z .. y
            path = _orient(paths[lo], g, x, z) + _orient(paths[hi], g, z, y)
            del edges[lo], paths[lo]
            vertices.discard(z)
            if x == y:
                # both edges went to the same vertex: the result would be a loop
                del edges[hi], paths[hi]
                loops.append(path)
            else:
                edges[hi] = (min(x, y), max(x, y))
                paths[hi] = path
            changed = True
            break
    core = Multigraph(vertices, edges)
    transient = frozenset(set(g.vertices) - vertices)
    protected = frozenset(
        v for v in core.vertices
        if core.degree(v) == 3 and any(u in transient for u in g.neighbors(v))
    )
    return CoreResult(g, core, dict(sorted(paths.items())), leaves, transient, protected, tuple(loops))


def _orient(path: tuple, g: Multigraph, start: int, end: int) -> tuple:
    """Return ``path`` read as a walk from ``start`` to ``end``."""
    cur = start
    for e in path:
        if cur not in g.ends(e):
            break
        cur = g.other(e, cur)
    else:
        if cur == end:
            return path
    return tuple(reversed(path))


def lift_core_edge(core: CoreResult, f: int) -> tuple:
    return core.suppressed[f]


def xcore(g: Multigraph, core: CoreResult, x: Iterable[int]) -> frozenset:
    x = frozenset(x)
    if not x <= set(core.core.vertices):
        raise ReductionError("x is not a set of core vertices")
    extra = {y for y in core.transient if g.neighbors(y) and g.neighbors(y) <= x}
    return x | extra


def check_obs_cuts(g: Multigraph, core: CoreResult, x: Iterable[int]) -> bool:
    x = frozenset(x)
    xp = xcore(g, core, x)
    c0 = boundary(core.core, x)
    c1 = boundary(g, xp)
    if c0.size != c1.size:
        return False
    for r in (0, 1, 2):
        if is_r_essential_cut(core.core, c0.edges, r) and not is_r_essential_cut(g, c1.edges, r):
            return False
    return True


def check_core_properties(core: CoreResult) -> tuple[bool, bool, bool]:
    """(3-edge-connected, essentially 4-edge-connected, 2-essentially 9-edge-connected)."""
    if core.trivial:
        return True, True, True
    c = core.core
    return (
        edge_connectivity(c) >= 3,
        r_essential_edge_connectivity(c, 1) >= 4,
        r_essential_edge_connectivity(c, 2) >= 9,
    )


# ---------------------------------------------------------------------------
# hypergraph

def select_w(core: CoreResult, seed: int | None = None) -> frozenset:
    """Greedy maximal independent set among unprotected degree-3 core vertices.

    Scans in ascending vertex id, or in a shuffled order when ``seed`` is given.
    """
    c = core.core
    cand = [v for v in c.vertices if c.degree(v) == 3 and v not in core.protected]
    if seed is not None:
        random.Random(seed).shuffle(cand)
    chosen: set[int] = set()
    for v in cand:
        if not (c.neighbors(v) & chosen):
            chosen.add(v)
    return frozenset(chosen)


def build_h0(core: CoreResult, w: Iterable[int]) -> HyperReduction:
    c = core.core
    w = frozenset(w)
    edges = {e: uv for e, uv in c.edges.items() if not (set(uv) & w)}
    base = max(c.edge_ids, default=-1) + 1
    h_of = {}
    omitted = []
    for i, v in enumerate(sorted(w)):
        nb = c.neighbors(v)
        if len(nb) < 2:
            log.info("temporary vertex %s has %d distinct neighbour(s); h(w) omitted", v, len(nb))
            omitted.append(v)
            continue
        h_of[v] = base + i
        edges[base + i] = tuple(sorted(nb))
    h0 = Hypergraph3(set(c.vertices) - w, edges)
    return HyperReduction(core, h0, w, h_of, tuple(omitted))


def xhyper(core: CoreResult, red: HyperReduction, y: Iterable[int]) -> frozenset:
    y = frozenset(y)
    c = core.core
    extra = {w for w in red.w if sum(1 for e in c.incident(w) if c.other(e, w) in y) >= 2}
    yp = y | extra
    if len(boundary_h(red.h0, y)) != boundary(c, yp).size:
        raise AssertionError(f"degree mismatch for Y={sorted(y)}")
    return yp


def k1(core: CoreResult, e: int) -> int | None:
    if e not in core.source.edges:
        raise GraphError(f"no edge {e}")
    if set(core.source.ends(e)) & core.leaves:
        return None
    return core.core_edge_of(e)


def k2(red: HyperReduction, f: int | None) -> int | None:
    if f is None:
        return None
    for v in red.core.core.ends(f):
        if v in red.w:
            return red.h_of.get(v)
    return f


def k_map(g: Multigraph, core: CoreResult, red: HyperReduction, e: int) -> int | None:
    return k2(red, k1(core, e))


def k_table(core: CoreResult, red: HyperReduction) -> dict:
    return {e: k2(red, k1(core, e)) for e in core.source.edge_ids}


def check_lemma_permanent(g: Multigraph, core: CoreResult, red: HyperReduction) -> bool:
    perm = red.permanent
    return all(set(uv) & perm for uv in g.edges.values())


def choose_anchors(red: HyperReduction, g: Multigraph, e1: int, e2: int) -> tuple[int, int]:
    perm = red.permanent
    c1 = sorted(v for v in g.ends(e1) if v in perm)
    c2 = sorted(v for v in g.ends(e2) if v in perm)
    if not c1 or not c2:
        raise ReductionError("edge without a permanent endvertex")
    pairs = sorted(product(c1, c2), key=lambda p: (p[0] == p[1], p))
    return pairs[0]


def build_he(g: Multigraph, core: CoreResult, red: HyperReduction, e1: int, e2: int) -> AnchoredHypergraph:
    if e1 == e2:
        raise ReductionError("e1 and e2 must differ")
    ks = [k_map(g, core, red, e) for e in (e1, e2)]
    if ks[0] is None or ks[1] is None:
        raise ReductionError("edge collapses under reduction")
    a1, a2 = choose_anchors(red, g, e1, e2)
    events = []
    he = detach(red.h0, ks[0], a1)
    events.append(f"detached {ks[0]} from {a1}")
    if ks[1] not in he.hyperedges:
        events.append(f"hyperedge {ks[1]} already removed; second detachment skipped")
    elif a2 not in he.hyperedges[ks[1]]:
        events.append(f"{a2} no longer in hyperedge {ks[1]}; second detachment skipped")
    else:
        he = detach(he, ks[1], a2)
        events.append(f"detached {ks[1]} from {a2}")
    return AnchoredHypergraph(he, a1, a2, e1, e2, ks[0], ks[1], events)


def reduce_graph(g: Multigraph, seed: int | None = None, check: bool = True) -> HyperReduction:
    core = compute_core(g, check=check)
    return build_h0(core, select_w(core, seed))


def reduction_trace(red: HyperReduction, anchored: AnchoredHypergraph | None = None) -> dict:
    from .io import hypergraph_to_text

    core = red.core
    out = {
        "core_edges": {f: {"ends": list(core.core.ends(f)), "path": list(p)} for f, p in core.suppressed.items()},
        "core_vertices": list(core.core.vertices),
        "transient": sorted(core.transient),
        "protected": sorted(core.protected),
        "W": sorted(red.w),
        "h": {w: sorted(red.h0.hyperedges[h]) for w, h in red.h_of.items()},
        "h_omitted": list(red.omitted),
        "k": k_table(core, red),
        "h0": hypergraph_to_text(red.h0),
    }
    if anchored is not None:
        out.update({
            "anchors": [anchored.a1, anchored.a2],
            "e": [anchored.e1, anchored.e2],
            "k_e": [anchored.k1, anchored.k2],
            "he": hypergraph_to_text(anchored.he),
            "events": anchored.events,
        })
    return out
