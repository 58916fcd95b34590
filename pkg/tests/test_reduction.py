from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import assume, given, settings

from conftest import multigraphs
from lineham.generators import from_networkx, gen_pendant, multiply, subdivide
from lineham.multigraph import Multigraph, complete_graph, cycle_graph
from lineham.reduction import (
    ReductionError,
    build_he,
    check_lemma_permanent,
    check_obs_cuts,
    compute_core,
    k_map,
    reduce_graph,
    reduction_trace,
    select_w,
    xhyper,
)


def _standing(g):
    try:
        compute_core(g)
        return True
    except ReductionError:
        return False


def test_suppression_keeps_higher_id_and_path():
    g = subdivide(complete_graph(4), 0)     # edge 0 -> 0-4, new edge 6 -> 4-1
    core = compute_core(g)
    assert 4 not in core.core.vertices
    assert 0 not in core.core.edges and core.core.ends(6) == (0, 1)
    assert core.suppressed[6] == (0, 6)
    assert 4 in core.transient


def test_leaves_are_deleted():
    g = gen_pendant(complete_graph(4))
    core = compute_core(g)
    assert core.leaves == frozenset(range(4, 8))
    assert core.core.num_edges() == 6
    assert all(k_map(g, core, reduce_graph(g), e) is None for e in range(6, 10))


def test_not_essentially_3_edge_connected_rejected():
    two_triangles = Multigraph.from_pairs([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4)])
    with pytest.raises(ReductionError):
        compute_core(two_triangles)
    with pytest.raises(ReductionError):
        compute_core(Multigraph.from_pairs([(0, 1), (2, 3)]))


def test_cycle_core_is_trivial():
    # a cycle fails the standing hypothesis, so skip the check
    core = compute_core(cycle_graph(5), check=False)
    assert core.trivial
    assert len(core.discarded_loops) == 1


def test_h0_of_k4():
    red = reduce_graph(complete_graph(4))
    assert red.w == {0}
    # h(0) gets id max core edge id + 1
    assert red.h0.hyperedges[6] == {1, 2, 3}
    assert red.h0.num_edges() == 4


def test_he_detaches_anchors():
    g = complete_graph(4)
    red = reduce_graph(g)
    a = build_he(g, red.core, red, 0, 5)
    assert (a.a1, a.a2) == (1, 2)
    assert a.he.degree(a.a1) == red.h0.degree(a.a1) - 1
    assert a.events[0].startswith("detached")
    with pytest.raises(ReductionError):
        build_he(g, red.core, red, 0, 0)


def test_trace_is_serialisable():
    g = multiply(complete_graph(4), 2)
    red = reduce_graph(g)
    t = reduction_trace(red, build_he(g, red.core, red, 0, 1))
    assert "W" in t and "anchors" in t


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=10, min_edges=3, connected=True))
def test_reduction_invariants(g):
    assume(_standing(g))
    core = compute_core(g)
    c = core.core
    # every surviving G edge lies on exactly one suppressed path
    on_paths = [e for p in core.suppressed.values() for e in p] + [e for p in core.discarded_loops for e in p]
    assert len(on_paths) == len(set(on_paths))
    assert set(on_paths) == {e for e, uv in g.edges.items() if not set(uv) & core.leaves}
    if core.trivial:
        return
    assert all(c.degree(v) >= 3 for v in c.vertices)
    for seed in (None, 1):
        red = reduce_graph(g, seed=seed)
        w = red.w
        assert w == select_w(core, seed)
        assert all(c.degree(v) == 3 and v not in core.protected for v in w)
        assert all(not (c.neighbors(v) & w) for v in w)
        assert check_lemma_permanent(g, core, red)
        for v in red.h0.vertices:
            direct = sum(1 for e in c.incident(v) if c.other(e, v) not in w)
            via = sum(1 for u in red.h_of if v in c.neighbors(u))
            assert red.h0.degree(v) == direct + via
    for k in range(1, c.num_vertices()):
        for x in itertools.combinations(c.vertices, k):
            assert check_obs_cuts(g, core, x)
            if not set(x) & red.w:
                xhyper(core, red, x)   # raises on a degree mismatch


def test_prism_k_map_is_total():
    g = from_networkx(nx.circular_ladder_graph(3))
    red = reduce_graph(g)
    assert all(k_map(g, red.core, red, e) is not None for e in g.edge_ids)
