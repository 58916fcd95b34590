from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import multigraphs
from lineham.generators import from_networkx, multiply
from lineham.multigraph import (
    INFINITY,
    GraphError,
    Multigraph,
    boundary,
    check_obs_2ess,
    complete_graph,
    cycle_graph,
    essential_connectivity,
    essential_connectivity_oracle,
    is_claw_free,
    is_r_essential_cut,
    line_graph,
    local_completion,
    min_essential_vertex_cut,
    min_r_essential_cut,
    path_graph,
    r_essential_edge_connectivity,
    r_essential_edge_connectivity_oracle,
    star_graph,
    vertex_connectivity,
)


def test_rejects_loops():
    with pytest.raises(GraphError):
        Multigraph.from_pairs([(0, 0)])


def test_line_graph_of_multigraph_is_simple():
    g = multiply(complete_graph(3), 2)
    lg = line_graph(g)
    assert lg.num_vertices() == 6
    assert lg.is_simple()
    # every two of the six edges share an endpoint in a triangle
    assert lg.num_edges() == 15


def test_line_graph_of_star_is_complete():
    lg = line_graph(star_graph(4))
    assert lg.num_edges() == 6


def test_known_connectivities():
    assert r_essential_edge_connectivity(cycle_graph(6), 0) == 2
    assert r_essential_edge_connectivity(complete_graph(4), 0) == 3
    # K4: any cut with an edge on both sides separates a path from a path
    assert r_essential_edge_connectivity(complete_graph(4), 1) == 4
    assert r_essential_edge_connectivity(path_graph(2), 1) == INFINITY
    assert vertex_connectivity(complete_graph(5)) == 4


def test_petersen_line_graph():
    g = from_networkx(nx.petersen_graph())
    # a path on three vertices has 9 - 4 = 5 boundary edges, as does a 5-cycle
    assert r_essential_edge_connectivity(g, 2) == 5
    assert essential_connectivity(line_graph(g)) == 5


def test_witness_cut_is_essential():
    g = from_networkx(nx.circular_ladder_graph(4))
    for r in (0, 1, 2):
        cut = min_r_essential_cut(g, r)
        assert cut is not None
        assert is_r_essential_cut(g, cut.edges, r)
        assert boundary(g, cut.side).edges == cut.edges


def test_vertex_cut_witness():
    lg = line_graph(from_networkx(nx.circular_ladder_graph(4)))
    k, cut = min_essential_vertex_cut(lg)
    rest = lg.remove_vertices(cut)
    nontrivial = [c for c in rest.components() if len(c) > 1]
    assert len(nontrivial) >= 2 and len(cut) == k


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8))
def test_flow_cut_matches_enumeration(g):
    for r in (0, 1, 2):
        assert r_essential_edge_connectivity(g, r) == r_essential_edge_connectivity_oracle(g, r)


@settings(max_examples=100, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=7, min_edges=1))
def test_vertex_side_matches_enumeration(g):
    lg = line_graph(g)
    assert essential_connectivity(lg) == essential_connectivity_oracle(lg)


@settings(max_examples=100, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=7, min_edges=1))
def test_edge_and_vertex_side_agree(g):
    for k in range(1, 8):
        assert check_obs_2ess(g, k)


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=8, min_edges=1))
def test_line_graphs_are_claw_free(g):
    assert is_claw_free(line_graph(g))


def test_local_completion_makes_neighbourhood_clique():
    g = line_graph(star_graph(2)).__class__.from_pairs([(0, 1), (0, 2), (0, 3)])
    h = local_completion(g, 0)
    assert {1, 2, 3} <= h.neighbors(1) | {1}
    assert is_claw_free(h)
