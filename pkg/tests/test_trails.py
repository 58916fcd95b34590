from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import assume, given, settings

from conftest import multigraphs
from lineham.generators import from_networkx, multiply
from lineham.multigraph import Multigraph, complete_graph, cycle_graph, line_graph, path_graph
from lineham.reduction import ReductionError
from lineham.trails import (
    RegimeExceeded,
    Trail,
    TrailConstraints,
    check_lemma_small,
    crosscheck_preimage,
    endgame,
    find_dominating_trail,
    find_trail,
    ham_connected,
    ham_path_exists,
    hamilton_path,
    is_internally_dominating,
    is_spanning_tree,
    is_valid_trail,
    lemma_small_bound,
    nash_williams_check,
    two_disjoint_spanning_trees,
)


def _ham_path_brute(g, a=None, b=None):
    vs = list(g.vertices)
    for perm in itertools.permutations(vs):
        if a is not None and perm[0] != a:
            continue
        if b is not None and perm[-1] != b:
            continue
        if all(g.multiplicity(u, v) for u, v in zip(perm, perm[1:])):
            return True
    return False


def test_trail_json_roundtrip():
    t = Trail((0, 1, 2), (5, 7))
    assert Trail.from_json(t.to_json()) == t
    assert t.reversed().vertices == (2, 1, 0)


def test_internal_vertices_include_repeated_ends():
    # closed trail around a triangle and out again: start vertex reappears inside
    g = Multigraph.from_pairs([(0, 1), (1, 2), (2, 0), (0, 3)])
    t = Trail((0, 1, 2, 0, 3), (0, 1, 2, 3))
    assert is_valid_trail(t, g)
    assert 0 in t.internal_vertices()
    assert is_internally_dominating(t, g)


def test_find_trail_respects_ends_and_constraints():
    g = complete_graph(4)
    t = find_trail(g, 0, 1, TrailConstraints(span=frozenset(range(4))))
    assert t.start == 0 and t.end == 1
    assert set(range(4)) <= t.vertex_set()
    assert find_trail(path_graph(3), 0, 2, TrailConstraints(first=1)) is None


def test_dominating_trail_in_k4():
    g = complete_graph(4)
    for e1, e2 in itertools.permutations(g.edge_ids, 2):
        t = find_dominating_trail(g, e1, e2)
        assert t is not None and t.edges[0] == e1 and t.edges[-1] == e2
        assert is_internally_dominating(t, g)


def test_trail_bound():
    with pytest.raises(RegimeExceeded):
        find_trail(multiply(complete_graph(2), 40), max_edges=30)


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=12, min_edges=1))
def test_ham_dp_matches_permutations(g):
    assert ham_path_exists(g) == _ham_path_brute(g)
    a, b = g.vertices[0], g.vertices[-1]
    assert ham_path_exists(g, a, b) == _ham_path_brute(g, a, b)
    p = hamilton_path(g, a, b)
    if p is not None:
        assert p[0] == a and p[-1] == b and sorted(p) == sorted(g.vertices)


def test_ham_connected_known():
    assert ham_connected(complete_graph(5))
    assert not ham_connected(cycle_graph(5))
    assert ham_connected(line_graph(complete_graph(4)))


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=7, min_edges=3))
def test_preimage_equivalence(g):
    assume(all(g.degree(v) > 0 for v in g.vertices))
    agree, _, _ = crosscheck_preimage(g)
    assert agree


@settings(max_examples=120, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=12))
def test_spanning_trees_match_partition_minimum(g):
    trees = two_disjoint_spanning_trees(g)
    verdict, part, val = nash_williams_check(g)
    assert (trees is not None) == verdict
    if trees is not None:
        t1, t2 = trees
        assert not (t1 & t2)
        assert is_spanning_tree(g, t1) and is_spanning_tree(g, t2)
    else:
        assert val < 0 and len(part) >= 2


def test_lemma_small_bound_symbolic():
    assert all(lemma_small_bound(p) for p in range(1, 6))
    assert not lemma_small_bound(7)
    assert check_lemma_small(complete_graph(4))[0]


@pytest.mark.parametrize("g", [complete_graph(4), multiply(complete_graph(3), 2),
                               from_networkx(nx.circular_ladder_graph(3))])
def test_endgame_all_pairs(g):
    for e1, e2 in itertools.permutations(g.edge_ids, 2):
        res = endgame(g, e1, e2)
        assert res.transcript["verified"]
        assert is_internally_dominating(res.trail, g)


def test_endgame_rejects_bad_input():
    # two triangles joined by two edges: essential 2-edge-cut
    g = Multigraph.from_pairs([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4)])
    with pytest.raises(ReductionError):
        endgame(g, 0, 1)
