from __future__ import annotations

import random

import pytest

from lineham.generators import (
    Fig1bParams,
    enumerate_multigraphs,
    gen_fig1b,
    gen_pendant,
    multigraphs_by_edges,
    random_acyclic_quasigraph,
    random_hypergraph,
)
from lineham.multigraph import GraphError, complete_graph
from lineham.quasigraph import is_acyclic


def test_fig1b_sizes():
    for q in (1, 3):
        g = gen_fig1b(q)
        assert g.num_edges() == 18 * q
        assert g.num_vertices() == 4 + 12 * q
        assert sorted({g.degree(v) for v in range(4)}) == [3 * q]
    with pytest.raises(GraphError):
        Fig1bParams(2)


def test_pendant_adds_one_leaf_per_vertex():
    g = gen_pendant(complete_graph(4))
    assert g.num_vertices() == 8 and sum(1 for v in g.vertices if g.degree(v) == 1) == 4


def test_multigraph_counts_match_known_sequence():
    # loopless multigraphs without isolated vertices by number of edges
    counts = [0] * 6
    for g in multigraphs_by_edges(5):
        counts[g.num_edges()] += 1
    assert counts[1:] == [1, 3, 8, 23, 66]


def test_enumeration_counts_small():
    # multigraphs on at most 3 vertices, multiplicity at most 1: the 1 + 2 + 4 simple graphs
    assert sum(1 for _ in enumerate_multigraphs(3, 1)) == 7


def test_random_quasigraph_is_acyclic():
    rng = random.Random(3)
    for _ in range(50):
        h = random_hypergraph(6, 9, rng)
        assert is_acyclic(random_acyclic_quasigraph(h, rng))
