from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from conftest import hypergraphs
from lineham.hypergraph import Hypergraph3, Partition, quotient
from lineham.quasigraph import (
    NoWitness,
    Quasigraph,
    anticonnected_on,
    anticonnected_on_bruteforce,
    bad_leaf_candidates,
    bad_leaves,
    complement,
    connected_on,
    has_bad_leaf_any_roots,
    hypergraph_is_acyclic,
    hypergraph_is_acyclic_bruteforce,
    is_acyclic,
    is_quasicycle,
    pi_star,
    quotient_quasigraph,
    rooted_orientation,
    skeletal_search,
)


def _all_quasigraphs(h):
    opts = [[None] + [frozenset(p) for p in itertools.combinations(sorted(e), 2)]
            for e in h.hyperedges.values()]
    for choice in itertools.product(*opts):
        yield Quasigraph(h, {hid: c for hid, c in zip(h.hyperedges, choice) if c})


def test_triangle_of_pairs_is_quasicycle():
    h = Hypergraph3(range(3), {0: (0, 1), 1: (1, 2), 2: (0, 2)})
    q = Quasigraph(h, {0: {0, 1}, 1: {1, 2}, 2: {0, 2}})
    assert is_quasicycle(q) and not is_acyclic(q)
    assert not hypergraph_is_acyclic(h)


def test_single_3_edge_is_acyclic():
    h = Hypergraph3(range(3), {0: (0, 1, 2)})
    assert hypergraph_is_acyclic(h)


def test_quasigraph_rejects_foreign_pair():
    h = Hypergraph3(range(3), {0: (0, 1)})
    with pytest.raises(ValueError):
        Quasigraph(h, {0: {0, 2}})


def test_bad_leaf_example():
    # leaf 0 has three hyperedges, exactly one of size 3, and that one carries it
    h = Hypergraph3(range(4), {0: (0, 1, 2), 1: (0, 3), 2: (0, 1)})
    q = Quasigraph(h, {0: {0, 2}})
    orient = rooted_orientation(q, [2, 1, 3])
    assert bad_leaves(q, orient) == {0}
    assert 0 in bad_leaf_candidates(q)


@settings(max_examples=120, deadline=None)
@given(hypergraphs(max_vertices=5, max_edges=6))
def test_acyclicity_matches_assignment_enumeration(h):
    assert hypergraph_is_acyclic(h) == hypergraph_is_acyclic_bruteforce(h)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_vertices=5, max_edges=5))
def test_anticonnected_matches_partition_enumeration(h):
    for q in itertools.islice(_all_quasigraphs(h), 40):
        for k in range(1, h.num_vertices() + 1):
            x = h.vertices[:k]
            assert anticonnected_on(q, x) == anticonnected_on_bruteforce(q, x)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_vertices=5, max_edges=5))
def test_bad_leaf_closed_form_matches_root_enumeration(h):
    for q in itertools.islice(_all_quasigraphs(h), 40):
        if not is_acyclic(q):
            continue
        assert has_bad_leaf_any_roots(q) == bool(bad_leaf_candidates(q))


@settings(max_examples=100, deadline=None)
@given(hypergraphs(max_vertices=5, max_edges=6))
def test_witness_checked_by_independent_oracles(h):
    w = skeletal_search(h, 1)
    sigma, p = w.sigma, w.partition
    assert sigma.host == w.host
    assert is_acyclic(sigma)
    assert not has_bad_leaf_any_roots(sigma)
    for cls in p.classes:
        assert connected_on(sigma, cls)
        assert anticonnected_on_bruteforce(sigma, cls)
    assert hypergraph_is_acyclic_bruteforce(complement(quotient_quasigraph(sigma, p)))


def test_witness_on_isolated_vertices():
    w = skeletal_search(Hypergraph3(range(3), {}), 0)
    assert len(w.partition) == 3


def test_restricted_search_raises_no_witness():
    h = Hypergraph3(range(2), {0: (0, 1)})
    with pytest.raises(NoWitness):
        skeletal_search(h, 0, min_classes=3)


def test_quotient_quasigraph_drops_internal_pairs():
    h = Hypergraph3(range(4), {0: (0, 1), 1: (1, 2, 3)})
    q = Quasigraph(h, {0: {0, 1}, 1: {2, 3}})
    p = Partition.of([{0, 1}, {2}, {3}])
    t = quotient_quasigraph(q, p)
    assert t.host == quotient(h, p)[0]
    assert dict(t.assignment) == {1: frozenset({1, 2})}
    assert pi_star(t).num_edges() == 1
