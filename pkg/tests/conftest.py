from __future__ import annotations

from hypothesis import strategies as st

from lineham.hypergraph import Hypergraph3
from lineham.multigraph import Multigraph


@st.composite
def multigraphs(draw, max_vertices=6, max_edges=9, min_edges=0, connected=False):
    n = draw(st.integers(2, max_vertices))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    pairs = draw(st.lists(pair, min_size=min_edges, max_size=max_edges))
    if connected:
        pairs = [(i, i + 1) for i in range(n - 1)] + pairs
    return Multigraph.from_pairs(pairs, range(n))


@st.composite
def hypergraphs(draw, max_vertices=5, max_edges=6):
    n = draw(st.integers(3, max_vertices))
    edge = st.sets(st.integers(0, n - 1), min_size=2, max_size=3)
    sets = draw(st.lists(edge, max_size=max_edges))
    return Hypergraph3.from_sets(sets, range(n))
