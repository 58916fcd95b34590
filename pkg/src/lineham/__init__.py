"""Executable checks for Hamilton-connectivity of line graphs via 3-hypergraph reduction."""
from .hypergraph import Hypergraph3, Partition
from .multigraph import INFINITY, Multigraph, SimpleGraph, line_graph
from .quasigraph import Quasigraph
from .trails import Trail

__all__ = ["INFINITY", "Hypergraph3", "Multigraph", "Partition", "Quasigraph", "SimpleGraph", "Trail", "line_graph"]
__version__ = "0.1.0"
