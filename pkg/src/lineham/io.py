"""Text formats: edge lists, graph6/sparse6, the hypergraph line format, JSON."""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import networkx as nx

from .hypergraph import Hypergraph3, HypergraphError
from .multigraph import GraphError, Multigraph

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def _intern(names: list[str]) -> tuple[dict, dict | None]:
    """Map vertex names to ints.  Integer names are kept as they are."""
    if all(n.lstrip("-").isdigit() for n in names):
        return {n: int(n) for n in names}, None
    ids: dict = {}
    for n in names:
        ids.setdefault(n, len(ids))
    return ids, {i: n for n, i in ids.items()}


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line.split()


def parse_edgelist(text: str) -> Multigraph:
    """``u v`` per line; a single token declares an isolated vertex."""
    rows = list(_lines(text))
    for r in rows:
        if len(r) not in (1, 2):
            raise FormatError(f"bad edge-list line: {' '.join(r)}")
    ids, labels = _intern([t for r in rows for t in r])
    verts = [ids[r[0]] for r in rows if len(r) == 1]
    pairs = [(ids[r[0]], ids[r[1]]) for r in rows if len(r) == 2]
    try:
        g = Multigraph(set(verts) | set(ids.values()), {i: p for i, p in enumerate(pairs)}, labels)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc
    return g


def write_edgelist(g: Multigraph) -> str:
    name = (lambda v: g.labels.get(v, str(v))) if g.labels else str
    lines = [f"{name(u)} {name(v)}" for u, v in g.edges.values()]
    used = {v for uv in g.edges.values() for v in uv}
    lines += [name(v) for v in g.vertices if v not in used]
    return "\n".join(lines) + "\n"


def parse_graph6(data: str) -> Multigraph:
    """graph6 or sparse6 (detected by the leading ``:`` or header)."""
    s = data.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        if s.startswith(">>sparse6<<") or s.startswith(":"):
            if not s.startswith(">>"):
                s = ">>sparse6<<" + s
            nxg = nx.from_sparse6_bytes(s.encode())
        else:
            nxg = nx.from_graph6_bytes(s.encode())
    except (nx.NetworkXError, ValueError) as exc:
        raise FormatError(f"cannot decode graph6/sparse6: {exc}") from exc
    edges = [(u, v) for u, v, *_ in nxg.edges(keys=True)] if nxg.is_multigraph() else list(nxg.edges())
    if any(u == v for u, v in edges):
        raise FormatError("loops are not supported")
    return Multigraph(nxg.nodes(), {i: e for i, e in enumerate(edges)})


def to_sparse6(g: Multigraph) -> str:
    m = g.relabel({v: i for i, v in enumerate(g.vertices)})
    nxg = nx.MultiGraph()
    nxg.add_nodes_from(range(m.num_vertices()))
    nxg.add_edges_from(m.edges.values())
    return nx.to_sparse6_bytes(nxg, header=False).decode().strip()


def load_graph(path: str | Path, fmt: str = "edgelist") -> Multigraph:
    text = Path(path).read_text()
    if fmt == "graph6":
        return parse_graph6(text.strip().splitlines()[0])
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise FormatError(f"unknown format {fmt!r}")


def parse_hypergraph(text: str) -> Hypergraph3:
    """Each line lists the 2 or 3 vertex names of one hyperedge."""
    rows = list(_lines(text))
    ids, labels = _intern([t for r in rows for t in r])
    try:
        return Hypergraph3(ids.values(), {i: [ids[t] for t in r] for i, r in enumerate(rows)}, labels)
    except HypergraphError as exc:
        raise FormatError(str(exc)) from exc


def hypergraph_to_text(h: Hypergraph3) -> str:
    name = (lambda v: h.labels.get(v, str(v))) if h.labels else str
    return "".join(" ".join(name(v) for v in sorted(e)) + "\n" for e in h.hyperedges.values())


# ---------------------------------------------------------------------------
# JSON

def _default(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    raise TypeError(f"not serialisable: {type(obj).__name__}")


def _clean(obj):
    if isinstance(obj, float) and obj in (float("inf"), float("-inf")):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_clean(v) for v in obj)
    if hasattr(obj, "to_json"):
        return _clean(obj.to_json())
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, separators=(",", ":"), default=_default)


def content_hash(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def graph_hash(g: Multigraph) -> str:
    return content_hash({"vertices": list(g.vertices), "edges": {e: list(uv) for e, uv in g.edges.items()}})
