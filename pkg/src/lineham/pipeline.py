"""Per-pair certification runs tying reduction, skeletal search and certificates together."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .certify import (
    CertifyError,
    check_discharging_conclusion,
    check_lemma_forb,
    check_lemma_path,
    check_obs_nontriv,
    check_prop_s2,
    counting_report,
    discharge,
    lift_tau,
)
from .hypergraph import hyper_edge_connectivity, quotient
from .io import SCHEMA_VERSION, content_hash, graph_hash
from .multigraph import Multigraph
from .quasigraph import NoWitness, quotient_quasigraph, skeletal_search
from .reduction import (
    HyperReduction,
    ReductionError,
    build_he,
    check_core_properties,
    check_lemma_permanent,
    k_map,
    reduce_graph,
)


@dataclass
class PairCertificate:
    e1: int
    e2: int
    status: str                      # "ok", "collapsed", "no-witness"
    n: int | None = None
    witness: dict | None = None
    counting: dict | None = None
    discharging: dict | None = None
    forb: tuple | None = None
    obs_nontriv: tuple | None = None
    s2: dict | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def certify_pair(g: Multigraph, e1: int, e2: int, red: HyperReduction | None = None, *,
                 switch_depth: int = 0, min_classes: int = 1, require_solid: bool = False,
                 budget: int | None = 2_000_000) -> PairCertificate:
    """Build He for (e1, e2), find a skeletal witness and evaluate every certificate."""
    if red is None:
        red = reduce_graph(g)
    if k_map(g, red.core, red, e1) is None or k_map(g, red.core, red, e2) is None:
        return PairCertificate(e1, e2, "collapsed")
    anchored = build_he(g, red.core, red, e1, e2)
    try:
        wit = skeletal_search(anchored.he, switch_depth, min_classes=min_classes,
                              require_solid=require_solid, budget=budget)
    except NoWitness:
        return PairCertificate(e1, e2, "no-witness")
    s = wit.partition
    cert = PairCertificate(e1, e2, "ok", n=len(s), witness=wit.to_json())
    cert.obs_nontriv = check_obs_nontriv(red, s)
    if red.core.core.num_vertices() >= 6:
        cert.s2 = check_prop_s2(None, red, anchored, s)
    if len(s) >= 2 and not wit.switches:
        rep = counting_report(red.h0, anchored.he, s, wit.sigma)
        cert.counting = rep.to_json()
        h0q, _ = quotient(red.h0, s)
        tau0 = lift_tau(red.h0, s, quotient_quasigraph(wit.sigma, s))
        ledger = discharge(h0q, tau0)
        cert.discharging = {
            "conclusion": check_discharging_conclusion(ledger),
            "rule_counts": ledger.rule_counts(),
            "amounts_ok": ledger.amounts_ok(),
            "ledger": ledger.to_json(),
        }
        if len(s) >= 5:
            cert.forb = check_lemma_forb(h0q)
    return cert


@dataclass
class RunReport:
    name: str
    graph: Multigraph
    profile: dict
    pairs: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    timing: float = 0.0

    def to_json(self) -> dict:
        body = {
            "schema_version": SCHEMA_VERSION,
            "instance": {"name": self.name, "hash": graph_hash(self.graph),
                         "vertices": self.graph.num_vertices(), "edges": self.graph.num_edges()},
            "profile": self.profile,
            "checks": {k: {"checker": k, "input_hash": graph_hash(self.graph), "verdict": v}
                       for k, v in self.checks.items()},
            "pairs": [p.to_json() if hasattr(p, "to_json") else p for p in self.pairs],
            "timing_seconds": round(self.timing, 3),
        }
        body["report_hash"] = content_hash({k: v for k, v in body.items() if k != "timing_seconds"})
        return body


def certify_instance(name: str, g: Multigraph, *, seed: int | None = None, pairs=None,
                     **kw) -> RunReport:
    from .generators import connectivity_profile

    t0 = time.time()
    red = reduce_graph(g, seed=seed)
    rep = RunReport(name, g, connectivity_profile(g))
    rep.checks["core_properties"] = list(check_core_properties(red.core))
    rep.checks["lemma_permanent"] = check_lemma_permanent(g, red.core, red)
    rep.checks["h0_edge_connectivity_ge_3"] = (red.h0.num_vertices() <= 1
                                               or hyper_edge_connectivity(red.h0) >= 3)
    path_ok, path_witness = check_lemma_path(red.core.core, red.permanent)
    rep.checks["lemma_path"] = path_ok if path_ok is not None else "skipped"
    todo = pairs if pairs is not None else itertools.permutations(g.edge_ids, 2)
    for e1, e2 in todo:
        try:
            rep.pairs.append(certify_pair(g, e1, e2, red, **kw))
        except (CertifyError, ReductionError) as exc:
            rep.pairs.append({"e1": e1, "e2": e2, "status": "error", "error": str(exc)})
    rep.timing = time.time() - t0
    return rep
