"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.  All
verdicts are exact combinatorial ones, so no numeric tolerance is involved.
"""
from __future__ import annotations

import collections
import itertools
import random
import time

import networkx as nx

from lineham.certify import (
    RULE_AMOUNTS,
    check_discharging_conclusion,
    check_lemma_forb,
    check_lemma_path,
    check_obs_nontriv,
    discharge,
)
from lineham.generators import (
    enumerate_multigraphs,
    find_qualifying_instances,
    from_networkx,
    gen_fig1b,
    multigraphs_by_edges,
    random_acyclic_quasigraph,
    random_hypergraph,
    verify_qualifying_vertex_side,
)
from lineham.hypergraph import Hypergraph3, Partition
from lineham.multigraph import (
    boundary,
    check_obs_2ess,
    complete_graph,
    essential_connectivity,
    essential_connectivity_oracle,
    is_r_essential_cut,
    line_graph,
    min_r_essential_cut,
    r_essential_edge_connectivity,
    r_essential_edge_connectivity_oracle,
    vertex_connectivity,
)
from lineham.pipeline import certify_pair
from lineham.quasigraph import (
    Quasigraph,
    anticonnected_on_bruteforce,
    complement,
    connected_on,
    enumerate_hypergraphs,
    has_bad_leaf_any_roots,
    hypergraph_is_acyclic_bruteforce,
    is_acyclic,
    quotient_quasigraph,
    skeletal_search,
)
from lineham.reduction import reduce_graph
from lineham.trails import (
    check_lemma_small,
    crosscheck_preimage,
    endgame,
    ham_connected,
    ham_path_exists,
    lemma_small_bound,
    nash_williams_check,
    two_disjoint_spanning_trees,
    HAM_MAX_VERTICES,
)


def _report(num: int, title: str, ok: bool, detail: str) -> None:
    print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
    assert ok, detail


def _qualifying():
    return list(find_qualifying_instances())


def test_criterion_01_two_essential_equivalence():
    t0 = time.time()
    graphs = list(multigraphs_by_edges(7, max_multiplicity=3))
    bad = [(g, k) for g in graphs for k in range(1, 10) if not check_obs_2ess(g, k)]
    _report(1, "vertex/edge-side essential connectivity agree",
            not bad and len(graphs) > 0,
            f"{len(graphs)} multigraphs x k=1..9, {len(bad)} disagreements, {time.time() - t0:.1f}s")


def test_criterion_02_ham_connected_preimage():
    t0 = time.time()
    graphs = list(multigraphs_by_edges(8, min_edges=3))
    bad, yes = 0, 0
    for g in graphs:
        agree, lhs, _ = crosscheck_preimage(g)
        bad += not agree
        yes += lhs
    _report(2, "L(G) Hamilton-connected iff all pairs have dominating trails",
            bad == 0, f"{len(graphs)} multigraphs (3..8 edges), {yes} Hamilton-connected, "
                      f"{bad} disagreements, {time.time() - t0:.1f}s")


def test_criterion_03_spanning_trees():
    t0 = time.time()
    count, bad = 0, 0
    for g in enumerate_multigraphs(6, 12, 12):
        count += 1
        trees = two_disjoint_spanning_trees(g)
        verdict, _, _ = nash_williams_check(g)
        bad += (trees is not None) != verdict
    bound_ok = all(lemma_small_bound(p) for p in range(1, 6))
    # the bound on instances: 3-edge-connected graphs on at most 5 vertices
    small = [g for g in multigraphs_by_edges(9)
             if g.num_vertices() <= 5 and g.is_connected() and r_essential_edge_connectivity(g, 0) >= 3]
    inst_bad = sum(1 for g in small if not check_lemma_small(g)[0])
    _report(3, "spanning-tree construction matches partition minimum; small-core bound",
            bad == 0 and bound_ok and inst_bad == 0 and small,
            f"{count} multigraphs, {bad} disagreements; bound for p<=5 {bound_ok}; "
            f"{len(small)} 3-edge-connected small graphs, {inst_bad} without two trees; {time.time() - t0:.1f}s")


def _witness_ok(w) -> bool:
    sigma, p = w.sigma, w.partition
    return (is_acyclic(sigma) and not has_bad_leaf_any_roots(sigma)
            and all(connected_on(sigma, c) and anticonnected_on_bruteforce(sigma, c) for c in p.classes)
            and hypergraph_is_acyclic_bruteforce(complement(quotient_quasigraph(sigma, p))))


def test_criterion_04_skeletal_witnesses():
    t0 = time.time()
    hs = enumerate_hypergraphs(4, 6)
    fails = sum(1 for h in hs if not _witness_ok(skeletal_search(h, 1)))
    rng = random.Random(2024)
    sample = [random_hypergraph(rng.randint(5, 6), rng.randint(2, 9), rng) for _ in range(200)]
    sfails = sum(1 for h in sample if not _witness_ok(skeletal_search(h, 1)))
    _report(4, "skeletal witness for every small 3-hypergraph",
            fails == 0 and sfails == 0 and len(hs) > 0,
            f"{len(hs)} hypergraphs (<=4 vertices, <=6 hyperedges), {fails} failures; "
            f"random sample 200 at 5-6 vertices, {sfails} failures; {time.time() - t0:.1f}s")


def _counting_pool():
    return [("K4", complete_graph(4)),
            ("prism", from_networkx(nx.circular_ladder_graph(3))),
            ("K3,3", from_networkx(nx.complete_bipartite_graph(3, 3))),
            ("cube", from_networkx(nx.hypercube_graph(3)))]


def test_criterion_05_counting_certificate():
    t0 = time.time()
    runs, bad, ident_bad, total = 0, [], 0, 0
    for name, g in _counting_pool():
        red = reduce_graph(g)
        for e1, e2 in itertools.permutations(g.edge_ids, 2):
            for restricted in (False, True):
                cert = certify_pair(g, e1, e2, red, min_classes=2 if restricted else 1,
                                    require_solid=restricted)
                total += 1
                c = cert.counting
                if c is None:
                    continue
                runs += 1
                if any(v is False for v in c["verdicts"].values()):
                    bad.append((name, e1, e2))
                ident_bad += not all(c["identities"].values())
    _report(5, "counting inequalities and identities on every n>=2 run",
            runs >= 100 and not bad and ident_bad == 0,
            f"{runs} runs with n>=2 out of {total}, {len(bad)} verdict failures, "
            f"{ident_bad} identity failures, {time.time() - t0:.1f}s")


def test_criterion_06_discharging_conservation():
    t0 = time.time()
    rng = random.Random(6)
    counts = collections.Counter()
    bad = 0
    for _ in range(60):
        h = random_hypergraph(rng.randint(4, 9), rng.randint(5, 14), rng)
        ledger = discharge(h, random_acyclic_quasigraph(h, rng))
        counts.update(ledger.rule_counts())
        bad += not (ledger.conserved() and ledger.amounts_ok())
    pipeline = 0
    for _, g in _counting_pool():
        red = reduce_graph(g)
        for e1, e2 in itertools.permutations(g.edge_ids, 2):
            cert = certify_pair(g, e1, e2, red, min_classes=2, require_solid=True)
            if cert.discharging is not None:
                pipeline += 1
                bad += not (cert.discharging["conclusion"]["conserved"] and cert.discharging["amounts_ok"])
    every_rule = all(counts[r] >= 10 for r in RULE_AMOUNTS)
    _report(6, "charge conserved exactly, amounts in {1, 1/5, 1/3}",
            bad == 0 and every_rule,
            f"60 synthetic + {pipeline} pipeline runs, {bad} violations, "
            f"synthetic rule counts {dict(sorted(counts.items()))}, {time.time() - t0:.1f}s")


def test_criterion_07_fig1b():
    t0 = time.time()
    g3 = gen_fig1b(3)
    l3 = line_graph(g3)
    kappa = vertex_connectivity(l3)
    edge_side = r_essential_edge_connectivity(g3, 2)
    vertex_side = essential_connectivity(l3)
    # the witness edge cut is a genuine 2-essential cut, hence an essential vertex cut of L
    cut = min_r_essential_cut(g3, 2)
    witness_ok = (cut.size == 9 and is_r_essential_cut(g3, cut.edges, 2)
                  and boundary(g3, cut.side).edges == cut.edges)
    # exhaustive subset enumeration agrees with both polynomial routes at q=1
    g1 = gen_fig1b(1)
    l1 = line_graph(g1)
    enum_ok = (essential_connectivity_oracle(l1) == essential_connectivity(l1)
               == r_essential_edge_connectivity_oracle(g1, 2) == r_essential_edge_connectivity(g1, 2) == 3)
    no_path = not ham_path_exists(l1)
    ok = kappa == 2 and edge_side == vertex_side == 9 and witness_ok and enum_ok and no_path
    _report(7, "subdivided K4 (fig1b): L 2-connected, essential connectivity 9, q=1 has no Hamilton path",
            ok, f"q=3: kappa(L)={kappa}, edge-side={edge_side}, vertex-side={vertex_side}, "
                f"witness cut ok={witness_ok}; q=1: enumeration agrees={enum_ok}, "
                f"DP over {l1.num_vertices()} vertices says no Hamilton path={no_path}; {time.time() - t0:.1f}s")


def test_criterion_08_end_to_end():
    t0 = time.time()
    instances = _qualifying()
    pairs, fails, ham_bad, ham_checked, vside = 0, 0, 0, 0, 0
    routes = collections.Counter()
    for _, g in instances:
        vside += verify_qualifying_vertex_side(g)
        red = reduce_graph(g)
        for e1, e2 in itertools.permutations(g.edge_ids, 2):
            pairs += 1
            try:
                res = endgame(g, e1, e2, red=red)
                routes[res.route] += 1
                fails += not res.transcript["verified"]
            except Exception:
                fails += 1
        lg = line_graph(g)
        if lg.num_vertices() <= HAM_MAX_VERTICES:
            ham_checked += 1
            ham_bad += not ham_connected(lg)
    ok = len(instances) >= 5 and fails == 0 and ham_bad == 0 and vside == len(instances)
    _report(8, "verified dominating trail for every pair of every qualifying instance",
            ok, f"{len(instances)} instances (vertex side confirmed {vside}), {pairs} pairs, "
                f"{fails} failures, routes {dict(routes)}; Hamilton-connected by DP "
                f"{ham_checked - ham_bad}/{ham_checked}; {time.time() - t0:.1f}s")


def test_criterion_09_class_bounds():
    t0 = time.time()
    runs, s4_bad, n_bad, n2, s2_bad = 0, 0, 0, 0, 0
    sizes = collections.Counter()
    for _, g in _qualifying():
        red = reduce_graph(g)
        if red.core.core.num_vertices() < 6:
            continue
        for e1, e2 in itertools.permutations(g.edge_ids, 2):
            cert = certify_pair(g, e1, e2, red)
            if cert.status != "ok":
                continue
            runs += 1
            sizes[cert.n] += 1
            s4_bad += cert.n > 4
            n_bad += cert.n > 2
            if cert.n == 2:
                n2 += 1
                s2_bad += not cert.s2["ok"]
    _report(9, "|S| <= 4 and n <= 2, two-class structure when n = 2",
            runs > 0 and s4_bad == 0 and n_bad == 0 and s2_bad == 0,
            f"{runs} runs on cores with >= 6 vertices, class counts {dict(sizes)}, "
            f"{s4_bad} with |S| > 4, {n_bad} with n > 2, {n2} runs with n=2 ({s2_bad} failing the structure check); "
            f"{time.time() - t0:.1f}s")


def test_criterion_10_negative_controls():
    path_ok, _ = check_lemma_path(from_networkx(nx.hypercube_graph(3)))
    h = Hypergraph3(range(4), {0: (0, 1), 1: (0, 2), 2: (0, 3, 1)})
    forb_ok, _ = check_lemma_forb(h)
    prism = from_networkx(nx.circular_ladder_graph(3))
    red = reduce_graph(prism)
    vs = sorted(red.h0.vertices)
    nontriv_fails = any(
        not check_obs_nontriv(red, Partition.of([{a, b}] + [{v} for v in vs if v not in (a, b)]))[0]
        for a, b in itertools.combinations(vs, 2))
    concl = check_discharging_conclusion(discharge(h, Quasigraph(h, {0: {0, 1}})))
    ok = path_ok is False and forb_ok is False and nontriv_fails and concl["status"] == "negative-charge"
    _report(10, "each checker rejects a violating input",
            ok, f"path checker on the cube -> {path_ok}; forbidden-configuration checker -> {forb_ok}; "
                f"nontrivial-class checker found a matching class -> {nontriv_fails}; "
                f"discharging -> {concl['status']} at {concl['negative']}")
