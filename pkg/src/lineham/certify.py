"""Counting certificate, structural checkers and the discharging engine.

Charges are integers in units of 1/15 so that the 1/5 and 1/3 transfers are
exact and conservation is a hard equality.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

from .hypergraph import Hypergraph3, Partition, quotient
from .multigraph import Multigraph
from .quasigraph import (
    Quasigraph,
    RootedOrientation,
    is_acyclic,
    pi_star,
    quotient_quasigraph,
    rooted_orientation,
    tau_components_premise,
)

UNIT = 15
D1, D2, D3, D4 = 15, 15, 3, 5
RULE_AMOUNTS = {"D1": D1, "D2": D2, "D3": D3, "D4": D4}


class CertifyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# counting

@dataclass
class CountingReport:
    n: int
    m: int
    m2: int
    m3: int
    mbar2: int
    mbar3: int
    s_h0: int
    s_he: int
    eps: int
    m0_3: int
    mt0_2: int
    mt0_3: int
    d0: dict
    premise: bool
    verdicts: dict = field(default_factory=dict)
    identities: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(v for v in self.verdicts.values() if v is not None) and all(self.identities.values())

    def to_json(self) -> dict:
        return asdict(self)


def lift_tau(h0: Hypergraph3, s: Partition, tau: Quasigraph) -> Quasigraph:
    """tau0 in H0/S: each hyperedge keeps its id, so copy tau wherever the pair
    is still a subset of the H0 image (always, since He only shrinks hyperedges)."""
    hq, _ = quotient(h0, s)
    assignment = {}
    for hid, pair in tau.assignment.items():
        if hid in hq.hyperedges and pair <= hq.hyperedges[hid]:
            assignment[hid] = pair
    return Quasigraph(hq, assignment)


def counting_report(h0: Hypergraph3, he: Hypergraph3, s: Partition, sigma: Quasigraph) -> CountingReport:
    n = len(s)
    if n == 1:
        raise CertifyError("counting not applicable")
    if sigma.host != he:
        raise CertifyError("sigma must be a quasigraph in he")
    heq, _ = quotient(he, s)
    h0q, _ = quotient(h0, s)
    tau = quotient_quasigraph(sigma, s)
    tau0 = lift_tau(h0, s, tau)
    size = heq.size
    m = heq.num_edges()
    m2 = sum(1 for h in tau.assignment if size(h) == 2)
    m3 = sum(1 for h in tau.assignment if size(h) == 3)
    unused = [h for h in heq.hyperedges if h not in tau.assignment]
    mbar2 = sum(1 for h in unused if size(h) == 2)
    mbar3 = sum(1 for h in unused if size(h) == 3)
    s_h0, s_he = h0q.degree_sum(), heq.degree_sum()
    eps = s_h0 - s_he
    m0_3 = sum(1 for h in tau0.assignment if h0q.size(h) == 3)
    mt0_2 = len(h0q.edges_of_size(2))
    mt0_3 = len(h0q.edges_of_size(3))
    d0 = {p: h0q.degree(p) for p in h0q.vertices}
    premise = tau_components_premise(sigma, s)
    verdicts = {
        "ineq1": m2 + m3 <= n - 1,
        "ineq2": mbar2 + 2 * mbar3 <= n - 1,
        "ineq3": (m <= 2 * n - 3 - mbar3) if premise else None,
        "s_h0": s_h0 <= 4 * n - 6 + (m3 - mbar3) + eps,
        "main": sum(d - 4 for d in d0.values()) - m0_3 <= -2,
        # doubled to stay in integers: m2 + m3 <= 2n - 3 + eps/2
        "small": 2 * (mt0_2 + mt0_3) <= 4 * n - 6 + eps,
        "few": (mt0_2 + mt0_3 <= 7) if n <= 4 else None,
    }
    identities = {
        "s_he_split": s_he == 2 * (m2 + mbar2) + 3 * (m3 + mbar3),
        "s_he_m": s_he == 2 * m + m3 + mbar3,
        "eps_le_4": eps <= 4,
        "m0_3_ge_m3": m0_3 >= m3,
    }
    return CountingReport(n, m, m2, m3, mbar2, mbar3, s_h0, s_he, eps, m0_3, mt0_2, mt0_3,
                          d0, premise, verdicts, identities)


# ---------------------------------------------------------------------------
# structural checkers

def nontrivial_classes(s: Partition, red, threshold: int = 2) -> list[int]:
    """Classes X with |X+| >= threshold (X+ taken in the core)."""
    from .reduction import xhyper

    return [i for i, cls in enumerate(s.classes) if len(xhyper(red.core, red, cls)) >= threshold]


def _is_matching(g: Multigraph) -> bool:
    return all(g.degree(v) <= 1 for v in g.vertices)


def check_obs_nontriv(red, s: Partition, threshold: int = 2) -> tuple[bool, list]:
    """Every nontrivial class induces a non-matching in the core; failures listed."""
    from .reduction import xhyper

    bad = []
    for i in nontrivial_classes(s, red, threshold):
        xp = xhyper(red.core, red, s.classes[i])
        if _is_matching(red.core.core.induced(xp)):
            bad.append(sorted(s.classes[i]))
    return not bad, bad


def check_lemma_path(core: Multigraph, permanent=None) -> tuple[bool | None, tuple | None]:
    """(i) paths x1x2x3 have degree sum >= 11; (ii) no permanent degree-3 vertex
    next to a permanent vertex of degree <= 4.  ``None`` when |V| < 6."""
    if core.num_vertices() < 6:
        return None, None
    d = core.degree
    for x2 in core.vertices:
        for x1, x3 in combinations(sorted(core.neighbors(x2)), 2):
            if d(x1) + d(x2) + d(x3) < 11:
                return False, ("path", x1, x2, x3)
    perm = set(core.vertices) if permanent is None else set(permanent)
    for x in sorted(perm):
        if d(x) == 3:
            for y in sorted(core.neighbors(x)):
                if y in perm and d(y) <= 4:
                    return False, ("edge", x, y)
    return True, None


def check_lemma_forb(hq: Hypergraph3) -> tuple[bool, tuple | None]:
    d = hq.degree
    for p in hq.vertices:
        nbrs = sorted({q for h in hq.incident(p) for q in hq.hyperedges[h] if q != p})
        if d(p) == 3:
            for q in nbrs:
                if d(q) < 7:
                    return False, ("i", p, q)
        if d(p) == 4 and any(hq.size(h) == 3 for h in hq.incident(p)):
            for q in nbrs:
                if d(q) < 6:
                    return False, ("ii", p, q)
    return True, None


# ---------------------------------------------------------------------------
# discharging

@dataclass
class ChargeLedger:
    initial: dict                # ("v", P) or ("e", hid) -> units of 1/15
    final: dict
    transfers: list              # (rule, sender, receiver, units)

    def total_initial(self) -> int:
        return sum(self.initial.values())

    def total_final(self) -> int:
        return sum(self.final.values())

    def conserved(self) -> bool:
        return self.total_initial() == self.total_final()

    def rule_counts(self) -> dict:
        out = {r: 0 for r in RULE_AMOUNTS}
        for r, *_ in self.transfers:
            out[r] += 1
        return out

    def amounts_ok(self) -> bool:
        return all(RULE_AMOUNTS[r] == amt for r, _, _, amt in self.transfers)

    def negative(self) -> list:
        return sorted((k for k, v in self.final.items() if v < 0), key=repr)

    def to_json(self) -> dict:
        def key(k):
            return f"{k[0]}{k[1]}"
        return {
            "unit": "1/15",
            "initial": {key(k): v for k, v in self.initial.items()},
            "final": {key(k): v for k, v in self.final.items()},
            "transfers": [
                {"rule": r, "from": key(a), "to": key(b), "amount": str(Fraction(u, UNIT))}
                for r, a, b, u in self.transfers
            ],
        }


def discharge(hq: Hypergraph3, tau0: Quasigraph, orientation: RootedOrientation | None = None) -> ChargeLedger:
    if tau0.host != hq:
        raise CertifyError("tau0 must be a quasigraph in the given hypergraph")
    if not is_acyclic(tau0):
        raise CertifyError("tau0 is not acyclic")
    if orientation is None:
        orientation = rooted_orientation(tau0, [min(c) for c in pi_star(tau0).components()])
    assoc = orientation.association
    for p, h in assoc.items():
        if p not in hq or h not in tau0.assignment or p not in tau0.assignment[h]:
            raise CertifyError(f"association of {p} with {h} is ill-defined")
    d = hq.degree
    initial = {("v", p): (d(p) - 4) * UNIT for p in hq.vertices}
    for h in hq.hyperedges:
        initial[("e", h)] = -UNIT if (hq.size(h) == 3 and h in tau0.assignment) else 0
    v_tri = {p for p, h in assoc.items() if hq.size(h) == 3}
    v4_tri = {p for p in v_tri if d(p) == 4}
    transfers = []
    for p in hq.vertices:
        a = assoc.get(p)
        if a is not None and hq.size(a) == 3:
            transfers.append(("D1", ("v", p), ("e", a), D1))
        if a is not None and hq.size(a) == 2:
            q = orientation.head[a]
            if d(q) == 3:
                transfers.append(("D2", ("v", p), ("v", q), D2))
        for h in hq.incident(p):
            for q in sorted(hq.hyperedges[h] - {p}):
                if q in v4_tri:
                    transfers.append(("D3", ("v", p), ("v", q), D3))
                if d(q) == 3 and a != h:
                    transfers.append(("D4", ("v", p), ("v", q), D4))
    final = dict(initial)
    for _, src, dst, amt in transfers:
        final[src] -= amt
        final[dst] += amt
    return ChargeLedger(initial, final, transfers)


def check_discharging_conclusion(ledger: ChargeLedger) -> dict:
    main = ledger.total_initial() <= -2 * UNIT
    neg = ledger.negative()
    if not main:
        status = "not applicable"
    elif neg:
        status = "negative-charge"
    else:
        status = "contradiction"
    return {"status": status, "conserved": ledger.conserved(), "negative": [f"{k[0]}{k[1]}" for k in neg]}


# ---------------------------------------------------------------------------
# endgame structure

def check_prop_s2(report: CountingReport | None, red, anchored, s: Partition) -> dict:
    """n <= 2, and for n = 2 the trivial class {x} meets both k(e_i), all of size 2."""
    n = len(s)
    out = {"n_le_2": n <= 2}
    if n != 2:
        out["ok"] = out["n_le_2"]
        return out
    h0 = red.h0
    trivial = [i for i in range(n) if i not in nontrivial_classes(s, red)]
    cond = {"i": False, "ii": False, "iii": False, "iv": False}
    for i in trivial:
        (x,) = tuple(s.classes[i]) if len(s.classes[i]) == 1 else (None,)
        if x is None:
            continue
        c = {
            "i": True,
            "ii": h0.degree(x) == 3,
            "iii": x in h0.hyperedges[anchored.k1] and x in h0.hyperedges[anchored.k2],
            "iv": h0.size(anchored.k1) == 2 and h0.size(anchored.k2) == 2,
        }
        if sum(c.values()) > sum(cond.values()):
            cond = c
            out["x"] = x
    out.update(cond)
    out["ok"] = all(cond.values())
    return out
