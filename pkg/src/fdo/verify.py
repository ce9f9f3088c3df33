"""Ground-truth brute force and the stretch-audit harness.

The brute-force routines recompute everything from scratch per query and
are the measurement instrument for every oracle test: an audit replays a
stream of failure sets against an oracle and checks each answer against
truth <= answer <= stretch * truth (infinity must match infinity exactly).
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .graph import DIST_EPS, Graph, INF, diameter, distances, resolve_pairs


def brute_diam(g: Graph, pairs):
    """Exact diameter of g minus the given vertex pairs (non-edges ignored),
    via n fresh shortest-path runs."""
    eids, _ = resolve_pairs(pairs, g.n, g.directed, g.edge_lookup)
    return diameter(g, frozenset(eids))


def brute_replacement(g: Graph, s, t, pairs):
    """Exact replacement distance d(s,t,F) via one shortest-path run."""
    eids, _ = resolve_pairs(pairs, g.n, g.directed, g.edge_lookup)
    return distances(g, s, frozenset(eids))[t]


@dataclass
class AuditRecord:
    failures: tuple
    answer: float
    truth: float
    ratio: float
    ok: bool


@dataclass
class AuditReport:
    oracle_kind: str
    stretch: float
    queries: int = 0
    violations: int = 0
    max_ratio: float = 0.0
    wall_s: float = 0.0
    records: list = field(default_factory=list)


def audit(oracle, g: Graph, failure_sets, stretch=1.0,
          keep_records=True) -> AuditReport:
    """Compare the oracle against brute force on every failure set.

    A query is a violation when answer < truth, answer > stretch * truth,
    or exactly one side is infinite.
    """
    if stretch < 1:
        raise ValueError(f"stretch must be >= 1, got {stretch}")
    report = AuditReport(getattr(oracle, "kind", "?"), stretch)
    t0 = time.perf_counter()
    for pairs in failure_sets:
        answer = oracle.query(pairs)
        truth = brute_diam(g, pairs)
        if truth == INF or answer == INF:
            ok = truth == answer
            ratio = 1.0 if ok else INF
        elif truth == 0:
            ok = answer == 0
            ratio = 1.0 if ok else INF
        else:
            ok = (truth - DIST_EPS <= answer <= stretch * truth + DIST_EPS)
            ratio = answer / truth
        report.queries += 1
        if not ok:
            report.violations += 1
        if ratio > report.max_ratio:
            report.max_ratio = ratio
        if keep_records:
            report.records.append(AuditRecord(tuple(pairs), answer, truth,
                                              ratio, ok))
    report.wall_s = time.perf_counter() - t0
    return report


def enumerate_failures(g: Graph, f: int, cap=100_000, samples=2000, seed=0):
    """Deterministic failure-set stream over the graph's real edges.

    Exhaustive over all subsets of size 1..f while C(m,f) stays within
    ``cap``; otherwise ``samples`` seeded uniform draws (size uniform in
    1..f, then a uniform edge subset of that size).
    """
    pairs = [(u, v) for u, v, _ in g.edges]
    m = len(pairs)
    if comb(m, f) <= cap:
        for size in range(1, f + 1):
            yield from combinations(pairs, size)
        return
    rng = random.Random(seed)
    for _ in range(samples):
        size = rng.randint(1, f)
        idxs = rng.sample(range(m), size)
        yield tuple(pairs[i] for i in sorted(idxs))
