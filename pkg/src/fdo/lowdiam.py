"""Exact multi-failure diameter oracle for low-diameter graphs.

For every vertex pair a tree of failure subsets is explored: each node asks
a path-reporting distance oracle for the pair's distance avoiding its
subset, then branches on the edges of the reported path.  All distances are
aggregated, maxed per subset, into one table keyed by canonical sorted
edge-id tuples; a query takes the max over the table entries of all subsets
of the queried failures (at most 2^f probes).

With the exact enumeration backend the answer equals the true diameter of
G-F; with the sampled-subgraph backend it never undershoots and matches
with high probability over the build seed.
"""
from __future__ import annotations

from itertools import combinations

from .dso import SampledFDSO, build_sampled_fdso
from .graph import (Graph, GraphError, INF, diameter, extract_path,
                    index_edges, is_connected, resolve_pairs, sssp)
from .single import build_exact_fdo


class ExactPathDSO:
    """Enumeration fallback: a fresh shortest-path tree per (source, failure
    subset), memoized.  Deterministic, exact, path-reporting."""

    def __init__(self, g: Graph, f: int):
        self.g = g
        self.f = f
        self._memo = {}

    def query(self, s, t, failed_eids):
        key = (s, tuple(sorted(failed_eids)))
        tree = self._memo.get(key)
        if tree is None:
            tree = sssp(self.g, s, frozenset(key[1]))
            self._memo[key] = tree
        got = extract_path(tree, t)
        if got is None:
            return INF, None
        return tree.dist[t], got[0]


class LowDiamFDO:
    """Subset-keyed max-distance table plus the usual edge dictionary."""

    kind = "lowdiam"
    directed = False

    def __init__(self, n, edges, f, delta, base_diam, table, backend="exact",
                 dso=None):
        self.n = n
        self.edges = edges
        self.f = f
        self.delta = delta
        self.base_diam = base_diam
        self.table = table          # sorted edge-id tuple -> distance
        self.backend = backend
        self.dso = dso              # kept for audits only, never queried here
        self.edge_lookup = index_edges(edges, False)
        self.stats = {"queries": 0, "probes": 0, "last_probes": 0}

    @property
    def m(self):
        return len(self.edges)

    def query(self, pairs):
        pairs = list(pairs)
        if len(pairs) > self.f:
            raise GraphError(
                f"too many failures: {len(pairs)} pairs, oracle has f={self.f}")
        eids, _ = resolve_pairs(pairs, self.n, False, self.edge_lookup)
        best = None
        probes = 0
        for size in range(len(eids) + 1):
            for key in combinations(eids, size):
                probes += 1
                val = self.table.get(key)
                if val is not None and (best is None or val > best):
                    best = val
        self.stats["queries"] += 1
        self.stats["probes"] += probes
        self.stats["last_probes"] = probes
        return best


def build_lowdiam_fdo(g: Graph, f: int, delta: float, backend="auto",
                      seed=None, dso_delta=None, dso_C=3.0,
                      exact_threshold=64, dedupe=True, max_subgraphs=50_000):
    """Build the oracle; f=1 falls back to the exact single-failure oracle
    (no subset machinery needed there).

    ``delta`` gates the admissible diameter, n^(delta/f)/(f+1).  The sampled
    backend may run at its own exponent ``dso_delta`` (defaults to delta):
    it trades the per-subgraph edge-drop rate against the subgraph count and
    is deliberately independent of the gate.
    """
    if g.directed or g.weighted:
        raise GraphError("low-diameter FDO requires an undirected unweighted graph")
    if not is_connected(g):
        raise GraphError("low-diameter FDO needs a connected graph")
    if f < 1:
        raise GraphError(f"failure budget must be >= 1, got {f}")
    if delta <= 0:
        raise GraphError(f"delta must be positive, got {delta}")
    if f == 1:
        return build_exact_fdo(g)

    base = diameter(g)
    bound = g.n ** (delta / f) / (f + 1)
    if base > bound:
        raise GraphError(
            f"diameter {base} exceeds the admissible bound "
            f"n^(delta/f)/(f+1) = {bound:.3f}")

    if backend == "auto":
        backend = "exact" if g.n <= exact_threshold else "sampled"
    if backend == "exact":
        dso = ExactPathDSO(g, f)
    elif backend == "sampled":
        if seed is None:
            raise GraphError("sampled backend requires a seed")
        dso = build_sampled_fdso(g, f, delta=dso_delta or delta, C=dso_C,
                                 seed=seed, max_subgraphs=max_subgraphs)
    else:
        raise GraphError(f"unknown backend {backend!r}")

    table = {}
    stats = {"nodes": 0, "max_fanout": 0}
    lookup = g.edge_lookup
    for s in range(g.n):
        for t in range(s + 1, g.n):
            stack = [()]
            visited = {()} if dedupe else None
            while stack:
                key = stack.pop()
                dist, path = dso.query(s, t, key)
                stats["nodes"] += 1
                old = table.get(key)
                if old is None or dist > old:
                    table[key] = dist
                if dist == INF or len(key) == f:
                    continue
                path_eids = [lookup[(a, b) if a < b else (b, a)]
                             for a, b in zip(path, path[1:])]
                if len(path_eids) > stats["max_fanout"]:
                    stats["max_fanout"] = len(path_eids)
                for eid in path_eids:
                    child = tuple(sorted(key + (eid,)))
                    if dedupe:
                        if child in visited:
                            continue
                        visited.add(child)
                    stack.append(child)
    oracle = LowDiamFDO(g.n, list(g.edges), f, delta, base, table,
                        backend=backend, dso=dso)
    oracle.build_stats = stats
    return oracle


def query_lowdiam(oracle, pairs):
    return oracle.query(pairs)
