"""Distance sensitivity oracles backing the diameter-oracle builders.

Two flavours: an exact single-failure oracle that memoizes the rare
recomputations, and a randomized multi-failure oracle built from sampled
spanning subgraphs that reports genuine paths (never underestimating).
"""
from __future__ import annotations

import math
import random
from bisect import bisect_left

from .graph import (Graph, GraphError, INF, apsp, distances, extract_path,
                    sssp)


class SingleDSO:
    """Exact replacement distances d(s,t,{e}) for one failing edge.

    Holds the n shortest-path trees of the base graph; a query only triggers
    a fresh single-source computation when the failing edge lies on the
    stored s-t path, and that tree is memoized per (source, edge).  The memo
    is safe under concurrent insert-if-absent since recomputed values are
    identical.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.dist, self.trees = apsp(g)
        self._memo = {}

    def distance(self, s, t):
        return self.dist[s][t]

    def path_edges(self, s, t):
        """Edge ids of the stored shortest s-t path (None if unreachable)."""
        got = extract_path(self.trees[s], t)
        return None if got is None else got[1]

    def replacement_tree(self, s, eid):
        """Memoized shortest-path tree of G-e from s."""
        key = (s, eid)
        tree = self._memo.get(key)
        if tree is None:
            tree = sssp(self.g, s, {eid})
            self._memo[key] = tree
        return tree

    def query(self, s, t, eid):
        """Exact d(s,t,{e}); no recomputation when e is off the stored path."""
        if not self._on_stored_path(s, t, eid):
            return self.dist[s][t]
        return self.replacement_tree(s, eid).dist[t]

    def _on_stored_path(self, s, t, eid):
        tree = self.trees[s]
        if tree.dist[t] == INF:
            return True  # unreachable already; recompute is a no-op answer
        v = t
        while tree.parent[v] is not None:
            v, peid = tree.parent[v]
            if peid == eid:
                return True
        return False


def single_dso_query(d: SingleDSO, s, t, eid):
    return d.query(s, t, eid)


class SampledFDSO:
    """Path-reporting f-DSO over randomly sampled spanning subgraphs.

    Every reported distance is the length of a genuine path avoiding the
    queried failures, hence never below the true replacement distance; it
    matches it with high probability over the build seed.
    """

    def __init__(self, g, f, delta, C, seed, k, subgraphs, dropped_in):
        self.g = g
        self.f = f
        self.delta = delta
        self.C = C
        self.seed = seed
        self.k = k
        # per subgraph: (dropped edge-id frozenset, dist rows, parent rows)
        self.subgraphs = subgraphs
        # per edge id: ascending subgraph indices that exclude the edge
        self.dropped_in = dropped_in
        # survivor-set sizes are interesting for cost accounting, so they are
        # tracked here; they are never part of any correctness contract
        self.stats = {"queries": 0, "surviving_total": 0, "surviving_max": 0}

    def query(self, s, t, failed_eids):
        return sampled_fdso_query(self, s, t, failed_eids)

    def surviving_subgraphs(self, failed_eids):
        """Indices of subgraphs containing none of the failed edges,
        intersected smallest-list-first over the per-edge drop lists."""
        if not failed_eids:
            return list(range(self.k))
        lists = sorted((self.dropped_in[e] for e in failed_eids), key=len)
        result = lists[0]
        for other in lists[1:]:
            result = [i for i in result if _contains(other, i)]
            if not result:
                break
        return result


def _contains(sorted_list, x):
    j = bisect_left(sorted_list, x)
    return j < len(sorted_list) and sorted_list[j] == x


def build_sampled_fdso(g: Graph, f, delta=1.0, C=3.0, seed=0,
                       max_subgraphs=50_000) -> SampledFDSO:
    """Sample k = ceil(C * f * n^delta * ln n) spanning subgraphs, each edge
    dropped independently with probability n^(-delta/f), and precompute
    all-pairs distances and parent rows per subgraph.

    Subgraph i draws from its own stream derived from (seed, i) so the
    sampling is reproducible (and trivially parallelizable).
    """
    if g.directed or g.weighted:
        raise GraphError("sampled f-DSO requires an undirected unweighted graph")
    if f < 1 or delta <= 0:
        raise GraphError(f"need f >= 1 and delta > 0, got f={f}, delta={delta}")
    n, m = g.n, g.m
    k = math.ceil(C * f * (n ** delta) * math.log(n))
    if k > max_subgraphs:
        raise GraphError(f"subgraph count k={k} exceeds budget {max_subgraphs}")
    drop_p = n ** (-delta / f)
    subgraphs = []
    dropped_in = [[] for _ in range(m)]
    for i in range(k):
        rng = random.Random(seed * 2654435761 + i)
        dropped = frozenset(eid for eid in range(m) if rng.random() < drop_p)
        for eid in sorted(dropped):
            dropped_in[eid].append(i)
        dist_rows = []
        parent_rows = []
        for s in range(n):
            row = distances(g, s, dropped)
            dist_rows.append(row)
            parent_rows.append(_parent_row(g, row, dropped))
        subgraphs.append((dropped, dist_rows, parent_rows))
    return SampledFDSO(g, f, delta, C, seed, k, subgraphs, dropped_in)


def _parent_row(g, dist, dropped):
    # smallest-id parent per vertex, mirroring graph.sssp tie-breaking
    parent = [-1] * g.n
    for v in range(g.n):
        dv = dist[v]
        if dv == 0 or dv == INF:
            continue
        best = -1
        for u, eid, _ in g._out_nbrs[v]:
            if eid not in dropped and dist[u] + 1 == dv and (best < 0 or u < best):
                best = u
        parent[v] = best
    return parent


def sampled_fdso_query(d: SampledFDSO, s, t, failed_eids):
    """Minimum distance (and a realizing path as a vertex list) over all
    subgraphs avoiding the failed edges; (inf, None) when none connects."""
    failed = sorted(set(failed_eids))
    if len(failed) > d.f:
        raise GraphError(f"failure set of size {len(failed)} exceeds f={d.f}")
    surviving = d.surviving_subgraphs(failed)
    d.stats["queries"] += 1
    d.stats["surviving_total"] += len(surviving)
    if len(surviving) > d.stats["surviving_max"]:
        d.stats["surviving_max"] = len(surviving)
    best = INF
    best_i = -1
    for i in surviving:
        di = d.subgraphs[i][1][s][t]
        if di < best:
            best = di
            best_i = i
    if best == INF:
        return INF, None
    parent = d.subgraphs[best_i][2][s]
    path = [t]
    v = t
    while v != s:
        v = parent[v]
        path.append(v)
    path.reverse()
    return best, path
