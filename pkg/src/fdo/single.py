"""Single-failure diameter oracles.

Four constructions over a common query surface (one failing vertex pair,
non-edges answered without error):

* ExactFDO    -- per-edge exact diameters, m entries.
* EccFDO      -- 2-approximate from one source's eccentricities, n-1 entries.
* SpannerFDO  -- exact on a greedy spanner, additive fallback elsewhere.
* ApproxFDO   -- (1+eps)-approximate; either an exact scan over all stored
                 shortest paths or a pivot-based scan plus additive slack,
                 with randomized or deterministic pivot selection.

All oracles are immutable after build; concurrent queries are safe.
"""
from __future__ import annotations

import math
import random

from .dso import SingleDSO
from .graph import (Graph, GraphError, INF, distances, diameter, in_tree,
                    index_edges, is_connected, resolve_pairs, sssp,
                    strong_bridges)


def _single_failure_eid(oracle, pairs):
    pairs = list(pairs)
    if len(pairs) != 1:
        raise GraphError(f"single-failure oracle queried with {len(pairs)} pairs")
    eids, _ = resolve_pairs(pairs, oracle.n, oracle.directed, oracle.edge_lookup)
    return eids[0] if eids else None


class ExactFDO:
    """Stores diam(G-e) for every edge e; non-edges answer diam(G)."""

    kind = "exact"

    def __init__(self, n, directed, edges, values, base_diam):
        self.n = n
        self.directed = directed
        self.edges = edges
        self.values = values
        self.base_diam = base_diam
        self.edge_lookup = index_edges(edges, directed)

    @property
    def m(self):
        return len(self.edges)

    def query(self, pairs):
        eid = _single_failure_eid(self, pairs)
        return self.base_diam if eid is None else self.values[eid]


def build_exact_fdo(g: Graph, dso: SingleDSO | None = None) -> ExactFDO:
    """Folklore exact oracle: initialize every entry to diam(G), then raise
    it with the replacement eccentricities of each source over its own tree
    edges (edges off a source's tree leave that source's distances intact).
    """
    if not is_connected(g):
        raise GraphError("exact FDO needs a (strongly) connected graph")
    if dso is None:
        dso = SingleDSO(g)
    base = max(max(row) for row in dso.dist)
    values = [base] * g.m
    for v in range(g.n):
        tree = dso.trees[v]
        tree_eids = {entry[1] for entry in tree.parent if entry is not None}
        for eid in tree_eids:
            ecc = max(dso.replacement_tree(v, eid).dist)
            if ecc > values[eid]:
                values[eid] = ecc
    for eid in strong_bridges(g):
        values[eid] = INF
    return ExactFDO(g.n, g.directed, list(g.edges), values, base)


def query_exact(oracle: ExactFDO, pairs):
    return oracle.query(pairs)


class EccFDO:
    """2-approximate oracle from a single source: answers twice the source
    eccentricity of G-e for tree edges, twice the base eccentricity else."""

    kind = "ecc"

    def __init__(self, n, directed, edges, source, values, fallback):
        self.n = n
        self.directed = directed
        self.edges = edges
        self.source = source
        self.values = values        # tree edge id -> 2*ecc(source, G-e)
        self.fallback = fallback    # 2*ecc(source, G)
        self.edge_lookup = index_edges(edges, directed)

    @property
    def m(self):
        return len(self.edges)

    def query(self, pairs):
        eid = _single_failure_eid(self, pairs)
        if eid is None:
            return self.fallback
        return self.values.get(eid, self.fallback)


def build_ecc_fdo(g: Graph, source=0) -> EccFDO:
    if g.directed:
        raise GraphError("eccentricity FDO requires an undirected graph")
    if not is_connected(g):
        raise GraphError("eccentricity FDO needs a connected graph")
    fallback = 2 * max(distances(g, source))
    tree = sssp(g, source)
    tree_eids = {entry[1] for entry in tree.parent if entry is not None}
    values = {eid: 2 * max(distances(g, source, {eid})) for eid in sorted(tree_eids)}
    return EccFDO(g.n, g.directed, list(g.edges), source, values, fallback)


def query_ecc(oracle: EccFDO, pairs):
    return oracle.query(pairs)


class SpannerFDO:
    """Exact diameters on the edges of a (2k-1)-spanner; all other queries
    answer diam(G) + 2(k-1)."""

    kind = "spanner"

    def __init__(self, n, directed, edges, k, values, base_diam):
        self.n = n
        self.directed = directed
        self.edges = edges
        self.k = k
        self.values = values        # spanner edge id -> diam(G-e)
        self.base_diam = base_diam
        self.fallback = base_diam + 2 * (k - 1)
        self.edge_lookup = index_edges(edges, directed)

    @property
    def m(self):
        return len(self.edges)

    def spanner_eids(self):
        return sorted(self.values)

    def query(self, pairs):
        eid = _single_failure_eid(self, pairs)
        if eid is None:
            return self.fallback
        return self.values.get(eid, self.fallback)


def _limited_bfs_dist(adj, s, t, limit):
    # distance from s to t in the adjacency dict, capped at limit+1
    if s == t:
        return 0
    seen = {s: 0}
    frontier = [s]
    d = 0
    while frontier and d < limit:
        d += 1
        nxt = []
        for u in frontier:
            for v in adj.get(u, ()):
                if v not in seen:
                    if v == t:
                        return d
                    seen[v] = d
                    nxt.append(v)
        frontier = nxt
    return limit + 1


def build_spanner_fdo(g: Graph, k: int) -> SpannerFDO:
    """Greedy spanner in edge-id order: keep an edge iff the spanner built
    so far connects its endpoints only with more than 2k-1 hops."""
    if k < 1:
        raise GraphError(f"spanner parameter must be >= 1, got {k}")
    if g.directed or g.weighted:
        raise GraphError("spanner FDO requires an undirected unweighted graph")
    if not is_connected(g):
        raise GraphError("spanner FDO needs a connected graph")
    limit = 2 * k - 1
    adj = {}
    spanner = []
    for eid, (u, v, _) in enumerate(g.edges):
        if _limited_bfs_dist(adj, u, v, limit) > limit:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
            spanner.append(eid)
    base = diameter(g)
    values = {eid: diameter(g, {eid}) for eid in spanner}
    return SpannerFDO(g.n, g.directed, list(g.edges), k, values, base)


def query_spanner(oracle: SpannerFDO, pairs):
    return oracle.query(pairs)


class ApproxFDO:
    """(1+eps)-approximate per-edge diameters.

    mode 'exact-scan' holds exact values (small additive budget); mode
    'pivot' holds pivot-scanned values plus the additive slack, infinite on
    bridges.  Non-edges answer the base diameter.
    """

    kind = "approx"

    def __init__(self, n, directed, edges, values, base_diam, epsilon, slack,
                 mode, pivots):
        self.n = n
        self.directed = directed
        self.edges = edges
        self.values = values
        self.base_diam = base_diam
        self.epsilon = epsilon
        self.slack = slack
        self.mode = mode
        self.pivots = pivots
        self.edge_lookup = index_edges(edges, directed)

    @property
    def m(self):
        return len(self.edges)

    def query(self, pairs):
        eid = _single_failure_eid(self, pairs)
        return self.base_diam if eid is None else self.values[eid]


def query_approx(oracle: ApproxFDO, pairs):
    return oracle.query(pairs)


def _scan_sources(dso, sources, values):
    # For each stored path from a scanned source, raise the entry of every
    # path edge to the replacement distance of that pair.  Edges off the
    # stored path keep their value: removing them does not change the pair's
    # distance, which the initialization to diam(G) already covers.
    for s in sources:
        tree = dso.trees[s]
        parent = tree.parent
        for t in range(dso.g.n):
            if t == s or tree.dist[t] == INF:
                continue
            v = t
            while parent[v] is not None:
                v, eid = parent[v]
                val = dso.replacement_tree(s, eid).dist[t]
                if val > values[eid]:
                    values[eid] = val


def default_scan_threshold(n: int) -> int:
    """Additive budgets up to this bound are cheap enough to scan exactly."""
    return 4 * math.ceil(math.log2(max(n, 2)))


def build_approx_fdo(g: Graph, epsilon, pivot_mode="deterministic", seed=None,
                     C=3.0, dso: SingleDSO | None = None,
                     scan_threshold=None) -> ApproxFDO:
    if epsilon <= 0:
        raise GraphError(f"epsilon must be positive, got {epsilon}")
    if g.weighted:
        raise GraphError("approximate FDO requires an unweighted graph")
    if not is_connected(g):
        raise GraphError("approximate FDO needs a strongly connected graph")
    if dso is None:
        dso = SingleDSO(g)
    base = max(max(row) for row in dso.dist)
    slack = math.floor(epsilon * base)
    if scan_threshold is None:
        scan_threshold = default_scan_threshold(g.n)

    values = [base] * g.m
    if slack <= scan_threshold:
        _scan_sources(dso, range(g.n), values)
        return ApproxFDO(g.n, g.directed, list(g.edges), values, base,
                         epsilon, slack, "exact-scan", [])

    bridges = strong_bridges(g)
    if pivot_mode == "random":
        if seed is None:
            raise GraphError("random pivot mode requires a seed")
        pivots = random_pivots(g, slack, C=C, seed=seed)
    elif pivot_mode == "deterministic":
        pivots = deterministic_pivots(g, slack, bridges=bridges)
    else:
        raise GraphError(f"unknown pivot mode {pivot_mode!r}")
    _scan_sources(dso, pivots, values)
    for eid in range(g.m):
        if eid in bridges:
            values[eid] = INF
        else:
            values[eid] += slack
    return ApproxFDO(g.n, g.directed, list(g.edges), values, base,
                     epsilon, slack, "pivot", list(pivots))


# ---------------------------------------------------------------------------
# pivot selection


def random_pivots(g: Graph, theta: int, C=3.0, seed=0):
    """Each vertex kept independently with probability min(1, C*ln(n)/theta)."""
    if theta < 1:
        raise GraphError(f"theta must be >= 1, got {theta}")
    p = min(1.0, C * math.log(max(g.n, 2)) / theta)
    rng = random.Random(seed)
    return sorted(v for v in range(g.n) if rng.random() < p)


def deterministic_pivots(g: Graph, theta: int, bridges=None):
    """Pivot set covering every surviving single-failure graph: for each
    vertex s and non-bridge edge e there is a pivot within distance theta of
    s in G-e.

    Built by hitting short prefixes of the paths toward a fixed root, both
    in the base graph and in each G-e for tree edges e; the root itself
    covers everything that stays close to it.  Sources already within the
    prefix length of the root still get their per-edge prefixes collected:
    cutting their tree edge can push them arbitrarily far from the root, so
    skipping them (tempting, since the base prefix is trivial) breaks the
    covering guarantee.
    """
    if theta < 1:
        raise GraphError(f"theta must be >= 1, got {theta}")
    if not is_connected(g):
        raise GraphError("pivot construction needs a strongly connected graph")
    prefix_len = min(theta, math.isqrt(g.n)) or 1
    root = 0
    base = in_tree(g, root)
    if bridges is None:
        bridges = strong_bridges(g)
    paths = []
    detour_trees = {}
    for s in range(g.n):
        if base.dist[s] == 0:
            continue
        verts, eids = _prefix_toward_root(base, s, prefix_len)
        if base.dist[s] > prefix_len:
            paths.append(verts)
        for eid in eids:
            if eid in bridges:
                continue
            te = detour_trees.get(eid)
            if te is None:
                te = in_tree(g, root, {eid})
                detour_trees[eid] = te
            if te.dist[s] > prefix_len:
                paths.append(_prefix_toward_root(te, s, prefix_len)[0])
    pivots = set(greedy_hitting_set(paths))
    pivots.add(root)
    return sorted(pivots)


def _prefix_toward_root(tree, s, length):
    verts = [s]
    eids = []
    v = s
    while len(eids) < length and tree.parent[v] is not None:
        v, eid = tree.parent[v]
        verts.append(v)
        eids.append(eid)
    return verts, eids


def greedy_hitting_set(paths):
    """Repeatedly pick the vertex lying on the most unhit paths (smallest id
    on ties) until every path is hit.  Counts live in a bucket queue keyed by
    the number of unhit paths, so picks and updates stay near-linear."""
    incidence = {}
    for idx, verts in enumerate(paths):
        for v in verts:
            incidence.setdefault(v, []).append(idx)
    count = {v: len(ids) for v, ids in incidence.items()}
    buckets = {}
    for v, c in count.items():
        buckets.setdefault(c, set()).add(v)
    cur_max = max(buckets) if buckets else 0
    hit = [False] * len(paths)
    remaining = len(paths)
    picked = []

    def move(v, old, new):
        buckets[old].discard(v)
        if new > 0:
            buckets.setdefault(new, set()).add(v)

    while remaining:
        while cur_max > 0 and not buckets.get(cur_max):
            cur_max -= 1
        v = min(buckets[cur_max])
        picked.append(v)
        for idx in incidence[v]:
            if hit[idx]:
                continue
            hit[idx] = True
            remaining -= 1
            for u in paths[idx]:
                c = count[u]
                count[u] = c - 1
                move(u, c, c - 1)
    return picked
