"""Graph core: immutable graphs, shortest-path trees, diameters, bridges.

Distances are plain numbers (exact ints on unit/integer weights, floats
otherwise) with ``math.inf`` for unreachable; addition saturates and
comparisons treat infinity as maximal, so no wrapper type is needed.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from heapq import heappush, heappop

INF = math.inf

# Absolute tolerance for float distance comparisons; integer-weighted
# graphs keep exact integer arithmetic and never hit this.
DIST_EPS = 1e-9


class GraphError(ValueError):
    """Malformed graph data, failure set, or violated oracle precondition."""


def dist_eq(a, b) -> bool:
    """Distance equality, tolerant for floats, with inf == inf."""
    if a == b:
        return True
    if a == INF or b == INF:
        return False
    return abs(a - b) <= DIST_EPS


def fmt_dist(x) -> str:
    """Render a distance; 'inf' for unreachable, repr-roundtrip for floats."""
    if x == INF:
        return "inf"
    if isinstance(x, float) and x.is_integer():
        x = int(x)
    return repr(x) if isinstance(x, float) else str(x)


def parse_dist(tok: str):
    if tok == "inf":
        return INF
    try:
        return int(tok)
    except ValueError:
        return float(tok)


class Graph:
    """Immutable vertex/edge structure with indexed adjacency.

    Vertices are 0..n-1, edges are 0..m-1 in construction order.  Safe for
    concurrent reads once built.  Use :func:`build_graph` to construct with
    validation.
    """

    __slots__ = ("n", "directed", "weighted", "edges", "out_adj", "in_adj",
                 "edge_lookup", "_out_nbrs", "_in_nbrs")

    def __init__(self, n, directed, edges):
        self.n = n
        self.directed = directed
        self.edges = edges  # list of (u, v, w)
        self.weighted = any(w != 1 for _, _, w in edges)
        self.out_adj = [[] for _ in range(n)]
        self.in_adj = [[] for _ in range(n)]
        self.edge_lookup = {}
        out_nbrs = [[] for _ in range(n)]
        in_nbrs = [[] for _ in range(n)]
        for eid, (u, v, w) in enumerate(edges):
            self.edge_lookup[pair_key(u, v, directed)] = eid
            self.out_adj[u].append(eid)
            out_nbrs[u].append((v, eid, w))
            if directed:
                self.in_adj[v].append(eid)
                in_nbrs[v].append((u, eid, w))
            else:
                self.out_adj[v].append(eid)
                out_nbrs[v].append((u, eid, w))
        self._out_nbrs = out_nbrs
        self._in_nbrs = in_nbrs if directed else out_nbrs
        if not directed:
            self.in_adj = self.out_adj

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u, v):
        """Edge id for the pair, or None if the pair is a non-edge."""
        return self.edge_lookup.get(pair_key(u, v, self.directed))

    def endpoints(self, eid):
        u, v, _ = self.edges[eid]
        return u, v

    def weight(self, eid):
        return self.edges[eid][2]

    def __repr__(self):
        kind = "digraph" if self.directed else "graph"
        return f"Graph({kind}, n={self.n}, m={self.m})"


def pair_key(u, v, directed):
    if directed or u < v:
        return (u, v)
    return (v, u)


def build_graph(n, directed, edge_list) -> Graph:
    """Validate an edge list and build the graph.

    Entries are (u, v) or (u, v, w); missing weights default to 1.  Rejects
    self-loops, duplicate pairs, negative weights, and out-of-range ids,
    naming the offending entry.
    """
    if n < 1:
        raise GraphError(f"vertex count must be positive, got {n}")
    edges = []
    seen = set()
    for item in edge_list:
        if len(item) == 2:
            u, v = item
            w = 1
        else:
            u, v, w = item
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) has out-of-range endpoint (n={n})")
        if u == v:
            raise GraphError(f"self-loop ({u},{v}) not allowed")
        if w < 0:
            raise GraphError(f"edge ({u},{v}) has negative weight {w}")
        key = pair_key(u, v, directed)
        if key in seen:
            raise GraphError(f"duplicate edge pair ({u},{v})")
        seen.add(key)
        edges.append((u, v, w))
    return Graph(n, directed, edges)


# ---------------------------------------------------------------------------
# shortest paths


@dataclass
class ShortestPathTree:
    """Parent/distance structure from a source ('from') or to a root ('to').

    parent[v] is (next_vertex, edge_id) toward the source/root, None at the
    source and at unreachable vertices.
    """
    source: int
    direction: str          # 'from' | 'to'
    dist: list
    parent: list


def distances(g: Graph, source, excluded=frozenset(), reverse=False):
    """Distance row from (or, with reverse=True, to) ``source`` in g minus
    the excluded edge ids.  BFS on unit weights, Dijkstra otherwise."""
    nbrs = g._in_nbrs if reverse else g._out_nbrs
    dist = [INF] * g.n
    dist[source] = 0
    if not g.weighted:
        q = deque([source])
        while q:
            u = q.popleft()
            du = dist[u]
            for v, eid, _ in nbrs[u]:
                if dist[v] == INF and eid not in excluded:
                    dist[v] = du + 1
                    q.append(v)
        return dist
    heap = [(0, source)]
    while heap:
        du, u = heappop(heap)
        if du > dist[u]:
            continue
        for v, eid, w in nbrs[u]:
            if eid in excluded:
                continue
            dv = du + w
            if dv < dist[v]:
                dist[v] = dv
                heappush(heap, (dv, v))
    return dist


def _parents_from(g, dist, excluded):
    # Among equal-distance predecessors pick the smallest vertex id, which
    # makes every tree (and everything built on top) deterministic.
    parent = [None] * g.n
    in_nbrs = g._in_nbrs
    for v in range(g.n):
        dv = dist[v]
        if dv == 0 or dv == INF:
            continue
        best = None
        for u, eid, w in in_nbrs[v]:
            if eid not in excluded and dist_eq(dist[u] + w, dv):
                if best is None or u < best[0]:
                    best = (u, eid)
        parent[v] = best
    return parent


def _parents_to(g, dist, excluded):
    parent = [None] * g.n
    out_nbrs = g._out_nbrs
    for u in range(g.n):
        du = dist[u]
        if du == 0 or du == INF:
            continue
        best = None
        for v, eid, w in out_nbrs[u]:
            if eid not in excluded and dist_eq(w + dist[v], du):
                if best is None or v < best[0]:
                    best = (v, eid)
        parent[u] = best
    return parent


def sssp(g: Graph, source, excluded=frozenset()) -> ShortestPathTree:
    """Shortest-path tree from ``source`` in g minus the excluded edge ids."""
    dist = distances(g, source, excluded)
    return ShortestPathTree(source, "from", dist, _parents_from(g, dist, excluded))


def in_tree(g: Graph, root, excluded=frozenset()) -> ShortestPathTree:
    """Tree of shortest paths TO ``root`` (edge-reversed search).  Identical
    to sssp on undirected graphs."""
    dist = distances(g, root, excluded, reverse=True)
    return ShortestPathTree(root, "to", dist, _parents_to(g, dist, excluded))


def apsp(g: Graph):
    """All-pairs distances plus the n per-source trees."""
    trees = [sssp(g, s) for s in range(g.n)]
    return [t.dist for t in trees], trees


def extract_path(tree: ShortestPathTree, endpoint):
    """Tree path between source/root and ``endpoint`` as (vertices, edge_ids).

    'from' trees give source->endpoint order, 'to' trees endpoint->root.
    Returns None when the endpoint is unreachable.
    """
    if tree.dist[endpoint] == INF:
        return None
    verts = [endpoint]
    eids = []
    v = endpoint
    while tree.parent[v] is not None:
        v, eid = tree.parent[v]
        verts.append(v)
        eids.append(eid)
    if tree.direction == "from":
        verts.reverse()
        eids.reverse()
    return verts, eids


def eccentricity(g: Graph, v, excluded=frozenset()):
    """max_t d(v,t) in g minus excluded; inf when some vertex is unreachable."""
    return max(distances(g, v, excluded))


def diameter(g: Graph, excluded=frozenset()):
    """Exact diameter of g minus excluded edge ids (inf if disconnected)."""
    best = 0
    for v in range(g.n):
        ecc = max(distances(g, v, excluded))
        if ecc > best:
            best = ecc
        if best == INF:
            break
    return best


def is_connected(g: Graph, excluded=frozenset()) -> bool:
    """Connectivity (strong connectivity for digraphs) of g minus excluded."""
    if all(d < INF for d in distances(g, 0, excluded)):
        if not g.directed:
            return True
        return all(d < INF for d in distances(g, 0, excluded, reverse=True))
    return False


def strong_bridges(g: Graph) -> set:
    """Edges whose removal disconnects (strongly, if directed) the graph.

    Brute force: drop each edge and re-test connectivity, O(m(n+m)).
    """
    if not is_connected(g):
        raise GraphError("graph must be (strongly) connected")
    return {eid for eid in range(g.m) if not is_connected(g, {eid})}


# ---------------------------------------------------------------------------
# failure sets

def index_edges(edges, directed):
    """Pair -> edge id dictionary for an (u, v, w) edge table."""
    return {pair_key(u, v, directed): eid for eid, (u, v, _) in enumerate(edges)}


def resolve_pairs(pairs, n, directed, edge_lookup):
    """Validate a failure set of vertex pairs and split it against the edge
    dictionary.  Returns (sorted edge ids, non-edge pair count); removing a
    non-edge leaves the graph unchanged, so callers just drop them."""
    seen = set()
    eids = set()
    nonedges = 0
    for u, v in pairs:
        if not (isinstance(u, int) and isinstance(v, int)
                and 0 <= u < n and 0 <= v < n):
            raise GraphError(f"pair ({u},{v}) has invalid vertex id (n={n})")
        if u == v:
            raise GraphError(f"pair ({u},{v}) is not a vertex pair")
        key = pair_key(u, v, directed)
        if key in seen:
            raise GraphError(f"duplicate pair ({u},{v}) in failure set")
        seen.add(key)
        eid = edge_lookup.get(key)
        if eid is None:
            nonedges += 1
        else:
            eids.add(eid)
    return sorted(eids), nonedges


# ---------------------------------------------------------------------------
# edge-list text format
#
# First line "n m D|U W|UW" (directed/undirected, weighted/unweighted), then
# m lines "u v" or "u v w"; '#' starts a comment.

def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty graph file")
    head = lines[0].split()
    if len(head) != 4 or head[2] not in ("D", "U") or head[3] not in ("W", "UW"):
        raise GraphError(f"bad header {lines[0]!r}, want 'n m D|U W|UW'")
    n, m = int(head[0]), int(head[1])
    directed = head[2] == "D"
    weighted = head[3] == "W"
    if len(lines) - 1 != m:
        raise GraphError(f"header says m={m} but {len(lines) - 1} edge lines found")
    edge_list = []
    for ln in lines[1:]:
        toks = ln.split()
        if weighted:
            if len(toks) != 3:
                raise GraphError(f"bad weighted edge line {ln!r}")
            edge_list.append((int(toks[0]), int(toks[1]), parse_dist(toks[2])))
        else:
            if len(toks) != 2:
                raise GraphError(f"bad edge line {ln!r}")
            edge_list.append((int(toks[0]), int(toks[1])))
    return build_graph(n, directed, edge_list)


def format_graph(g: Graph) -> str:
    head = f"{g.n} {g.m} {'D' if g.directed else 'U'} {'W' if g.weighted else 'UW'}"
    out = [head]
    for u, v, w in g.edges:
        out.append(f"{u} {v} {fmt_dist(w)}" if g.weighted else f"{u} {v}")
    return "\n".join(out) + "\n"


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: Graph, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))
