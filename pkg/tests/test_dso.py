import random

import pytest

from fdo import (GraphError, INF, SingleDSO, build_graph, build_sampled_fdso,
                 brute_replacement, sampled_fdso_query, single_dso_query)

from conftest import small_graph_corpus


# ------------------------------------------------------------------ SingleDSO

def test_single_dso_off_path_no_recompute(c4):
    d = SingleDSO(c4)
    # stored P(0,2) is 0-1-2; edge 3-0 (id 3) is off it
    assert d.path_edges(0, 2) == [0, 1]
    assert single_dso_query(d, 0, 2, 3) == 2
    assert not d._memo


def test_single_dso_on_path(c4):
    d = SingleDSO(c4)
    assert single_dso_query(d, 0, 2, 0) == 2  # reroute 0-3-2
    assert (0, 0) in d._memo


def test_single_dso_bridge(p4):
    d = SingleDSO(p4)
    assert single_dso_query(d, 0, 3, 1) == INF


def test_single_dso_exhaustive_vs_brute():
    for g in small_graph_corpus():
        d = SingleDSO(g)
        for s in range(g.n):
            for t in range(g.n):
                for eid, (u, v, _) in enumerate(g.edges):
                    assert d.query(s, t, eid) == brute_replacement(
                        g, s, t, [(u, v)])


# ---------------------------------------------------------------- SampledFDSO

def cycle(n):
    return build_graph(n, False, [(i, (i + 1) % n) for i in range(n)])


def test_sampled_subgraph_count_formula():
    # ceil(3 * 1 * 8 * ln 8) = 50
    d = build_sampled_fdso(cycle(8), f=1, delta=1.0, C=3.0, seed=3)
    assert d.k == 50


def test_sampled_build_deterministic():
    g = cycle(8)
    d1 = build_sampled_fdso(g, f=2, delta=1.0, C=2.0, seed=9)
    d2 = build_sampled_fdso(g, f=2, delta=1.0, C=2.0, seed=9)
    assert [s[0] for s in d1.subgraphs] == [s[0] for s in d2.subgraphs]


def test_sampled_drop_lists_match_subgraphs():
    d = build_sampled_fdso(cycle(8), f=1, delta=1.0, C=1.0, seed=5)
    for eid in range(8):
        for i in range(d.k):
            assert (i in d.dropped_in[eid]) == (eid in d.subgraphs[i][0])


def test_sampled_budget_rejected():
    with pytest.raises(GraphError, match="k="):
        build_sampled_fdso(cycle(8), f=1, delta=1.0, C=3.0, seed=1,
                           max_subgraphs=10)


def test_sampled_query_c4(c4):
    from fdo import brute_replacement as brute
    d = build_sampled_fdso(c4, f=1, delta=1.0, C=3.0, seed=7)
    val, path = sampled_fdso_query(d, 0, 2, [0])
    assert val == 2 and path == [0, 3, 2]
    # no failures: min over subgraphs never undershoots, and with this many
    # subgraphs it matches the true distance under the committed seed
    for s in range(4):
        for t in range(4):
            assert d.query(s, t, [])[0] == brute(c4, s, t, [])


def test_sampled_query_bridge(p4):
    d = build_sampled_fdso(p4, f=1, delta=1.0, C=3.0, seed=7)
    assert d.query(0, 3, [1]) == (INF, None)


def test_sampled_query_too_many_failures(c4):
    d = build_sampled_fdso(c4, f=1, delta=1.0, C=1.0, seed=7)
    with pytest.raises(GraphError, match="exceeds f"):
        d.query(0, 2, [0, 1])


def test_sampled_one_sided_and_paths_genuine():
    g = build_graph(10, False, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                                (5, 6), (6, 7), (7, 8), (8, 9), (9, 0),
                                (0, 5), (2, 7), (1, 6)])
    d = build_sampled_fdso(g, f=2, delta=1.0, C=3.0, seed=21)
    rng = random.Random(99)
    for _ in range(300):
        s, t = rng.sample(range(g.n), 2)
        eids = rng.sample(range(g.m), rng.randint(0, 2))
        pairs = [g.endpoints(e) for e in eids]
        val, path = d.query(s, t, eids)
        truth = brute_replacement(g, s, t, pairs)
        assert val >= truth
        if val < INF:
            assert path[0] == s and path[-1] == t
            assert len(path) - 1 == val
            for a, b in zip(path, path[1:]):
                eid = g.edge_id(a, b)
                assert eid is not None and eid not in eids
