import pytest

from fdo import (GraphError, brute_diam, build_approx_fdo, build_ecc_fdo,
                 build_exact_fdo, build_graph, build_lowdiam_fdo,
                 build_multi_fdo, build_spanner_fdo, dumps_oracle, gen_random,
                 loads_oracle)
from fdo.verify import enumerate_failures


def oracle_suite():
    c4 = build_graph(4, False, [(0, 1), (1, 2), (2, 3), (3, 0)])
    wg = gen_random("er-weighted", seed=5, n=10, p=0.35)
    dg = build_graph(12, True, [(i, (i + 1) % 12) for i in range(12)]
                     + [(0, 6), (3, 9)])
    hub = gen_random("low-diam-hub", seed=3, n=12, p=0.1)
    return [
        (c4, build_exact_fdo(c4)),
        (wg, build_ecc_fdo(wg)),
        (c4, build_spanner_fdo(c4, 2)),
        (dg, build_approx_fdo(dg, 1.0, scan_threshold=0)),
        (wg, build_multi_fdo(wg, 2)),
        (hub, build_lowdiam_fdo(hub, 2, delta=2.0)),
    ]


def test_bit_exact_roundtrip():
    for _, oracle in oracle_suite():
        text = dumps_oracle(oracle)
        again = dumps_oracle(loads_oracle(text))
        assert text == again, oracle.kind


def test_rebuild_is_byte_identical():
    g = gen_random("er-undirected", seed=8, n=14, p=0.3)
    a = dumps_oracle(build_exact_fdo(g))
    b = dumps_oracle(build_exact_fdo(g))
    assert a == b
    hub = gen_random("low-diam-hub", seed=4, n=14, p=0.1)
    a = dumps_oracle(build_lowdiam_fdo(hub, 2, delta=2.0, backend="sampled",
                                       seed=6, dso_delta=1.0))
    b = dumps_oracle(build_lowdiam_fdo(hub, 2, delta=2.0, backend="sampled",
                                       seed=6, dso_delta=1.0))
    assert a == b


def test_loaded_oracle_answers_identically():
    for g, oracle in oracle_suite():
        loaded = loads_oracle(dumps_oracle(oracle))
        budget = getattr(oracle, "f", 1)
        for pairs in enumerate_failures(g, budget, cap=300, samples=40, seed=1):
            assert oracle.query(pairs) == loaded.query(pairs), oracle.kind
        # non-edge handling survives the roundtrip too
        nonedge = next(((u, v) for u in range(g.n) for v in range(g.n)
                        if u != v and g.edge_id(u, v) is None), None)
        if nonedge and not g.directed:
            assert oracle.query([nonedge]) == loaded.query([nonedge])


@pytest.mark.parametrize("text, msg", [
    ("garbage\n", "FDO header"),
    ("FDO exact 2 1 fmt=9 dir=0 base=1\nE 0 0 1 1\nD 0 1\n", "version"),
    ("FDO exact 2 1 fmt=1 dir=0 base=1\nD 0 1\n", "edge dictionary"),
    ("FDO exact 2 1 fmt=1 dir=0 base=1\nE 0 0 1 1\n", "missing stored"),
    ("FDO wat 2 1 fmt=1 dir=0\nE 0 0 1 1\nD 0 1\n", "unknown oracle kind"),
])
def test_loader_rejects(text, msg):
    with pytest.raises(GraphError, match=msg):
        loads_oracle(text)
