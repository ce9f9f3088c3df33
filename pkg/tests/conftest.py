import pytest

from fdo import build_graph


@pytest.fixture
def c4():
    return build_graph(4, False, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def p4():
    return build_graph(4, False, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def k4():
    return build_graph(4, False, [(u, v) for u in range(4)
                                  for v in range(u + 1, 4)])


@pytest.fixture
def tri():
    return build_graph(3, False, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star5():
    # center 0, leaves 1..4
    return build_graph(5, False, [(0, i) for i in range(1, 5)])


@pytest.fixture
def dicycle3():
    return build_graph(3, True, [(0, 1), (1, 2), (2, 0)])


def small_graph_corpus():
    """Connected graphs with n <= 12 for exhaustive sweeps."""
    from fdo import gen_random
    graphs = [
        build_graph(4, False, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        build_graph(4, False, [(0, 1), (1, 2), (2, 3)]),
        build_graph(5, False, [(0, i) for i in range(1, 5)]),
        build_graph(6, False, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                               (5, 0), (0, 3)]),
        build_graph(3, True, [(0, 1), (1, 2), (2, 0)]),
        build_graph(5, True, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4),
                              (4, 2), (4, 0)]),
        gen_random("er-undirected", seed=11, n=10, p=0.35),
        gen_random("er-undirected", seed=12, n=12, p=0.3),
        gen_random("er-strongly-connected-digraph", seed=13, n=9, p=0.3),
        gen_random("er-weighted", seed=14, n=10, p=0.35),
    ]
    return graphs
