import itertools
import math
import random

import pytest

from graphefx import Coloring, InputError, MultiGraph
from graphefx.generators import PETERSEN_EDGES


def test_parallel_edges_doubled_triangle():
    g = MultiGraph(3, [(0, 1), (0, 1), (0, 2), (1, 2)])
    assert g.parallel_edges(0, 1) == {0, 1}
    assert g.parallel_edges(1, 0) == {0, 1}
    assert g.parallel_edges(0, 2) == {2}
    assert g.parallel_edges(1, 2) == {3}


def test_parallel_edges_invalid_vertex():
    g = MultiGraph(2, [(0, 1)])
    with pytest.raises(InputError):
        g.parallel_edges(0, 5)


def test_self_loop_rejected():
    with pytest.raises(InputError):
        MultiGraph(2, [(1, 1)])


def test_neighbours():
    star = MultiGraph(4, [(0, 1), (0, 2), (0, 3)])
    assert star.neighbours(0) == {1, 2, 3}
    assert star.neighbours(1) == {0}
    lonely = MultiGraph(2, [])
    assert lonely.neighbours(0) == frozenset()
    multi = MultiGraph(2, [(0, 1), (0, 1), (0, 1)])
    assert multi.neighbours(0) == {1}


def test_bipartition_even_cycle():
    g = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.bipartition() == ({0, 2}, {1, 3})


def test_bipartition_odd_cycle_absent():
    g = MultiGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert g.bipartition() is None


def test_bipartition_ignores_parallel_edges():
    g = MultiGraph(3, [(0, 1), (0, 1), (1, 2), (1, 2)])
    assert g.bipartition() == ({0, 2}, {1})


def test_is_multitree():
    assert MultiGraph(2, [(0, 1)] * 5).is_multitree()
    assert not MultiGraph(3, [(0, 1), (1, 2), (2, 0)]).is_multitree()
    star2 = MultiGraph(4, [(0, 1), (0, 1), (0, 2), (0, 2), (0, 3), (0, 3)])
    assert star2.is_multitree()


def test_girth_petersen_is_5():
    g = MultiGraph(10, PETERSEN_EDGES)
    assert g.girth() == 5


def test_girth_triangle_and_parallel():
    assert MultiGraph(3, [(0, 1), (1, 2), (2, 0)]).girth() == 3
    assert MultiGraph(2, [(0, 1)] * 3).girth() == math.inf


def test_shortest_cycle_witness_is_a_cycle():
    g = MultiGraph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)])
    length, cycle = g.shortest_cycle()
    assert length == 4 and len(cycle) == 4
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert b in g.neighbours(a)


def test_validate_coloring():
    c4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    ok, witness = c4.validate_coloring(Coloring(colors={0: 0, 1: 1, 2: 0, 3: 1}, t=2))
    assert ok and witness is None
    tri = MultiGraph(3, [(0, 1), (1, 2), (2, 0)])
    ok, witness = tri.validate_coloring(Coloring(colors={0: 0, 1: 1, 2: 0}, t=2))
    assert not ok and witness == 2  # lowest monochromatic edge
    empty = MultiGraph(3, [])
    ok, _ = empty.validate_coloring(Coloring(colors={0: 0, 1: 0, 2: 0}, t=1))
    assert ok


def test_validate_coloring_missing_vertex():
    g = MultiGraph(2, [(0, 1)])
    with pytest.raises(InputError):
        g.validate_coloring(Coloring(colors={0: 0}, t=2))


def test_find_coloring_cycles():
    c5 = MultiGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    col = c5.find_coloring(3)
    assert col.t == 3
    ok, _ = c5.validate_coloring(col)
    assert ok
    c4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert c4.find_coloring(3).t == 2
    tri = MultiGraph(3, [(0, 1), (1, 2), (2, 0)])
    assert tri.find_coloring(2) is None


def test_find_coloring_petersen():
    g = MultiGraph(10, PETERSEN_EDGES)
    col = g.find_coloring(4)
    assert col.t == 3
    ok, _ = g.validate_coloring(col)
    assert ok


def _random_graph(rng, n, p_num, p_den, max_parallel=2):
    pairs = []
    for u, w in itertools.combinations(range(n), 2):
        if rng.randrange(p_den) < p_num:
            pairs.extend((u, w) for _ in range(rng.randint(1, max_parallel)))
    return MultiGraph(n, pairs)


def test_parallel_edge_groups_partition_edge_set():
    rng = random.Random(11)
    for _ in range(30):
        g = _random_graph(rng, rng.randint(1, 8), 1, 2)
        seen = set()
        for u in range(g.vertex_count):
            for w in range(u + 1, g.vertex_count):
                group = g.parallel_edges(u, w)
                assert group == g.parallel_edges(w, u)
                assert not (seen & group)
                seen |= group
        assert seen == set(range(g.edge_count))


def test_bipartition_agrees_with_exhaustive_two_coloring():
    # independent oracle: try all 2^n color assignments
    rng = random.Random(23)
    for _ in range(40):
        g = _random_graph(rng, rng.randint(1, 10), 1, 3)
        n = g.vertex_count
        exists = any(
            all(
                (assign >> a & 1) != (assign >> b & 1)
                for a, b in set(g.edges)
            )
            for assign in range(1 << n)
        )
        assert (g.bipartition() is not None) == exists


def test_multitree_iff_infinite_girth():
    rng = random.Random(5)
    for _ in range(40):
        g = _random_graph(rng, rng.randint(1, 9), 1, 3)
        assert g.is_multitree() == (g.girth() == math.inf)


def test_find_coloring_is_proper_when_present():
    rng = random.Random(17)
    for _ in range(30):
        g = _random_graph(rng, rng.randint(1, 9), 1, 2)
        col = g.find_coloring(4)
        if col is not None:
            ok, _ = g.validate_coloring(col)
            assert ok


def test_connected_components():
    g = MultiGraph(6, [(0, 1), (2, 3), (2, 3)])
    assert g.connected_components() == [[0, 1], [2, 3], [4], [5]]
