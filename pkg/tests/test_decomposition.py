import itertools
import random

import pytest

from quasi4 import generators as gen
from quasi4.decomposition import (TreeDecomposition, biconnected_components,
                                  decompose, decompose_quasi4,
                                  triconnected_decomposition,
                                  validate_decomposition)
from quasi4.errors import PreconditionError
from quasi4.graph import build_graph
from quasi4.tangles import enumerate_tangles

from conftest import path_graph, random_connected_graph


def fig1_graph():
    return build_graph(7, [(0, 1), (0, 2), (0, 3),
                           (4, 1), (4, 2), (5, 2), (5, 3), (6, 3), (6, 1)])


def assert_valid(g, td, level=4, count=False):
    rep = validate_decomposition(g, td, level, check_tangle_count=count)
    assert rep.ok, rep.violations
    return rep


def test_quasi4_cube_single_bag(cube):
    td = decompose_quasi4(cube)
    assert len(td.bags) == 1 and td.bags[0] == cube.vertex_set()
    assert td.classes == ["quasi4"]
    assert_valid(cube, td, count=True)


def test_quasi4_glued_k5(glued_k5):
    td = decompose_quasi4(glued_k5)
    assert_valid(glued_k5, td, count=True)
    q4bags = sorted(sorted(b) for b, c in zip(td.bags, td.classes) if c == "quasi4")
    assert q4bags == [[0, 1, 2, 3, 4], [2, 3, 4, 5, 6]]
    assert td.adhesion == 3


def test_quasi4_th3_all_small_bags():
    g = gen.th3()
    td = decompose_quasi4(g)
    rep = assert_valid(g, td, count=True)
    assert all(len(b) <= 4 for b in td.bags)
    assert rep.tangle_count == 0 and rep.flagged_nodes == 0


def test_quasi4_th4_flagging():
    # all bags K4 or smaller, yet exactly one node meets the four-subset
    # neighbor condition and the oracle count is one
    g = gen.th4(63)
    td = decompose_quasi4(g)
    rep = assert_valid(g, td, count=True)
    assert all(len(b) <= 4 for b in td.bags)
    assert rep.tangle_count == 1 and rep.flagged_nodes == 1


def test_quasi4_requires_3connected():
    with pytest.raises(PreconditionError, match="3-connected"):
        decompose_quasi4(path_graph(6))


def test_quasi4_truncated_cube():
    g = gen.truncated_cube()
    td = decompose_quasi4(g)
    rep = assert_valid(g, td, count=True)
    big = [b for b, c in zip(td.bags, td.classes) if c == "quasi4"]
    assert len(big) == 1 and len(big[0]) == 12
    assert rep.tangle_count == 1


def test_quasi4_anchored_roots():
    g = gen.glued_k5()
    for anchor in [frozenset({0, 1}), frozenset({5}), frozenset({0, 2}),
                   frozenset({2, 3, 4})]:
        td = decompose_quasi4(g, anchor=anchor)
        assert anchor <= td.bags[td.root()]
        assert_valid(g, td)


def test_quasi4_deterministic(glued_k5):
    td1 = decompose_quasi4(glued_k5)
    td2 = decompose_quasi4(glued_k5)
    assert td1.bags == td2.bags and td1.parents == td2.parents


def test_biconnected_shared_vertex():
    g = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    td = biconnected_components(g)
    assert sorted(sorted(b) for b in td.bags) == [[0, 1, 2], [2, 3, 4]]
    assert_valid(g, td, level=2)


def test_biconnected_tree_graph():
    g = path_graph(4)
    td = biconnected_components(g)
    assert all(len(b) == 2 for b in td.bags)
    assert td.classes == ["K2"] * 3
    assert_valid(g, td, level=2)


def test_biconnected_2connected_single_bag(cube):
    td = biconnected_components(cube)
    assert len(td.bags) == 1
    assert_valid(cube, td, level=2)


def test_triconnected_c5_triangle_chain():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    td = triconnected_decomposition(g)
    assert all(c == "K3" for c in td.classes)
    assert len(td.bags) == 3
    assert_valid(g, td, level=3)


def test_triconnected_fig1_bags():
    g = fig1_graph()
    td = triconnected_decomposition(g)
    got = sorted(sorted(b) for b in td.bags)
    assert got == [[0, 1, 2, 3], [1, 2, 4], [1, 3, 6], [2, 3, 5]]
    assert_valid(g, td, level=3)


def test_triconnected_k4_single_bag():
    g = gen.complete(4)
    td = triconnected_decomposition(g)
    assert len(td.bags) == 1
    assert_valid(g, td, level=3)


def test_triconnected_requires_2connected():
    with pytest.raises(PreconditionError, match="2-connected"):
        triconnected_decomposition(path_graph(5))


def test_decompose_fig1_level3():
    g = fig1_graph()
    td = decompose(g, 3)
    got = sorted(sorted(b) for b in td.bags)
    assert got == [[0, 1, 2, 3], [1, 2, 4], [1, 3, 6], [2, 3, 5]]
    assert_valid(g, td, level=3)


def test_decompose_disconnected_triangles():
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    td = decompose(g, 4)
    assert len(td.bags) == 2
    # stitched under an empty separator
    s, t = td.tree_edges()[0]
    assert td.bags[s] & td.bags[t] == frozenset()
    assert_valid(g, td)


def test_decompose_hex_grids():
    for radius in (2, 3):
        g = gen.hex_grid(radius)
        td = decompose(g, 4)
        rep = assert_valid(g, td)
        assert td.adhesion <= 3


def test_decompose_preserves_quasi4_layer(glued_k5):
    g = gen.glue(glued_k5, gen.complete(4), {0: 5, 1: 6})
    td = decompose(g, 4)
    assert_valid(g, td)
    q4bags = sorted(sorted(b) for b, c in zip(td.bags, td.classes) if c == "quasi4")
    assert [0, 1, 2, 3, 4] in q4bags and [2, 3, 4, 5, 6] in q4bags


def test_decompose_fuzz_random_graphs():
    for seed in range(60):
        rng = random.Random(seed)
        n = rng.randint(4, 12)
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
                 if rng.random() < rng.uniform(0.2, 0.6)]
        g = build_graph(n, edges)
        td = decompose(g, 4)
        assert_valid(g, td, count=True)


def test_decompose_fuzz_blob_chains():
    for seed in range(15):
        rng = random.Random(seed)
        g = gen.glued_k5()
        for i in range(rng.randint(1, 3)):
            blob = gen.random_3connected(8, 14, seed * 10 + i)
            if rng.random() < 0.5:
                u, v = rng.choice(list(g.edges()))
                bu, bv = rng.choice(list(blob.edges()))
                g = gen.glue(g, blob, {bu: u, bv: v})
            else:
                g = gen.glue(g, blob, {rng.randrange(blob.n): rng.randrange(g.n)})
        td = decompose(g, 4)
        assert_valid(g, td)


def test_validator_catches_corrupted_bag(glued_k5):
    td = decompose_quasi4(glued_k5)
    broken = TreeDecomposition(graph=glued_k5,
                               bags=list(td.bags), parents=list(td.parents),
                               classes=list(td.classes),
                               witnesses=list(td.witnesses))
    victim = next(i for i, b in enumerate(broken.bags) if len(b) == 5)
    broken.bags[victim] = broken.bags[victim] - {2}
    rep = validate_decomposition(glued_k5, broken, 4)
    assert not rep.ok


def test_validator_catches_wrong_class(cube):
    td = decompose_quasi4(cube)
    td.classes[0] = "K4"
    rep = validate_decomposition(cube, td, 4)
    assert not rep.ok


def test_remark_count_on_random_3connected():
    for seed in range(20):
        g = gen.random_3connected(10, 18, seed + 31)
        td = decompose_quasi4(g)
        rep = assert_valid(g, td, count=True)
        assert rep.tangle_count == rep.flagged_nodes
