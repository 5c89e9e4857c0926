import itertools

import pytest
from hypothesis import given, settings, strategies as st

from quasi4 import generators
from quasi4.errors import PreconditionError, SizeCapExceeded
from quasi4.graph import build_graph, neighborhood
from quasi4.separations import (RSSeparation, Separation, enumerate_separations,
                                is_degenerate, join, make_separation, meet,
                                preceq, rs_convert)

from conftest import brute_separations, path_graph, random_connected_graph


def test_make_separation_path():
    g = path_graph(3)
    sep = make_separation(g, {0}, {1}, {2})
    assert sep.proper and sep.order == 1


def test_make_separation_crossing_edge_rejected():
    g = path_graph(3)
    with pytest.raises(PreconditionError, match="crosses"):
        make_separation(g, {0}, set(), {1, 2})


def test_make_separation_trivial():
    g = path_graph(3)
    sep = make_separation(g, set(), set(), {0, 1, 2})
    assert not sep.proper


def test_meet_idempotent_identity():
    g = path_graph(5)
    a = make_separation(g, {0}, {1}, {2, 3, 4})
    assert meet(a, a) == a
    top = make_separation(g, set(), set(), set(range(5)))
    assert meet(a, top) == a
    assert join(a, top) == top


def test_meet_join_path_example():
    g = path_graph(5)
    a = make_separation(g, {0}, {1}, {2, 3, 4})
    b = make_separation(g, {4}, {3}, {0, 1, 2})
    got = meet(a, b)
    assert (got.y, got.s, got.z) == ({0, 4}, {1, 3}, {2})
    got = join(a, b)
    assert (got.y, got.s, got.z) == (frozenset(), frozenset(), frozenset(range(5)))


def test_preceq_examples():
    g = path_graph(5)
    a = make_separation(g, {0, 1}, {2}, {3, 4})
    b = make_separation(g, {0}, {1}, {2, 3, 4})
    assert preceq(a, b) and not preceq(b, a)
    assert preceq(a, a)


def test_preceq_incomparable():
    g = path_graph(6)
    a = make_separation(g, {3, 4, 5}, {2}, {0, 1})
    b = make_separation(g, {0, 1, 2}, {3}, {4, 5})
    assert not preceq(a, b) and not preceq(b, a)


def _random_seps(g, count, seed):
    import random
    rng = random.Random(seed)
    out = []
    n = g.n
    tries = 0
    while len(out) < count and tries < 400:
        tries += 1
        colors = [rng.randrange(3) for _ in range(n)]
        y = {v for v in range(n) if colors[v] == 0}
        s = {v for v in range(n) if colors[v] == 1}
        z = {v for v in range(n) if colors[v] == 2}
        try:
            out.append(make_separation(g, y, s, z))
        except PreconditionError:
            continue
    return out


@given(seed=st.integers(0, 1000))
@settings(max_examples=40, deadline=None)
def test_meet_join_always_valid(seed):
    g = random_connected_graph(8, seed)
    seps = _random_seps(g, 6, seed)
    for a, b in itertools.combinations(seps, 2):
        for got in (meet(a, b), join(a, b)):
            make_separation(g, got.y, got.s, got.z)  # revalidates


def test_preceq_is_literal_not_flip_based():
    # preceq follows the set-inclusion formula exactly. The tempting
    # shortcut "a <= b iff flipped(b) <= flipped(a)" (for equal orders) is
    # NOT equivalent; this pins a counterexample so nobody "simplifies" it.
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (4, 5), (0, 3), (1, 4)])
    a = make_separation(g, {0, 1, 2}, {3, 4}, {5})
    b = make_separation(g, {0, 3}, {1, 2}, {4, 5})
    assert not preceq(a, b)
    assert preceq(b.flipped(), a.flipped())


@given(seed=st.integers(0, 500))
@settings(max_examples=25, deadline=None)
def test_preceq_partial_order(seed):
    g = random_connected_graph(7, seed)
    seps = _random_seps(g, 8, seed)
    for a in seps:
        assert preceq(a, a)
    for a, b in itertools.permutations(seps, 2):
        if preceq(a, b) and preceq(b, a):
            assert a == b
    for a, b, c in itertools.permutations(seps, 3):
        if preceq(a, b) and preceq(b, c):
            assert preceq(a, c)


def test_degenerate_cube_neighborhood(cube):
    s = neighborhood(cube, {0})
    rest = cube.vertex_set() - s - {0}
    assert is_degenerate(cube, make_separation(cube, {0}, s, rest))


def test_degenerate_th3_corner_not():
    g = generators.th3()
    s = g.adjset(4)  # corner neighborhood spans tetrahedron edges
    sep = make_separation(g, {4}, s, g.vertex_set() - s - {4})
    assert not is_degenerate(g, sep)


def test_degenerate_glued_k5_not(glued_k5):
    sep = make_separation(glued_k5, {0, 1}, {2, 3, 4}, {5, 6})
    assert not is_degenerate(glued_k5, sep)


def test_degenerate_requires_proper(cube):
    sep = make_separation(cube, set(), set(), cube.vertex_set())
    with pytest.raises(PreconditionError):
        is_degenerate(cube, sep)


def test_enumerate_matches_brute_force_cube(cube):
    brute = set(brute_separations(cube, max_order=3))
    got = set()
    for sep in enumerate_separations(cube, 4):
        key = (sep.y, sep.s, sep.z)
        assert key not in got, "duplicate emitted"
        got.add(key)
    assert got == brute


def test_enumerate_matches_brute_force_small_random():
    for seed in range(4):
        g = random_connected_graph(6, seed)
        brute = set(brute_separations(g, max_order=2))
        got = {(s.y, s.s, s.z) for s in enumerate_separations(g, 3)}
        assert got == brute


def test_enumerate_k3_order1():
    g = generators.complete(3)
    seps = list(enumerate_separations(g, 1))
    assert len(seps) == 2
    assert {(s.y, s.s, s.z) for s in seps} == {
        (frozenset(), frozenset(), frozenset({0, 1, 2})),
        (frozenset({0, 1, 2}), frozenset(), frozenset()),
    }


def test_enumerate_k4_top_orders():
    g = generators.complete(4)
    seps = [s for s in enumerate_separations(g, 4) if s.order == 3]
    # each size-3 separator leaves a single vertex: two orientations
    assert len(seps) == 8
    for s in seps:
        assert len(s.y) + len(s.z) == 1


def test_enumerate_size_cap():
    g = build_graph(33, [(i, i + 1) for i in range(32)])
    with pytest.raises(SizeCapExceeded):
        list(enumerate_separations(g, 4))


def test_rs_convert_path_edge_pair():
    g = path_graph(3)
    rs = RSSeparation(frozenset({0, 1}), frozenset({(0, 1)}),
                      frozenset({1, 2}), frozenset({(1, 2)}), g)
    sep = rs_convert(rs)
    assert (sep.y, sep.s, sep.z) == ({0}, {1}, {2})


def test_rs_convert_invalid_overlap():
    g = path_graph(3)
    bad = RSSeparation(g.vertex_set(), frozenset(g.edges()),
                       g.vertex_set(), frozenset(g.edges()), g)
    with pytest.raises(PreconditionError):
        rs_convert(bad)


def test_rs_roundtrip_identity(cube):
    for sep in enumerate_separations(cube, 4):
        rs = rs_convert(sep)
        back = rs_convert(rs)
        assert back == sep
        # edges inside S land on the B side
        for u, v in rs.a_edges:
            assert u in sep.y or v in sep.y
