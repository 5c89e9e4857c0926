import itertools
import random

import pytest

from quasi4 import generators
from quasi4.errors import PreconditionError
from quasi4.graph import build_graph, components, neighborhood
from quasi4.mincut import (connectivity_witness, find_nondegenerate_3separator,
                           is_k_connected, leftmost_min_proper_separations,
                           min_wx_separation, pair_connectivity, split_vertices)
from quasi4.separations import separator_is_degenerate

from conftest import brute_separations, path_graph, random_connected_graph


def brute_min_wx(g, w, x):
    """Exhaustive: all (W,X)-separations, keep minimum order; return (order, Ys)."""
    best = None
    ys = []
    for y, s, z in brute_separations(g):
        if not (w <= y | s and x <= z | s):
            continue
        if best is None or len(s) < best:
            best = len(s)
            ys = [y]
        elif len(s) == best:
            ys.append(y)
    return best, ys


def test_min_wx_path():
    # S may absorb W: the order-1 cut {0} has Y = {} which is leftmost
    g = path_graph(5)
    sep = min_wx_separation(g, {0}, {4})
    assert (sep.y, sep.s, sep.z) == (frozenset(), {0}, {1, 2, 3, 4})
    # the proper variant gives the cut behind vertex 0
    got = leftmost_min_proper_separations(g, {0}, {4}, 3)
    assert [(s.y, s.s) for s in got] == [({0}, {1})]


def test_min_wx_adjacent_terminals_absorbed():
    g = generators.complete(4)
    sep = min_wx_separation(g, {0}, {1})
    assert sep.order == 1 and sep.y == frozenset()
    assert sep.s == {0}


def test_min_wx_cube_antipodal(cube):
    sep = min_wx_separation(cube, {0}, {7})
    assert sep.order == 1 and sep.s == {0} and sep.y == frozenset()


def test_min_wx_matches_brute_force():
    rng = random.Random(1)
    checked = 0
    for seed in range(12):
        g = random_connected_graph(7, seed + 100)
        for _ in range(6):
            w = frozenset(rng.sample(range(g.n), rng.randint(1, 2)))
            x = frozenset(rng.sample(range(g.n), rng.randint(1, 2)))
            order, ys = brute_min_wx(g, w, x)
            sep = min_wx_separation(g, w, x)
            assert sep.order == order
            for other_y in ys:
                assert sep.y <= other_y
            checked += 1
    assert checked == 72


def test_min_wx_limit():
    g = generators.complete(5)
    assert min_wx_separation(g, {0, 1, 2, 3}, {4, 3, 2, 1}, limit=2) is None


def test_pair_connectivity_cube(cube):
    assert pair_connectivity(cube, 0, 7) == 3
    with pytest.raises(PreconditionError):
        pair_connectivity(cube, 0, 1)


def test_split_vertices_shape():
    g = path_graph(3)
    gg, copies = split_vertices(g, [1], 3)
    assert gg.n == 6
    assert copies[1] == [1, 3, 4, 5]
    for c in copies[1]:
        assert gg.adjset(c) >= {0, 2}


def test_lmps_cube(cube):
    got = leftmost_min_proper_separations(cube, {0}, {7}, 3)
    assert len(got) == 1
    sep = got[0]
    assert sep.y == {0} and sep.s == neighborhood(cube, {0})


def test_lmps_complete_graph_none():
    g = generators.complete(4)
    assert leftmost_min_proper_separations(g, {0}, {1}, 3) == []


def test_lmps_glued_k5(glued_k5):
    got = leftmost_min_proper_separations(glued_k5, {0, 1}, {5, 6}, 3)
    assert len(got) == 1
    assert got[0].s == {2, 3, 4}
    assert got[0].y == {0, 1}


def test_lmps_all_proper_of_min_order():
    # every result is proper, of order <= k, and candidate count bound holds
    for seed in range(8):
        g = random_connected_graph(8, seed + 40)
        w, x = frozenset({0, 1}), frozenset({g.n - 1})
        got = leftmost_min_proper_separations(g, w, x, 3)
        assert len(got) <= len(w - x) * len(x - w) + 2
        for sep in got:
            assert sep.proper and sep.order <= 3
            assert sep.y & w and sep.z & x


def test_lmps_matches_brute_force():
    # leftmost minimum proper = min order among proper, then minimal Y
    for seed in range(10):
        g = random_connected_graph(7, seed + 77)
        w, x = frozenset({0}), frozenset({g.n - 1})
        proper = [(y, s, z) for y, s, z in brute_separations(g, max_order=3)
                  if w <= y | s and x <= z | s and y & w and z & x]
        got = leftmost_min_proper_separations(g, w, x, 3)
        if not proper:
            assert got == []
            continue
        best = min(len(s) for _, s, _ in proper)
        min_ys = [y for y, s, z in proper if len(s) == best]
        expected_leftmost = {y for y in min_ys
                             if not any(y2 < y for y2 in min_ys)}
        assert {sep.y for sep in got} == expected_leftmost
        assert all(sep.order == best for sep in got)


def test_is_k_connected_k4():
    g = generators.complete(4)
    assert is_k_connected(g, 3)
    assert not is_k_connected(g, 4)  # |G| = 4 is not > 4


def test_is_k_connected_cube(cube):
    assert is_k_connected(cube, 3)
    assert not is_k_connected(cube, 4)


def test_is_k_connected_th4_masks():
    for mask in range(0, 64, 7):
        assert is_k_connected(generators.th4(mask), 3)


def test_is_k_connected_matches_brute():
    for seed in range(15):
        g = random_connected_graph(7, seed)
        for k in (1, 2, 3, 4):
            brute = g.n > k and not any(
                y and z and len(s) < k for y, s, z in brute_separations(g, max_order=k - 1))
            assert is_k_connected(g, k) == brute, (seed, k)


def test_connectivity_witness_is_proper_small_cut():
    g = path_graph(6)
    wit = connectivity_witness(g, 3)
    assert wit is not None and wit.proper and wit.order < 3


def brute_nondegenerate_3separator(g):
    found = set()
    for s in itertools.combinations(range(g.n), 3):
        ss = frozenset(s)
        if len(components(g, ss)) >= 2 and not separator_is_degenerate(g, ss):
            found.add(ss)
    return found


def test_find_nd_cube_none(cube):
    assert brute_nondegenerate_3separator(cube) == set()
    assert find_nondegenerate_3separator(cube) is None


def test_find_nd_th3():
    g = generators.th3()
    expect = brute_nondegenerate_3separator(g)
    got = find_nondegenerate_3separator(g)
    assert got in expect


def test_find_nd_glued_k5(glued_k5):
    got = find_nondegenerate_3separator(glued_k5)
    assert got == {2, 3, 4}


def test_find_nd_truncated_cube():
    g = generators.truncated_cube()
    got = find_nondegenerate_3separator(g)
    assert got is not None
    assert got in brute_nondegenerate_3separator(g)


def test_find_nd_requires_3connected():
    with pytest.raises(PreconditionError, match="witness"):
        find_nondegenerate_3separator(path_graph(6))


def test_find_nd_matches_brute_random():
    import quasi4.generators as gen
    for seed in range(25):
        g = gen.random_3connected(9, 16, seed)
        expect = brute_nondegenerate_3separator(g)
        got = find_nondegenerate_3separator(g)
        if expect:
            assert got in expect, (seed, got, expect)
        else:
            assert got is None, (seed, got)


def test_random_3connected_is_3connected():
    for seed in range(6):
        g = generators.random_3connected(12, 24, seed)
        assert g.n == 12 and is_k_connected(g, 3)
