import itertools

import networkx as nx
import pytest

from quasi4 import generators
from quasi4.errors import GraphInputError, PreconditionError
from quasi4.graph import (MinorModel, build_graph, components, contract_edge,
                          find_embedding, identity_model, induced_subgraph,
                          neighborhood, torso)

from conftest import path_graph, random_connected_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_build_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert g.n == 3 and g.m == 3
    assert g.adj == ((1, 2), (0, 2), (0, 1))


def test_build_rejects_self_loop():
    with pytest.raises(GraphInputError):
        build_graph(2, [(0, 0)])


def test_build_rejects_out_of_range():
    with pytest.raises(GraphInputError):
        build_graph(2, [(0, 2)])


def test_build_counts_duplicates():
    g = build_graph(3, [(0, 1), (1, 0), (1, 2)])
    assert g.m == 2 and g.duplicate_edges == 1


def test_cube_edge_count():
    assert generators.cube().m == 12


def test_neighborhood_complete():
    g = generators.complete(4)
    assert neighborhood(g, {0}) == {1, 2, 3}


def test_neighborhood_cube_brute(cube):
    # brute force from the edge list
    for v in cube.vertices():
        expect = {u for e in cube.edges() for u in e if v in e} - {v}
        assert neighborhood(cube, {v}) == expect
        assert len(expect) == 3


def test_neighborhood_of_everything_empty(cube):
    assert neighborhood(cube, cube.vertex_set()) == frozenset()


def test_neighborhood_disjoint_from_w(cube):
    for w in [{0, 3}, {1, 2, 7}, {5}]:
        assert not neighborhood(cube, w) & w


def test_components_path():
    g = path_graph(3)
    assert components(g, {1}) == [frozenset({0}), frozenset({2})]


def test_components_cube_neighborhood(cube):
    comps = components(cube, neighborhood(cube, {0}))
    assert frozenset({0}) in comps
    assert len(comps) == 2
    assert sum(len(c) for c in comps) == 5


def test_components_partition():
    g = random_connected_graph(12, 5)
    comps = components(g, {0, 3})
    assert sum(len(c) for c in comps) == g.n - 2
    for a, b in itertools.combinations(comps, 2):
        assert not a & b
        for u in a:
            assert not g.adjset(u) & b


def fig1_graph():
    # tetrahedron core x0..x3 with three 2-attached corners
    return build_graph(7, [(0, 1), (0, 2), (0, 3),
                           (4, 1), (4, 2), (5, 2), (5, 3), (6, 3), (6, 1)])


def test_torso_fig1_is_k4():
    g = fig1_graph()
    t = torso(g, {0, 1, 2, 3})
    assert t.graph == generators.complete(4)
    assert t.to_parent == (0, 1, 2, 3)


def test_torso_whole_graph_identity(cube):
    t = torso(cube, cube.vertex_set())
    assert t.graph == cube


def test_torso_glued_k5(glued_k5):
    t = torso(glued_k5, {0, 1, 2, 3, 4})
    assert t.graph == generators.complete(5)


def test_torso_added_edges_witnessed():
    g = fig1_graph()
    x = frozenset({0, 1, 2, 3})
    t = torso(g, x)
    induced = induced_subgraph(g, x)
    for u, v in t.graph.edges():
        pu, pv = t.to_parent[u], t.to_parent[v]
        if g.has_edge(pu, pv):
            continue
        witnessed = any(pu in neighborhood(g, c) and pv in neighborhood(g, c)
                        for c in components(g, x))
        assert witnessed
    for u, v in induced.graph.edges():
        assert t.graph.has_edge(u, v)


def test_contract_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    c = contract_edge(g, 0, 1)
    assert c.graph.n == 2 and c.graph.m == 1


def test_contract_k4():
    c = contract_edge(generators.complete(4), 1, 2)
    assert c.graph == generators.complete(3)


def test_contract_cube(cube):
    c = contract_edge(cube, 0, 1)
    assert c.graph.n == 7 and c.graph.m == 11


def test_contract_absent_edge(cube):
    with pytest.raises(PreconditionError):
        contract_edge(cube, 0, 7)


def test_generate_th3():
    g = generators.th3()
    assert g.n == 7 and g.m == 15
    degs = sorted(g.degree(v) for v in g.vertices())
    assert degs == [3, 3, 3, 5, 5, 5, 6]


def test_generate_tr3():
    g = generators.tr3()
    assert g.n == 6 and g.m == 12


def test_th4_mask0_isomorphic_to_cube(cube):
    assert nx.is_isomorphic(to_nx(generators.th4(0)), to_nx(cube))


def test_th4_full_minus_corners_is_k4():
    g = generators.th4(63)
    sub = induced_subgraph(g, {0, 1, 2, 3})
    assert sub.graph == generators.complete(4)


def test_th4_mask_bounds():
    with pytest.raises(GraphInputError):
        generators.th4(64)


def test_glued_k5_shape(glued_k5):
    assert glued_k5.n == 7 and glued_k5.m == 17


def test_truncated_cube_shape():
    g = generators.truncated_cube()
    assert g.n == 24 and g.m == 36
    assert all(g.degree(v) == 3 for v in g.vertices())


def test_hex_grid_sizes():
    assert generators.hex_grid(2).n == 24
    assert generators.hex_grid(3).n == 54
    # hexagonal tiling patch: degrees 2 on the boundary, 3 inside
    g = generators.hex_grid(2)
    assert sorted(set(g.degree(v) for v in g.vertices())) == [2, 3]


def test_find_embedding_k4_in_th3():
    emb = find_embedding(generators.complete(4), generators.th3())
    assert emb is not None
    for u, v in generators.complete(4).edges():
        assert generators.th3().has_edge(emb[u], emb[v])


def test_find_embedding_k5_not_in_th3():
    # exhaustive independent check: TH3 has clique number 4
    th3 = generators.th3()
    for combo in itertools.combinations(range(7), 5):
        assert not all(th3.has_edge(u, v) for u, v in itertools.combinations(combo, 2))
    assert find_embedding(generators.complete(5), th3) is None


def test_find_embedding_identity():
    tr3 = generators.tr3()
    emb = find_embedding(tr3, tr3)
    assert emb is not None


def test_find_embedding_pattern_cap():
    with pytest.raises(PreconditionError):
        find_embedding(generators.complete(3), generators.complete(9))
    find_embedding(generators.complete(3), generators.th4(0))  # 8 vertices fine


def test_minor_model_validate_identity(cube):
    assert identity_model(cube).validate() == []


def test_minor_model_validate_catches_breaks(cube):
    m = identity_model(cube)
    bad = MinorModel(host=cube, pattern=cube,
                     branch_sets=dict(m.branch_sets),
                     edge_witness=dict(m.edge_witness), faithful=True)
    bad.branch_sets[0] = frozenset({0, 7})  # 0 and 7 are antipodal: disconnected
    assert any("disconnected" in v for v in bad.validate())
