import itertools
import random

import pytest

from quasi4 import generators
from quasi4.graph import Graph, build_graph


def brute_separations(g: Graph, max_order=None):
    """Independent enumeration: all 3-colorings of V into (Y,S,Z) that form a
    separation, by direct definition checking. Exponential; tiny graphs only."""
    out = []
    for colors in itertools.product((0, 1, 2), repeat=g.n):
        y = frozenset(v for v in range(g.n) if colors[v] == 0)
        s = frozenset(v for v in range(g.n) if colors[v] == 1)
        z = frozenset(v for v in range(g.n) if colors[v] == 2)
        if max_order is not None and len(s) > max_order:
            continue
        if any(u in y and v in z or u in z and v in y for u, v in g.edges()):
            continue
        out.append((y, s, z))
    return out


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def random_graph(n, p, seed):
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
             if rng.random() < p]
    return build_graph(n, edges)


def random_connected_graph(n, seed):
    rng = random.Random(seed)
    edges = [(v, rng.randrange(v)) for v in range(1, n)]
    extra = int(n * rng.uniform(0.3, 1.6))
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    return build_graph(n, edges)


@pytest.fixture
def cube():
    return generators.cube()


@pytest.fixture
def glued_k5():
    return generators.glued_k5()
