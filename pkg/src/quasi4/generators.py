"""Builders for the named test graphs and for seeded random 3-connected graphs.

Named kinds (also addressable from the CLI): k{n}, cube, hex2/hex3, th3, tr3,
th4:{mask}, glued-k5, truncated-cube.
"""

from __future__ import annotations

import itertools
import random

from .errors import GraphInputError
from .graph import Graph, build_graph

# Dashed v-v edges of the 8-vertex tetrahedron-with-corners graph, in mask-bit
# order: bit i selects DASHED_EDGES[i].
DASHED_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def complete(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def cube() -> Graph:
    """The 3-dimensional cube: vertices are 3-bit strings, edges at Hamming
    distance one."""
    edges = []
    for v in range(8):
        for b in (1, 2, 4):
            if v < v ^ b:
                edges.append((v, v ^ b))
    return build_graph(8, edges)


def th3() -> Graph:
    """Tetrahedron v0..v3 with three degree-3 corners w attached to the
    vertex triples {v0,v1,v2}, {v0,v1,v3}, {v0,v2,v3}. 7 vertices, 15 edges."""
    v = [0, 1, 2, 3]
    w = [4, 5, 6]
    edges = list(itertools.combinations(v, 2))
    edges += [(w[0], v[0]), (w[0], v[1]), (w[0], v[2])]
    edges += [(w[1], v[0]), (w[1], v[1]), (w[1], v[3])]
    edges += [(w[2], v[0]), (w[2], v[2]), (w[2], v[3])]
    return build_graph(7, edges)


def tr3() -> Graph:
    """Triangle v0,v1,v2 plus w0,w1,w2 each adjacent to all three v's.
    6 vertices, 12 edges."""
    edges = list(itertools.combinations((0, 1, 2), 2))
    edges += [(w, v) for w in (3, 4, 5) for v in (0, 1, 2)]
    return build_graph(6, edges)


def th4(mask: int = 0) -> Graph:
    """Tetrahedron core v0..v3 with four degree-3 corners w0..w3, one per
    vertex triple; `mask` selects which of the six v-v edges are present.

    Solid edges: w0~{v0,v1,v2}, w1~{v0,v1,v3}, w2~{v0,v2,v3}, w3~{v1,v2,v3}.
    Vertices 0..3 are the v's, 4..7 the w's. mask=0 is isomorphic to the cube.
    """
    if not 0 <= mask < 64:
        raise GraphInputError(f"th4 mask must be in 0..63, got {mask}")
    w = [4, 5, 6, 7]
    edges = [(w[0], 0), (w[0], 1), (w[0], 2),
             (w[1], 0), (w[1], 1), (w[1], 3),
             (w[2], 0), (w[2], 2), (w[2], 3),
             (w[3], 1), (w[3], 2), (w[3], 3)]
    for i, e in enumerate(DASHED_EDGES):
        if mask >> i & 1:
            edges.append(e)
    return build_graph(8, edges)


def glue(g1: Graph, g2: Graph, ident: dict) -> Graph:
    """Disjoint union of g1 and g2 with g2-vertex v identified with
    g1-vertex ident[v]."""
    fresh = {}
    nxt = g1.n
    for v in g2.vertices():
        if v in ident:
            fresh[v] = ident[v]
        else:
            fresh[v] = nxt
            nxt += 1
    edges = list(g1.edges()) + [(fresh[u], fresh[v]) for u, v in g2.edges()]
    return build_graph(nxt, edges)


def glued_k5() -> Graph:
    """Two K5's sharing a triangle: 7 vertices, 17 edges. Shared triangle is
    {2,3,4}; private pairs {0,1} and {5,6}."""
    return glue(complete(5), complete(5), {0: 2, 1: 3, 2: 4})


def truncated_cube() -> Graph:
    """Each cube vertex expanded to a triangle; cube edges survive between
    the triangle corners they were incident to. 24 vertices, 36 edges."""
    q = cube()
    corner = {}
    nxt = 0
    for v in q.vertices():
        for u in q.adj[v]:
            corner[(v, u)] = nxt
            nxt += 1
    edges = []
    for v in q.vertices():
        cs = [corner[(v, u)] for u in q.adj[v]]
        edges.extend(itertools.combinations(cs, 2))
    for u, v in q.edges():
        edges.append((corner[(u, v)], corner[(v, u)]))
    return build_graph(nxt, edges)


_HEX_CORNERS = ((2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1))


def hex_grid(radius: int) -> Graph:
    """Hexagon-shaped patch of the hexagonal tiling with `radius` cells per
    side (radius 2: 24 vertices, radius 3: 54 vertices)."""
    if radius not in (2, 3):
        raise GraphInputError(f"hex_grid radius must be 2 or 3, got {radius}")
    cells = [(q, r) for q in range(-radius + 1, radius)
             for r in range(-radius + 1, radius)
             if abs(q + r) <= radius - 1]
    coord_id = {}
    edges = set()
    for q, r in cells:
        cx, cy = 3 * q, q + 2 * r
        ring = []
        for dx, dy in _HEX_CORNERS:
            pt = (cx + dx, cy + dy)
            if pt not in coord_id:
                coord_id[pt] = len(coord_id)
            ring.append(coord_id[pt])
        for i in range(6):
            a, b = ring[i], ring[(i + 1) % 6]
            edges.add((a, b) if a < b else (b, a))
    return build_graph(len(coord_id), sorted(edges))


def generate(kind: str, **params) -> Graph:
    """Build a named graph. Kinds: complete(n)/k{n}, cube, hex_grid(radius),
    th3, tr3, th4(mask), glued-k5, truncated-cube."""
    kind = kind.lower().replace("_", "-")
    if kind == "complete":
        return complete(params["n"])
    if kind == "cube":
        return cube()
    if kind == "hex-grid":
        return hex_grid(params["radius"])
    if kind == "th3":
        return th3()
    if kind == "tr3":
        return tr3()
    if kind == "th4":
        return th4(params.get("mask", 0))
    if kind == "glued-k5":
        return glued_k5()
    if kind == "truncated-cube":
        return truncated_cube()
    raise GraphInputError(f"unknown generator kind {kind!r}")


def by_name(name: str) -> Graph:
    """CLI-style generator lookup: k5, cube, hex2, hex3, th3, tr3, th4:21,
    glued-k5, truncated-cube."""
    name = name.lower()
    if name.startswith("k") and name[1:].isdigit():
        return complete(int(name[1:]))
    if name in ("hex2", "hex3"):
        return hex_grid(int(name[3]))
    if name.startswith("th4"):
        mask = 0
        if ":" in name:
            mask = int(name.split(":", 1)[1])
        return th4(mask)
    return generate(name)


def random_3connected(n: int, m: int, seed: int = 0) -> Graph:
    """Seeded random 3-connected graph built from K4 by random vertex splits,
    degree-3 vertex additions and edge additions (all three operations
    preserve 3-connectivity)."""
    if n < 4:
        raise GraphInputError("random_3connected needs n >= 4")
    lo = max((3 * n + 1) // 2, n + 4 if n >= 5 else 6)
    if m < lo or m > n * (n - 1) // 2:
        raise GraphInputError(
            f"m={m} out of the feasible range [{lo}, {n * (n - 1) // 2}] for n={n}")
    rng = random.Random(seed)
    adj = {v: set(range(4)) - {v} for v in range(4)}
    nv = 4
    cur_m = 6

    def add_edge(u, v):
        adj[u].add(v)
        adj[v].add(u)

    while nv < n:
        budget = m - cur_m
        rest = n - nv
        splittable = [v for v in range(nv) if len(adj[v]) >= 4]
        can_add = budget >= 3 + (rest - 1)
        if splittable and (not can_add or rng.random() < 0.6):
            v = rng.choice(splittable)
            nbrs = sorted(adj[v])
            rng.shuffle(nbrs)
            cut = rng.randint(2, len(nbrs) - 2)
            move = nbrs[cut:]
            w = nv
            nv += 1
            adj[w] = set()
            for x in move:
                adj[v].discard(x)
                adj[x].discard(v)
                add_edge(w, x)
            add_edge(v, w)
            cur_m += 1
        elif can_add:
            w = nv
            nv += 1
            adj[w] = set()
            for x in rng.sample(range(w), 3):
                add_edge(w, x)
            cur_m += 3
        else:
            # out of degree-4 vertices and too edge-poor to attach: densify
            non_edges = [(u, v) for u in range(nv) for v in range(u + 1, nv)
                         if v not in adj[u]]
            u, v = rng.choice(non_edges)
            add_edge(u, v)
            cur_m += 1
    non_edges = [(u, v) for u in range(nv) for v in range(u + 1, nv)
                 if v not in adj[u]]
    rng.shuffle(non_edges)
    for u, v in non_edges[:m - cur_m]:
        add_edge(u, v)
    return build_graph(nv, [(u, v) for u in adj for v in adj[u] if u < v])
