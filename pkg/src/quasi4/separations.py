"""The separation algebra: validated (Y,S,Z) triples over a graph, meet/join,
the partial order on separations, degeneracy, bounded enumeration, and the
conversion to/from the subgraph-pair form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import PreconditionError, SizeCapExceeded
from .graph import Graph, components

ORACLE_CAP = 32


@dataclass(frozen=True)
class Separation:
    """Ordered triple (Y,S,Z) of disjoint vertex sets covering V(G) with no
    Y-Z edge. Compares and hashes structurally (the graph is carried but not
    compared)."""

    y: frozenset
    s: frozenset
    z: frozenset
    graph: Graph = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.s)

    @property
    def proper(self) -> bool:
        return bool(self.y) and bool(self.z)

    def flipped(self) -> "Separation":
        return Separation(self.z, self.s, self.y, self.graph)

    def __hash__(self):
        return hash((self.y, self.s, self.z))

    def __repr__(self):
        return (f"Separation(Y={sorted(self.y)}, S={sorted(self.s)}, "
                f"Z={sorted(self.z)})")


def make_separation(g: Graph, y, s, z) -> Separation:
    """Validate and build a separation; reports a witness edge on failure."""
    y, s, z = frozenset(y), frozenset(s), frozenset(z)
    if y & s or y & z or s & z:
        raise PreconditionError("separation parts must be pairwise disjoint")
    if y | s | z != g.vertex_set():
        raise PreconditionError("separation parts must cover the vertex set")
    for v in y:
        hit = g.adjset(v) & z
        if hit:
            w = min(hit)
            raise PreconditionError(f"edge {v}-{w} crosses from Y to Z")
    return Separation(y, s, z, g)


def meet(a: Separation, b: Separation) -> Separation:
    """(Y∪Y', (S∩Z')∪(S∩S')∪(Z∩S'), Z∩Z')."""
    if a.graph is not b.graph and a.graph != b.graph:
        raise PreconditionError("meet: separations of different graphs")
    return Separation(
        a.y | b.y,
        (a.s & b.z) | (a.s & b.s) | (a.z & b.s),
        a.z & b.z,
        a.graph,
    )


def join(a: Separation, b: Separation) -> Separation:
    """(Y∩Y', (S∩Y')∪(S∩S')∪(Y∩S'), Z∪Z')."""
    if a.graph is not b.graph and a.graph != b.graph:
        raise PreconditionError("join: separations of different graphs")
    return Separation(
        a.y & b.y,
        (a.s & b.y) | (a.s & b.s) | (a.y & b.s),
        a.z | b.z,
        a.graph,
    )


def preceq(a: Separation, b: Separation) -> bool:
    """a ⪯ b: S∪Z ⊂ S'∪Z', or S∪Z = S'∪Z' and S ⊆ S'."""
    sza, szb = a.s | a.z, b.s | b.z
    if sza < szb:
        return True
    return sza == szb and a.s <= b.s


def is_degenerate(g: Graph, sep: Separation) -> bool:
    """Proper separation with a single vertex behind an independent separator."""
    if not sep.proper:
        raise PreconditionError("is_degenerate: separation must be proper")
    if len(sep.y) != 1:
        return False
    return is_independent(g, sep.s)


def is_independent(g: Graph, s) -> bool:
    s = sorted(s)
    return not any(g.has_edge(u, v) for u, v in itertools.combinations(s, 2))


def separator_is_degenerate(g: Graph, s) -> bool:
    """Separator-level degeneracy: independent, exactly two components, one
    of them a single vertex."""
    if not is_independent(g, s):
        return False
    comps = components(g, s)
    return len(comps) == 2 and min(len(c) for c in comps) == 1


def enumerate_separations(g: Graph, k: int, cap: int = ORACLE_CAP) -> Iterator[Separation]:
    """All separations of order < k, each exactly once: every S with |S| < k,
    every 2-labelling of the components of G−S (both orientations emitted).

    Deterministic: S by (size, lexicographic), components by minimum vertex,
    labellings in binary-counter order with bit=1 meaning 'in Z'.
    """
    if k > 4:
        raise PreconditionError(f"enumerate_separations: k must be <= 4, got {k}")
    if g.n > cap:
        raise SizeCapExceeded("enumerate_separations", g.n, cap)
    verts = range(g.n)
    for size in range(min(k, g.n + 1)):
        for s in itertools.combinations(verts, size):
            ss = frozenset(s)
            comps = components(g, ss)
            r = len(comps)
            for bits in range(1 << r):
                ys, zs = [], []
                for i in range(r):
                    (zs if bits >> i & 1 else ys).append(comps[i])
                yield Separation(frozenset().union(*ys) if ys else frozenset(),
                                 ss,
                                 frozenset().union(*zs) if zs else frozenset(),
                                 g)


@dataclass(frozen=True)
class RSSeparation:
    """Separation in subgraph-pair form: A ∪ B = G with disjoint edge sets;
    order is |V(A) ∩ V(B)|."""

    a_vertices: frozenset
    a_edges: frozenset
    b_vertices: frozenset
    b_edges: frozenset
    graph: Graph = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.a_vertices & self.b_vertices)


def _validate_rs(g: Graph, rs: RSSeparation):
    all_edges = frozenset(g.edges())
    if rs.a_vertices | rs.b_vertices != g.vertex_set():
        raise PreconditionError("RS pair must cover the vertex set")
    if rs.a_edges | rs.b_edges != all_edges:
        raise PreconditionError("RS pair must cover the edge set")
    if rs.a_edges & rs.b_edges:
        raise PreconditionError("RS pair edge sets must be disjoint")
    for u, v in rs.a_edges:
        if u not in rs.a_vertices or v not in rs.a_vertices:
            raise PreconditionError(f"edge ({u},{v}) of A leaves V(A)")
    for u, v in rs.b_edges:
        if u not in rs.b_vertices or v not in rs.b_vertices:
            raise PreconditionError(f"edge ({u},{v}) of B leaves V(B)")


def rs_convert(x: Union[Separation, RSSeparation]) -> Union[RSSeparation, Separation]:
    """Separation -> canonical RS pair (edges meeting Y go to A, the rest,
    including edges inside S, to B); RS pair -> its vertex-partition image."""
    if isinstance(x, Separation):
        g = x.graph
        a_edges, b_edges = [], []
        for e in g.edges():
            (a_edges if e[0] in x.y or e[1] in x.y else b_edges).append(e)
        return RSSeparation(x.y | x.s, frozenset(a_edges),
                            x.s | x.z, frozenset(b_edges), g)
    _validate_rs(x.graph, x)
    return make_separation(
        x.graph,
        x.a_vertices - x.b_vertices,
        x.a_vertices & x.b_vertices,
        x.b_vertices - x.a_vertices,
    )
