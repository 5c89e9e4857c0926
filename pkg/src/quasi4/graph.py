"""Immutable simple graphs with dense 0-based vertex ids, plus torsos,
contractions, minor models and a small-pattern subgraph embedder.

All set-valued arguments and results are frozensets of vertex ids; every
iteration runs in ascending id order so that downstream algorithms are
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import GraphInputError, PreconditionError

VertexSet = frozenset


class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency lists."""

    __slots__ = ("n", "adj", "m", "_adjsets", "duplicate_edges")

    def __init__(self, n: int, adj: tuple, m: int, duplicate_edges: int = 0):
        self.n = n
        self.adj = adj
        self.m = m
        self._adjsets = tuple(frozenset(a) for a in adj)
        self.duplicate_edges = duplicate_edges

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def adjset(self, v: int) -> frozenset:
        return self._adjsets[v]

    def edges(self) -> Iterator[tuple]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def vertices(self) -> range:
        return range(self.n)

    def vertex_set(self) -> frozenset:
        return frozenset(range(self.n))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple]) -> Graph:
    """Construct a canonical Graph; duplicate edges are dropped (counted),
    self-loops and out-of-range endpoints are rejected."""
    if n < 0:
        raise GraphInputError(f"vertex count must be nonnegative, got {n}")
    seen = set()
    dupes = 0
    adj = [[] for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphInputError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            dupes += 1
            continue
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj), len(seen), dupes)


def neighborhood(g: Graph, w: Iterable[int]) -> frozenset:
    """N(W): union of the neighborhoods of W's vertices, minus W itself."""
    ws = frozenset(w)
    out = set()
    for v in ws:
        out.update(g._adjsets[v])
    return frozenset(out - ws)


def components(g: Graph, removed: Iterable[int] = ()) -> list:
    """Connected components of g minus `removed`, each a frozenset, ordered
    by minimum vertex id."""
    removed = frozenset(removed)
    seen = [False] * g.n
    for v in removed:
        seen[v] = True
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        comp = [start]
        while stack:
            u = stack.pop()
            for x in g.adj[u]:
                if not seen[x]:
                    seen[x] = True
                    stack.append(x)
                    comp.append(x)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph, within: Optional[Iterable[int]] = None) -> bool:
    """Connectivity of g, or of the induced subgraph g[within]."""
    if within is None:
        if g.n == 0:
            return True
        return len(components(g)) == 1
    within = frozenset(within)
    if not within:
        return True
    seen = {min(within)}
    stack = [min(within)]
    while stack:
        u = stack.pop()
        for x in g._adjsets[u] & within:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return len(seen) == len(within)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> "Mapped":
    """g[keep] reindexed to 0..|keep|-1; the id map records original names."""
    keep_sorted = sorted(set(keep))
    index = {v: i for i, v in enumerate(keep_sorted)}
    ks = set(keep_sorted)
    edges = [(index[u], index[v]) for u, v in g.edges() if u in ks and v in ks]
    return Mapped(build_graph(len(keep_sorted), edges), tuple(keep_sorted))


@dataclass(frozen=True)
class Mapped:
    """A derived graph together with the map back to the parent's vertex names.

    to_parent[i] is the parent-graph id of the derived graph's vertex i.
    """

    graph: Graph
    to_parent: tuple

    def parent_index(self) -> dict:
        return {p: i for i, p in enumerate(self.to_parent)}

    def lift_set(self, s: Iterable[int]) -> frozenset:
        return frozenset(self.to_parent[v] for v in s)

    def push_set(self, s: Iterable[int]) -> frozenset:
        idx = self.parent_index()
        return frozenset(idx[v] for v in s if v in idx)


def torso(g: Graph, x: Iterable[int]) -> Mapped:
    """Torso of X: g[X] plus a clique over N(C) ∩ X for every component C of
    g minus X. Vertices are reindexed; the Mapped result carries the id map."""
    xs = frozenset(x)
    if not xs:
        raise PreconditionError("torso: X must be nonempty")
    order = sorted(xs)
    index = {v: i for i, v in enumerate(order)}
    edges = set()
    for u, v in g.edges():
        if u in xs and v in xs:
            edges.add((index[u], index[v]))
    for comp in components(g, xs):
        att = sorted(neighborhood(g, comp) & xs)
        for u, v in itertools.combinations(att, 2):
            edges.add((index[u], index[v]))
    return Mapped(build_graph(len(order), sorted(edges)), tuple(order))


def contract_edge(g: Graph, s1: int, s2: int) -> Mapped:
    """Contract the edge s1s2 onto s1: s2 disappears, s1 inherits its
    neighbors (deduplicated). Vertices are reindexed; id map recorded."""
    if not g.has_edge(s1, s2):
        raise PreconditionError(f"contract_edge: {s1}{s2} is not an edge")
    order = [v for v in range(g.n) if v != s2]
    index = {v: i for i, v in enumerate(order)}
    edges = set()
    for u, v in g.edges():
        a = s1 if u == s2 else u
        b = s1 if v == s2 else v
        if a == b:
            continue
        ia, ib = index[a], index[b]
        edges.add((ia, ib) if ia < ib else (ib, ia))
    return Mapped(build_graph(len(order), sorted(edges)), tuple(order))


@dataclass(frozen=True)
class MinorModel:
    """Model of `pattern` in `host`: disjoint connected branch sets plus one
    witnessing host edge per pattern edge. Faithful means every pattern
    vertex (translated to host names via pattern_names when the pattern is
    reindexed) lies in its own branch set."""

    host: Graph = field(repr=False)
    pattern: Graph = field(repr=False)
    branch_sets: dict = field(compare=False)
    edge_witness: dict = field(compare=False)
    faithful: bool = True
    pattern_names: Optional[tuple] = None  # pattern id -> host id

    def branch(self, w: int) -> frozenset:
        return self.branch_sets[w]

    def host_name(self, w: int) -> int:
        return w if self.pattern_names is None else self.pattern_names[w]

    def validate(self) -> list:
        """All violated model conditions, as human-readable strings."""
        bad = []
        host, pat = self.host, self.pattern
        vs = host.vertex_set()
        for w in pat.vertices():
            if w not in self.branch_sets:
                bad.append(f"branch set for pattern vertex {w} missing")
                continue
            mw = self.branch_sets[w]
            if not mw:
                bad.append(f"branch set of {w} empty")
            if not mw <= vs:
                bad.append(f"branch set of {w} leaves the host vertex set")
            if not is_connected(host, mw):
                bad.append(f"host-induced subgraph on branch set of {w} disconnected")
            if self.faithful and self.host_name(w) not in mw:
                bad.append(f"model marked faithful but {w} not in its own branch set")
        for w, w2 in itertools.combinations(sorted(self.branch_sets), 2):
            if self.branch_sets[w] & self.branch_sets[w2]:
                bad.append(f"branch sets of {w} and {w2} intersect")
        for f in pat.edges():
            if f not in self.edge_witness:
                bad.append(f"no witness for pattern edge {f}")
                continue
            a, b = self.edge_witness[f]
            if not host.has_edge(a, b):
                bad.append(f"witness {a}{b} for {f} is not a host edge")
                continue
            w, w2 = f
            mw, mw2 = self.branch_sets[w], self.branch_sets[w2]
            if not ((a in mw and b in mw2) or (a in mw2 and b in mw)):
                bad.append(f"witness {a}{b} does not join the branch sets of {f}")
        return bad


def identity_model(g: Graph) -> MinorModel:
    return MinorModel(
        host=g,
        pattern=g,
        branch_sets={v: frozenset((v,)) for v in g.vertices()},
        edge_witness={e: e for e in g.edges()},
        faithful=True,
    )


def contraction_model(g: Graph, contracted: Mapped, merged: dict) -> MinorModel:
    """Model of a contraction result in g. `merged` maps each pattern vertex
    (in contracted ids) to the set of g-vertices it absorbed."""
    pat = contracted.graph
    branch = {w: frozenset(merged[w]) for w in pat.vertices()}
    witness = {}
    owner = {}
    for w, s in branch.items():
        for v in s:
            owner[v] = w
    for u, v in g.edges():
        a, b = owner[u], owner[v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        witness.setdefault(key, (u, v) if a < b else (v, u))
    names = contracted.to_parent
    return MinorModel(host=g, pattern=pat, branch_sets=branch,
                      edge_witness={e: witness[e] for e in pat.edges()},
                      faithful=all(names[w] in branch[w] for w in pat.vertices()),
                      pattern_names=names)


def contract_edge_model(g: Graph, s1: int, s2: int) -> tuple:
    """(Mapped, MinorModel) for contracting s1s2 onto s1: the model realizes
    the contracted graph in g with branch set {s1, s2} at the survivor."""
    mapped = contract_edge(g, s1, s2)
    merged = {}
    for i, old in enumerate(mapped.to_parent):
        merged[i] = {old, s2} if old == s1 else {old}
    return mapped, contraction_model(g, mapped, merged)


def compose_models(outer: MinorModel, inner: MinorModel) -> MinorModel:
    """Model of inner.pattern in outer.host, given inner's host == outer's pattern."""
    if inner.host is not outer.pattern and inner.host != outer.pattern:
        raise PreconditionError("compose_models: inner host must be outer pattern")
    branch = {}
    for w in inner.pattern.vertices():
        s = set()
        for u in inner.branch_sets[w]:
            s.update(outer.branch_sets[u])
        branch[w] = frozenset(s)
    witness = {}
    for f in inner.pattern.edges():
        a, b = inner.edge_witness[f]
        key = (a, b) if a < b else (b, a)
        wa, wb = outer.edge_witness[key]
        witness[f] = (wa, wb) if (a, b) == key else (wb, wa)
    faithful = outer.faithful and inner.faithful
    if inner.pattern_names is None and outer.pattern_names is None:
        names = None
    else:
        names = tuple(outer.host_name(inner.host_name(w))
                      for w in inner.pattern.vertices())
    return MinorModel(host=outer.host, pattern=inner.pattern,
                      branch_sets=branch, edge_witness=witness, faithful=faithful,
                      pattern_names=names)


def find_embedding(g: Graph, p: Graph) -> Optional[dict]:
    """First injection V(g) -> V(p) preserving edges (ascending-id search
    order), or None. Patterns are capped at 8 vertices."""
    if p.n > 8:
        raise PreconditionError(f"find_embedding: pattern has {p.n} > 8 vertices")
    for f in _embeddings(g, p):
        return f
    return None


def _embeddings(g: Graph, p: Graph) -> Iterator[dict]:
    """All injective edge-preserving maps V(g) -> V(p), lexicographic order."""
    if g.n > p.n or g.m > p.m:
        return
    assign = {}
    used = [False] * p.n

    def extend(v):
        if v == g.n:
            yield dict(assign)
            return
        for cand in range(p.n):
            if used[cand] or g.degree(v) > p.degree(cand):
                continue
            ok = True
            for u in g.adj[v]:
                if u < v and not p.has_edge(assign[u], cand):
                    ok = False
                    break
            if ok:
                assign[v] = cand
                used[cand] = True
                yield from extend(v + 1)
                used[cand] = False
                del assign[v]

    yield from extend(0)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test for small graphs (both sides ≤ 8 vertices at
    embedding scale; falls back to degree-sequence + embedding search)."""
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(map(g.degree, g.vertices())) != sorted(map(h.degree, h.vertices())):
        return False
    for f in _embeddings(g, h):
        # injective and |V| equal: f is a bijection; need edge count match
        mapped = {(min(f[u], f[v]), max(f[u], f[v])) for u, v in g.edges()}
        if len(mapped) == h.m:
            return True
    return False
