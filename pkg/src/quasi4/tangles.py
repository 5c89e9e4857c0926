"""Tangles of order at most 4: the choice-function representation, a
brute-force enumeration oracle, axiom checking, minimal elements, tangles
defined by separations, lift/project, truncation, torso tangles, k-blocks and
crossing classification.

A tangle is stored as a component-choice function: for every separator S of
order < k it remembers the component of G-S all of whose orientations point
into the tangle (for non-separating S the unique component is implicit). A
separation (Y,S,Z) is a member iff the chosen component is contained in Z;
this makes the three axioms reducible to one check over canonical triples,
which is what the oracle verifies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .errors import InvariantViolation, PreconditionError, SizeCapExceeded
from .graph import (Graph, MinorModel, components, is_connected, neighborhood,
                    torso)
from .mincut import is_k_connected, pair_connectivity
from .separations import (ORACLE_CAP, Separation, is_degenerate,
                          is_independent, make_separation, preceq)


def _threshold(k: int) -> int:
    # orientations with |Y ∪ S| at most this many vertices are forced members
    return (3 * (k - 1)) // 2


class Tangle:
    """Order-k tangle as a lazily evaluated component-choice function."""

    __slots__ = ("graph", "k", "provenance", "payload", "_resolver", "_cache")

    def __init__(self, graph: Graph, k: int, provenance: str,
                 resolver: Callable, payload: Optional[dict] = None):
        self.graph = graph
        self.k = k
        self.provenance = provenance
        self.payload = payload or {}
        self._resolver = resolver
        self._cache = {}

    def z_of(self, s: Iterable[int]) -> frozenset:
        """The chosen component's vertex set for separator S (|S| < k)."""
        s = frozenset(s)
        if len(s) >= self.k:
            raise PreconditionError(
                f"z_of: |S|={len(s)} is not below the tangle order {self.k}")
        if s in self._cache:
            return self._cache[s]
        comps = components(self.graph, s)
        if not comps:
            raise InvariantViolation("z_of: separator swallows the whole graph")
        if len(comps) == 1:
            z = comps[0]
        else:
            z = self._resolver(s, comps)
            if z not in comps:
                raise InvariantViolation("tangle resolver returned a non-component")
        self._cache[s] = z
        return z

    def y_of(self, s: Iterable[int]) -> frozenset:
        s = frozenset(s)
        return self.graph.vertex_set() - s - self.z_of(s)

    def membership(self, sep: Separation) -> bool:
        if sep.order >= self.k:
            raise PreconditionError(
                f"membership: separation order {sep.order} not below {self.k}")
        return self.z_of(sep.s) <= sep.z

    def canonical(self, s: Iterable[int]) -> Separation:
        s = frozenset(s)
        z = self.z_of(s)
        return Separation(self.graph.vertex_set() - s - z, s, z, self.graph)

    def choices(self, cap: int = ORACLE_CAP) -> dict:
        """Materialized choice map over all separating S of order < k."""
        if self.graph.n > cap:
            raise SizeCapExceeded("Tangle.choices", self.graph.n, cap)
        out = {}
        for s in _small_subsets(self.graph, self.k):
            if len(components(self.graph, s)) >= 2:
                out[s] = self.z_of(s)
        return out

    def __repr__(self):
        return f"Tangle(order={self.k}, provenance={self.provenance!r})"


def _small_subsets(g: Graph, k: int):
    for size in range(min(k, g.n + 1)):
        for s in itertools.combinations(range(g.n), size):
            yield frozenset(s)


def tangles_equal(t1: Tangle, t2: Tangle, cap: int = ORACLE_CAP) -> bool:
    if t1.graph != t2.graph or t1.k != t2.k:
        return False
    return t1.choices(cap) == t2.choices(cap)


def from_choices(g: Graph, k: int, choices: dict, provenance: str = "oracle",
                 payload: Optional[dict] = None) -> Tangle:
    def resolver(s, comps):
        try:
            return choices[s]
        except KeyError:
            raise InvariantViolation(f"no stored choice for separator {sorted(s)}")
    return Tangle(g, k, provenance, resolver, payload)


# ---------------------------------------------------------------------------
# bitmask helpers for the oracle


def _adj_masks(g: Graph) -> list:
    return [sum(1 << u for u in g.adj[v]) for v in range(g.n)]


def _mask_components(adjm: list, avail: int) -> list:
    """Component masks of the graph restricted to `avail`, by lowest bit."""
    comps = []
    rest = avail
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= adjm[b.bit_length() - 1]
            nxt &= avail & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def _mask_to_set(mask: int) -> frozenset:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return frozenset(out)


def _popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------------------
# the enumeration oracle


def enumerate_tangles(g: Graph, k: int, cap: int = ORACLE_CAP) -> list:
    """Exactly all G-tangles of order k (1 <= k <= 4), as choice functions.

    Search strategy: for every separator a component must be chosen; choices
    whose complement side is small are forced (members below the 3(k-1)/2
    threshold), a fixed choice propagates to every separator disjoint from
    the chosen component, incompatible pairs (middle intersection below k)
    are pruned, and each surviving assignment is accepted iff no canonical
    triple violates the third axiom (sufficient because arbitrary members'
    big sides contain canonical big sides, making the axiom monotone).
    """
    if not 1 <= k <= 4:
        raise PreconditionError(f"enumerate_tangles: order must be 1..4, got {k}")
    if g.n > cap:
        raise SizeCapExceeded("enumerate_tangles", g.n, cap)
    if g.n == 0:
        return []
    if len(components(g)) != 1:
        raise PreconditionError("enumerate_tangles: graph must be connected")
    n = g.n
    if n <= _threshold(k):
        return []
    full = (1 << n) - 1
    adjm = _adj_masks(g)
    thr = _threshold(k)

    # (s_mask, [allowed component masks]) for separating S, in subset order
    separators = []
    nonsep_members = []  # (u_mask,) data for the final axiom check
    edge_list = list(g.edges())
    edge_masks = [(1 << u) | (1 << v) for u, v in edge_list]

    def member_data(s_mask, z_mask):
        u = full & ~z_mask
        ecov = 0
        for j, em in enumerate(edge_masks):
            if not em & ~u:
                ecov |= 1 << j
        return (u, ecov)

    for s in _small_subsets(g, k):
        s_mask = sum(1 << v for v in s)
        comps = _mask_components(adjm, full & ~s_mask)
        if len(comps) <= 1:
            nonsep_members.append(member_data(s_mask, full & ~s_mask))
            continue
        allowed = [c for c in comps
                   if _popcount(c) + _popcount(s_mask) > thr]
        if not allowed:
            return []
        separators.append((s_mask, allowed))

    nsep = len(separators)
    all_edges_mask = (1 << len(edge_list)) - 1

    def propagate(assign, queue):
        while queue:
            i = queue.pop()
            s_i, _ = separators[i]
            c_i = assign[i]
            for j in range(nsep):
                s_j, allowed_j = separators[j]
                if j == i:
                    continue
                if assign[j] is not None:
                    # pairwise closure: middle intersection must reach k
                    c_j = assign[j]
                    if _popcount((s_i | c_i) & (s_j | c_j)) < k:
                        return False
                    continue
                if not s_j & c_i:
                    # chosen component survives S_j whole: its component is forced
                    target = None
                    for c in _mask_components(adjm, full & ~s_j):
                        if c & c_i:
                            target = c
                            break
                    if target is None or target not in allowed_j:
                        return False
                    assign[j] = target
                    queue.append(j)
                else:
                    new_allowed = [c for c in allowed_j
                                   if _popcount((s_i | c_i) & (s_j | c)) >= k]
                    if not new_allowed:
                        return False
                    if len(new_allowed) == 1:
                        assign[j] = new_allowed[0]
                        queue.append(j)
        return True

    def accepts(assign):
        members = list(nonsep_members)
        for (s_mask, _), c in zip(separators, assign):
            members.append(member_data(s_mask, c))
        members.sort(key=lambda t: _popcount(t[0]), reverse=True)
        sizes = [_popcount(u) for u, _ in members]
        nm = len(members)
        for i in range(nm):
            if sizes[i] * 3 < n:
                break
            ui, ei = members[i]
            for j in range(i, nm):
                if sizes[i] + 2 * sizes[j] < n:
                    break
                uij = ui | members[j][0]
                eij = ei | members[j][1]
                base = _popcount(uij)
                for l in range(j, nm):
                    if base + sizes[l] < n:
                        break
                    if uij | members[l][0] == full and \
                            eij | members[l][1] == all_edges_mask:
                        return False
        return True

    results = []

    def search(assign):
        try:
            i = assign.index(None)
        except ValueError:
            if accepts(assign):
                results.append(list(assign))
            return
        s_i, allowed = separators[i]
        for c in allowed:
            trial = list(assign)
            trial[i] = c
            if propagate(trial, [i]):
                search(trial)

    init = [None] * nsep
    queue = []
    for i, (s_mask, allowed) in enumerate(separators):
        if len(allowed) == 1:
            init[i] = allowed[0]
            queue.append(i)
    if propagate(init, queue):
        search(init)

    out = []
    for assign in sorted(results):
        choices = {_mask_to_set(s): _mask_to_set(c)
                   for (s, _), c in zip(separators, assign)}
        out.append(from_choices(g, k, choices, "oracle"))
    return out


def check_axioms(t: Tangle, raw_t2: bool = False, cap: int = ORACLE_CAP) -> list:
    """Violated tangle axioms, as strings (empty list = valid tangle).

    The first axiom's second triple is read as the reversed separation
    (Z,S,Y); the source text's (Z,Y,S) does not type-check as an orientation.
    The second axiom is checked over canonical triples; `raw_t2` additionally
    checks every triple of distinct member big-sides.
    """
    g = t.graph
    if g.n > cap:
        raise SizeCapExceeded("check_axioms", g.n, cap)
    bad = []
    full = (1 << g.n) - 1
    edge_list = list(g.edges())
    edge_masks = [(1 << u) | (1 << v) for u, v in edge_list]
    all_edges = (1 << len(edge_list)) - 1
    members = []
    for s in _small_subsets(g, t.k):
        comps = components(g, s)
        if not comps:
            bad.append("T1/T3: a sub-order separator covers the whole graph")
            continue
        z = t.z_of(s)
        if z not in comps:
            bad.append(f"choice for {sorted(s)} is not a component")
            continue
        if not z:
            bad.append(f"T3: empty big side at separator {sorted(s)}")
        # T1 exclusivity: for every orientation exactly one direction holds
        for comp in comps:
            sep = Separation(g.vertex_set() - s - comp, s, comp, g)
            fwd = t.membership(sep)
            rev = t.membership(sep.flipped())
            if fwd == rev:
                bad.append(f"T1: separator {sorted(s)} orientation not exclusive")
        zm = sum(1 << v for v in z)
        u = full & ~zm
        ec = 0
        for j, em in enumerate(edge_masks):
            if not em & ~u:
                ec |= 1 << j
        members.append((u, ec, s))

    for (u1, e1, s1), (u2, e2, s2), (u3, e3, s3) in \
            itertools.combinations_with_replacement(members, 3):
        if u1 | u2 | u3 == full and e1 | e2 | e3 == all_edges:
            bad.append(f"T2: canonical triple {sorted(s1)},{sorted(s2)},{sorted(s3)}"
                       " covers the graph")

    if raw_t2:
        from .separations import enumerate_separations
        zmasks = set()
        for sep in enumerate_separations(g, t.k, cap=cap):
            if t.membership(sep):
                zmasks.add(sum(1 << v for v in sep.z))
        raw = []
        for zm in zmasks:
            u = full & ~zm
            ec = 0
            for j, em in enumerate(edge_masks):
                if not em & ~u:
                    ec |= 1 << j
            raw.append((u, ec))
        for (u1, e1), (u2, e2), (u3, e3) in \
                itertools.combinations_with_replacement(raw, 3):
            if u1 | u2 | u3 == full and e1 | e2 | e3 == all_edges:
                bad.append("T2(raw): member triple covers the graph")
                break
    return bad


# ---------------------------------------------------------------------------
# minimal elements


def minimal_separations(t: Tangle, cap: int = ORACLE_CAP) -> list:
    """All minimal members of the tangle, each in canonical (Y, S, Z(S))
    form; the trivial (0,0,V) when the graph has no sub-order separator."""
    g = t.graph
    if g.n > cap:
        raise SizeCapExceeded("minimal_separations", g.n, cap)
    survivors = []
    for s in _small_subsets(g, t.k):
        if len(components(g, s)) < 2:
            continue
        z = t.z_of(s)
        if neighborhood(g, z) != s:
            continue
        survivors.append(t.canonical(s))
    if not survivors:
        return [Separation(frozenset(), frozenset(), g.vertex_set(), g)]
    out = [a for a in survivors
           if not any(b != a and preceq(b, a) for b in survivors)]
    out.sort(key=lambda sep: (sorted(sep.s), sorted(sep.z)))
    return out


def nd_minimal_separations(t: Tangle, cap: int = ORACLE_CAP) -> list:
    """The non-degenerate members of T_min (oracle-scale path)."""
    out = []
    for sep in minimal_separations(t, cap):
        if sep.proper and not is_degenerate(t.graph, sep):
            out.append(sep)
    return out


# ---------------------------------------------------------------------------
# crossing classification


@dataclass(frozen=True)
class CrossClass:
    kind: str  # "orthogonal" | "crossing"
    crossedge: Optional[tuple] = None  # (s1, s2): s1 in S_a, s2 in S_b

    @property
    def crossing(self) -> bool:
        return self.kind == "crossing"


def classify_pair(g: Graph, a: Separation, b: Separation) -> CrossClass:
    """Orthogonal or crossing-with-crossedge; anything else is a hard
    invariant failure (it would falsify the crossing dichotomy for distinct
    minimal separations of an order-4 tangle on a 3-connected graph)."""
    if a == b:
        raise PreconditionError("classify_pair: separations must be distinct")
    if (a.y | a.s) & (b.y | b.s) <= a.s & b.s:
        return CrossClass("orthogonal")
    if a.y & b.y or a.s & b.s:
        raise InvariantViolation("crossing-lemma: non-orthogonal pair with "
                                 "overlapping small sides")
    sa = a.s & b.y
    sb = b.s & a.y
    if len(sa) != 1 or len(sb) != 1:
        raise InvariantViolation("crossing-lemma: crossedge endpoints not unique")
    s1, s2 = next(iter(sa)), next(iter(sb))
    if not g.has_edge(s1, s2):
        raise InvariantViolation("crossing-lemma: crossedge absent from the graph")
    return CrossClass("crossing", (s1, s2))


def crossedges_of(g: Graph, nd_minimals: list) -> list:
    """All crossedges among a set of non-degenerate minimal separations,
    sorted by (min endpoint, max endpoint)."""
    edges = set()
    for a, b in itertools.combinations(nd_minimals, 2):
        cls = classify_pair(g, a, b)
        if cls.crossing:
            s1, s2 = cls.crossedge
            edges.add((min(s1, s2), max(s1, s2)))
    return sorted(edges)


# ---------------------------------------------------------------------------
# tangle constructors


def tangle_from_inseparable_set(g: Graph, x: Iterable[int], k: int) -> Tangle:
    """The tangle of all separations keeping a highly connected set on the
    big side. X must be (k-1)-inseparable with more than 3(k-1)/2 vertices."""
    xs = frozenset(x)
    if len(xs) * 2 <= 3 * (k - 1):
        raise PreconditionError(
            f"tangle_from_inseparable_set: |X|={len(xs)} not above {_threshold(k)}")
    for u, v in itertools.combinations(sorted(xs), 2):
        if g.has_edge(u, v):
            continue
        conn = pair_connectivity(g, u, v, limit=k - 1)
        if conn is not None:
            raise PreconditionError(
                f"tangle_from_inseparable_set: {u},{v} split by a cut of order {conn}")

    def resolver(s, comps):
        rest = xs - s
        for c in comps:
            if rest <= c:
                return c
        raise InvariantViolation("inseparable set split across components")

    return Tangle(g, k, "inseparable-set", resolver, {"x": xs})


def has_split_vertex(g: Graph, sep: Separation) -> Optional[int]:
    """Smallest z in Z such that every component of G minus (S + z) has
    exactly three neighbors; None if there is none."""
    if sep.order != 3:
        raise PreconditionError("has_split_vertex: separation must have order 3")
    for z in sorted(sep.z):
        if _is_split_vertex(g, sep.s, z):
            return z
    return None


def _is_split_vertex(g: Graph, s: frozenset, z: int) -> bool:
    cut = s | {z}
    return all(len(neighborhood(g, c)) == 3 for c in components(g, cut))


def tangle_from_separation(g: Graph, s0: Separation, *,
                           trusted: bool = False) -> Tangle:
    """The order-4 tangle defined by a non-degenerate proper order-3
    separation with connected big side and no split vertex: members are the
    separations that either contain the big side or meet the defining
    separator more on their big side."""
    if not trusted:
        if not is_k_connected(g, 3):
            raise PreconditionError("tangle_from_separation: graph not 3-connected")
    if s0.order != 3 or not s0.proper:
        raise PreconditionError("tangle_from_separation: need a proper order-3 separation")
    if is_degenerate(g, s0):
        raise PreconditionError("tangle_from_separation: defining separation degenerate")
    if not is_connected(g, s0.z):
        raise PreconditionError("tangle_from_separation: big side not connected")
    sv = has_split_vertex(g, s0)
    if sv is not None:
        raise PreconditionError(f"tangle_from_separation: {sv} is a split vertex")
    return _defined_tangle(g, s0)


def _defined_tangle(g: Graph, s0: Separation) -> Tangle:
    z0, s0set = s0.z, s0.s

    def resolver(s, comps):
        chosen = None
        for c in comps:
            y = g.vertex_set() - s - c
            if z0 <= c or len(c & s0set) > len(y & s0set):
                if chosen is not None:
                    raise InvariantViolation(
                        "lemma-q4dec1: two components claim the defined orientation")
                chosen = c
        if chosen is None:
            raise InvariantViolation("lemma-q4dec1: no component claims the orientation")
        return chosen

    return Tangle(g, 4, "defined", resolver, {"s0": s0})


def project_separation(model: MinorModel, sep: Separation) -> Separation:
    """Projection along a minor model: pattern vertices whose branch set
    meets S go to S'; those fully inside Y or Z keep their side."""
    yp, sp, zp = [], [], []
    for w in model.pattern.vertices():
        mw = model.branch_sets[w]
        if mw & sep.s:
            sp.append(w)
        elif mw <= sep.y:
            yp.append(w)
        elif mw <= sep.z:
            zp.append(w)
        else:
            raise InvariantViolation("projection: branch set straddles Y and Z")
    return Separation(frozenset(yp), frozenset(sp), frozenset(zp), model.pattern)


def lift_tangle(model: MinorModel, tp: Tangle) -> Tangle:
    """Lift a pattern tangle to the host along a minor model."""
    if tp.graph != model.pattern:
        raise PreconditionError("lift_tangle: tangle is not over the model's pattern")
    g = model.host

    def resolver(s, comps):
        chosen = None
        for c in comps:
            cand = Separation(g.vertex_set() - s - c, s, c, g)
            if tp.membership(project_separation(model, cand)):
                if chosen is not None:
                    raise InvariantViolation("lift: two components lift into the tangle")
                chosen = c
        if chosen is None:
            raise InvariantViolation("lift: no component lifts into the tangle")
        return chosen

    return Tangle(g, tp.k, "lifted", resolver, {"model": model, "base": tp})


def truncate(t: Tangle, kp: int) -> Tangle:
    """Restriction of the choice function to separators of order < kp."""
    if kp > t.k:
        raise PreconditionError(f"truncate: {kp} exceeds the tangle order {t.k}")

    def resolver(s, comps):
        return t.z_of(s)

    return Tangle(t.graph, kp, "truncated", resolver, {"base": t})


def is_triconnected_region(g: Graph, r: Iterable[int]) -> bool:
    """Torso 3-connected and every outside component attached at <= 2
    vertices (the attachment bound also makes the torso topological)."""
    rs = frozenset(r)
    for c in components(g, rs):
        if len(neighborhood(g, c)) > 2:
            return False
    return is_k_connected(torso(g, rs).graph, 3)


def torso_tangle(g: Graph, r: Iterable[int], t: Tangle) -> Tangle:
    """The order-4 tangle induced on the torso of a triconnected region whose
    order-3 truncation keeps the region on the big side."""
    rs = frozenset(r)
    if t.k != 4:
        raise PreconditionError("torso_tangle: tangle must have order 4")
    if rs == g.vertex_set():
        return t
    if not is_triconnected_region(g, rs):
        raise PreconditionError("torso_tangle: R is not a triconnected region")
    for s in _small_subsets(g, 3):
        if len(components(g, s)) < 2:
            continue
        if t.y_of(s) & rs:
            raise PreconditionError(
                "torso_tangle: order-3 truncation does not point at the region "
                f"(separator {sorted(s)})")
    mapped = torso(g, rs)
    h = mapped.graph
    to_parent = mapped.to_parent
    outside = [(c, neighborhood(g, c)) for c in components(g, rs)]

    def resolver(sp, comps):
        s_g = frozenset(to_parent[v] for v in sp)
        chosen = None
        for cp in comps:
            yp = frozenset(range(h.n)) - sp - cp
            y_g = set(to_parent[v] for v in yp)
            z_g = set(to_parent[v] for v in cp)
            for c, att in outside:
                if att <= y_g | s_g:
                    y_g |= c
                else:
                    z_g |= c
            if t.membership(Separation(frozenset(y_g), s_g, frozenset(z_g), g)):
                if chosen is not None:
                    raise InvariantViolation("induced-tangle: ambiguous orientation")
                chosen = cp
        if chosen is None:
            raise InvariantViolation("induced-tangle: no orientation lifts back")
        return chosen

    return Tangle(h, 4, "induced", resolver, {"region": rs, "base": t, "torso": mapped})


# ---------------------------------------------------------------------------
# k-blocks


def find_blocks(g: Graph, k: int, cap: int = ORACLE_CAP) -> list:
    """All k-blocks (inclusionwise maximal k-inseparable sets), ordered by
    sorted vertex content. Blocks are the >k-sized maximal cliques of the
    pairwise relation 'adjacent or joined by more than k disjoint paths'."""
    if g.n > cap:
        raise SizeCapExceeded("find_blocks", g.n, cap)
    if not 0 <= k <= 3:
        raise PreconditionError(f"find_blocks: k must be 0..3, got {k}")
    n = g.n
    rel = [set() for _ in range(n)]
    for u, v in itertools.combinations(range(n), 2):
        if g.has_edge(u, v):
            ok = True
        elif k == 0:
            ok = any(u in c and v in c for c in components(g))
        else:
            ok = pair_connectivity(g, u, v, limit=k) is None
        if ok:
            rel[u].add(v)
            rel[v].add(u)

    blocks = []

    def bron_kerbosch(r, p, x):
        if not p and not x:
            if len(r) > k:
                blocks.append(frozenset(r))
            return
        pivot_pool = p | x
        pivot = max(pivot_pool, key=lambda v: len(rel[v] & p))
        for v in sorted(p - rel[pivot]):
            bron_kerbosch(r | {v}, p & rel[v], x & rel[v])
            p = p - {v}
            x = x | {v}

    bron_kerbosch(set(), set(range(n)), set())
    return sorted(blocks, key=sorted)


def block_of_tangle(t: Tangle, cap: int = ORACLE_CAP) -> frozenset:
    """Intersection of the small-side complements over all members (computed
    on canonical members, which have the smallest big sides)."""
    g = t.graph
    if g.n > cap:
        raise SizeCapExceeded("block_of_tangle", g.n, cap)
    x = set(g.vertex_set())
    for s in _small_subsets(g, t.k):
        if len(components(g, s)) < 2:
            continue
        x &= s | t.z_of(s)
    return frozenset(x)


# ---------------------------------------------------------------------------
# minimal separations and crossedges of a defined tangle (flow-based path)


def nd_minimals_and_crossedges(g: Graph, t: Tangle) -> tuple:
    """(T_nd, non-degenerate crossedges) for a tangle defined by a
    separation, computed with leftmost-minimum-proper-separation queries
    instead of subset enumeration."""
    from .mincut import leftmost_min_proper_separations
    from .graph import induced_subgraph

    if t.provenance != "defined" or "s0" not in t.payload:
        raise PreconditionError(
            "nd_minimals_and_crossedges: tangle must come from a defining separation")
    s0 = t.payload["s0"]
    y0, s0set, z0 = s0.y, s0.s, s0.z

    minimals = {s0}
    # non-crossing minimals: flipped leftmost minimum proper (S0,{x})-separations
    for x in sorted(z0):
        for cand in leftmost_min_proper_separations(g, s0set, (x,), 3):
            minimals.add(cand.flipped())

    # crossing minimals: at most one candidate crossedge per defining-separator
    # vertex with a unique neighbor on the small side
    sub = induced_subgraph(g, s0set | z0)
    idx = sub.parent_index()
    for s in sorted(s0set):
        inside = g.adjset(s) & (y0 | s0set)
        if len(inside) != 1:
            continue
        y = next(iter(inside))
        if y not in y0:
            continue
        w_local = frozenset(idx[v] for v in s0set - {s})
        x_local = (idx[s],)
        for cand in leftmost_min_proper_separations(sub.graph, w_local, x_local, 2):
            if cand.order != 2:
                continue
            # (cand.y, cand.s, cand.z) is (Z, S, Y) intersected with S0 u Z0;
            # the global separator regains the crossedge endpoint y in Y0
            try:
                sep = make_separation(g,
                                      sub.lift_set(cand.z),
                                      sub.lift_set(cand.s) | {y},
                                      sub.lift_set(cand.y) | (y0 - {y}))
            except PreconditionError as exc:
                raise InvariantViolation(
                    f"lemma-q4dec3: crossing reconstruction invalid ({exc})")
            minimals.add(sep)

    # every candidate is a member; the flow equivalences guarantee all
    # minimal members are among them, so the minimal candidates are T_min
    cands = sorted(minimals, key=lambda s: (sorted(s.s), sorted(s.y)))
    t_min = [a for a in cands
             if not any(b != a and preceq(b, a) for b in cands)]
    nd = [m for m in t_min if m.proper and not is_degenerate(g, m)]
    return nd, crossedges_of(g, nd)
