"""Tree decompositions: the adhesion-3 decomposition of a 3-connected graph
into complete and quasi-4-connected torsos, the block/triconnected layers
below it, the stitched full pipeline, and a validator.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import InvariantViolation, PreconditionError
from .graph import (Graph, MinorModel, components, compose_models,
                    identity_model, induced_subgraph, is_connected,
                    neighborhood, torso)
from .mincut import connectivity_witness, find_nondegenerate_3separator, is_k_connected
from .regions import is_quasi_4_connected, region_of_tangle
from .separations import (ORACLE_CAP, Separation, is_degenerate,
                          make_separation)
from .tangles import _defined_tangle, has_split_vertex


@dataclass
class TreeDecomposition:
    """Rooted tree of bags over a fixed graph. Edge separations are derived
    from the tree: for the edge (s,t), S = bag(s) n bag(t) and Z = the union
    of the bags strictly below t minus S."""

    graph: Graph = field(repr=False)
    bags: List[frozenset] = field(default_factory=list)
    parents: List[Optional[int]] = field(default_factory=list)
    classes: List[str] = field(default_factory=list)
    witnesses: List[Optional[MinorModel]] = field(default_factory=list)

    def add_node(self, bag, torso_class: str, parent: Optional[int] = None,
                 witness: Optional[MinorModel] = None) -> int:
        self.bags.append(frozenset(bag))
        self.parents.append(parent)
        self.classes.append(torso_class)
        self.witnesses.append(witness)
        return len(self.bags) - 1

    def __len__(self):
        return len(self.bags)

    def children(self) -> List[List[int]]:
        out = [[] for _ in self.bags]
        for t, p in enumerate(self.parents):
            if p is not None:
                out[p].append(t)
        return out

    def tree_edges(self) -> List[tuple]:
        return [(p, t) for t, p in enumerate(self.parents) if p is not None]

    def root(self) -> int:
        roots = [t for t, p in enumerate(self.parents) if p is None]
        if len(roots) != 1:
            raise InvariantViolation(f"tree has {len(roots)} roots")
        return roots[0]

    def subtree_unions(self) -> List[frozenset]:
        kids = self.children()
        order = []
        stack = [self.root()]
        while stack:
            t = stack.pop()
            order.append(t)
            stack.extend(kids[t])
        out = [None] * len(self.bags)
        for t in reversed(order):
            acc = set(self.bags[t])
            for c in kids[t]:
                acc |= out[c]
            out[t] = frozenset(acc)
        return out

    def separation(self, s: int, t: int) -> Separation:
        """The separation associated with the tree edge (s, t)."""
        if self.parents[t] != s:
            raise PreconditionError(f"({s},{t}) is not a tree edge")
        sub = self.subtree_unions()[t]
        sep_s = self.bags[s] & self.bags[t]
        z = sub - sep_s
        y = self.graph.vertex_set() - sep_s - z
        return make_separation(self.graph, y, sep_s, z)

    @property
    def adhesion(self) -> int:
        return max((len(self.bags[s] & self.bags[t])
                    for s, t in self.tree_edges()), default=0)

    def tangle_nodes(self) -> List[int]:
        """Nodes associated with order-4 tangles per the closing criterion:
        bag size at least 5, or exactly 4 with every 3-subset realized as the
        adhesion to some tree neighbor."""
        kids = self.children()
        out = []
        for t, bag in enumerate(self.bags):
            if self.classes[t] not in ("quasi4", "K4"):
                continue
            if len(bag) >= 5:
                out.append(t)
                continue
            if len(bag) != 4:
                continue
            nbrs = list(kids[t])
            if self.parents[t] is not None:
                nbrs.append(self.parents[t])
            adhesions = {frozenset(self.bags[u] & bag) for u in nbrs}
            if all(frozenset(s3) in adhesions
                   for s3 in itertools.combinations(sorted(bag), 3)):
                out.append(t)
        return out


def _complete_class(k: int) -> str:
    return f"K{k}"


def _dimacs_dump(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines)


def _expand_bag(g: Graph, sep: Separation, validate_regions) -> tuple:
    """(bag, torso class, witness) for a tree edge's separation, per the
    three construction cases."""
    y0, s0, z0 = sep.y, sep.s, sep.z
    if len(z0) <= 1:
        bag = s0 | z0
        return bag, _complete_class(len(bag)), None
    z_split = has_split_vertex(g, sep)
    if z_split is not None:
        bag = s0 | {z_split}
        return bag, _complete_class(len(bag)), None
    if is_degenerate(g, sep):
        raise InvariantViolation(
            "decompose_quasi4: a degenerate separation reached the region "
            f"case (S0={sorted(s0)}, Y0={sorted(y0)}); counterexample:\n"
            + _dimacs_dump(g))
    t = _defined_tangle(g, sep)
    region = region_of_tangle(g, t, prefer=s0, validate=validate_regions)
    if not s0 <= region.r:
        raise InvariantViolation("theorem-q4dec: defining separator left the region")
    cls = "quasi4" if len(region.r) >= 5 else _complete_class(len(region.r))
    witness = region.witness_model if cls == "quasi4" else None
    return region.r, cls, witness


def decompose_quasi4(g: Graph, *, anchor: frozenset = frozenset(),
                     assume_3connected: bool = False,
                     validate_regions: Optional[bool] = None) -> TreeDecomposition:
    """Adhesion-3 tree decomposition of a 3-connected graph whose torsos are
    K3, K4 or quasi-4-connected components.

    Per expanded leaf: a small big side becomes a bag outright; a split
    vertex caps the bag at four vertices and recurses into the pieces; and
    otherwise the defining separation's tangle is extracted into its region.

    A nonempty `anchor` (a clique of up to three vertices) forces the root
    bag to contain it — used when this tree is grafted under another
    decomposition layer, so that anchor vertices stay on a connected
    subtree. The root is then found by descending along the anchor's side
    and every other component of the graph minus the root bag becomes its
    own branch.
    """
    anchor = frozenset(anchor)
    if not assume_3connected:
        if g.n <= 3:
            raise PreconditionError("decompose_quasi4: graph must be 3-connected")
        wit = connectivity_witness(g, 3)
        if wit is not None:
            raise PreconditionError(
                f"decompose_quasi4: not 3-connected (separator {sorted(wit.s)})")
    td = TreeDecomposition(graph=g)
    sr = find_nondegenerate_3separator(g, assume_3connected=True)
    if sr is None:
        cls = "quasi4" if g.n >= 5 else _complete_class(g.n)
        td.add_node(g.vertex_set(), cls,
                    witness=identity_model(g) if cls == "quasi4" else None)
        return td

    work = deque()
    if anchor <= sr:
        root = td.add_node(sr, "K3")
        for c in components(g, sr):
            work.append((root, make_separation(g, g.vertex_set() - sr - c, sr, c)))
    else:
        # descend along the anchor's side until a bag swallows the anchor,
        # then root there and hang every outside component as a branch
        c_a = next(c for c in components(g, sr) if anchor <= sr | c)
        sep = make_separation(g, g.vertex_set() - sr - c_a, sr, c_a)
        while True:
            bag, cls, witness = _expand_bag(g, sep, validate_regions)
            if anchor <= bag:
                break
            nxt = None
            for c in components(g, bag):
                if c <= sep.z and anchor <= neighborhood(g, c) | c:
                    att = neighborhood(g, c)
                    nxt = make_separation(g, g.vertex_set() - att - c, att, c)
                    break
            if nxt is None:
                raise InvariantViolation("anchored descent lost the anchor")
            sep = nxt
        root = td.add_node(bag, cls, witness=witness)
        for c in components(g, bag):
            att = neighborhood(g, c)
            work.append((root, make_separation(g, g.vertex_set() - att - c, att, c)))

    while work:
        parent, sep = work.popleft()
        bag, cls, witness = _expand_bag(g, sep, validate_regions)
        node = td.add_node(bag, cls, parent, witness=witness)
        for c in components(g, bag):
            if c <= sep.z:
                att = neighborhood(g, c)
                work.append((node, make_separation(
                    g, g.vertex_set() - att - c, att, c)))
    return td


# ---------------------------------------------------------------------------
# biconnected and triconnected layers


def biconnected_components(g: Graph) -> TreeDecomposition:
    """Block-cut tree as a tree decomposition of adhesion at most 1;
    disconnected graphs stitch component subtrees under the first root."""
    td = TreeDecomposition(graph=g)
    blocks = _biconnected_blocks(g)
    comp_roots = []
    for comp in components(g):
        cblocks = sorted((b for b in blocks if b <= comp), key=sorted)
        if not cblocks:  # isolated vertex
            comp_roots.append(td.add_node(comp, "K1"))
            continue
        placed = [cblocks[0]]
        ids = {cblocks[0]: td.add_node(cblocks[0], _block_class(g, cblocks[0]))}
        rest = cblocks[1:]
        while rest:
            nxt = []
            grown = False
            for b in rest:
                # attach to the earliest-placed block sharing a cut vertex,
                # so siblings through one cut vertex gather under one parent
                host = next((pb for pb in placed if pb & b), None)
                if host is None:
                    nxt.append(b)
                    continue
                ids[b] = td.add_node(b, _block_class(g, b), ids[host])
                placed.append(b)
                grown = True
            if not grown:
                raise InvariantViolation("block-cut assembly did not converge")
            rest = nxt
        comp_roots.append(ids[cblocks[0]])
    for extra in comp_roots[1:]:
        td.parents[extra] = comp_roots[0]
    return td


def _block_class(g: Graph, b: frozenset) -> str:
    if len(b) <= 2:
        return _complete_class(len(b))
    return "biconnected"


def _biconnected_blocks(g: Graph) -> list:
    """Vertex sets of the biconnected components (bridges give 2-sets), by
    iterative lowpoint search with an edge stack."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks = []
    counter = 0
    for start in range(g.n):
        if disc[start] != -1 or g.degree(start) == 0:
            continue
        disc[start] = low[start] = counter
        counter += 1
        stack = [(start, -1, iter(g.adj[start]))]
        estack = []
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if disc[u] == -1:
                    estack.append((v, u))
                    disc[u] = low[u] = counter
                    counter += 1
                    stack.append((u, v, iter(g.adj[u])))
                    advanced = True
                    break
                if disc[u] < disc[v]:
                    estack.append((v, u))
                    if disc[u] < low[v]:
                        low[v] = disc[u]
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            pv = stack[-1][0]
            if low[v] < low[pv]:
                low[pv] = low[v]
            if low[v] >= disc[pv]:
                block = set()
                while estack:
                    a, b = estack.pop()
                    block.update((a, b))
                    if (a, b) == (pv, v):
                        break
                if block:
                    blocks.append(frozenset(block))
    return blocks


def triconnected_decomposition(g: Graph, anchor: frozenset = frozenset()) -> TreeDecomposition:
    """Adhesion-2 decomposition of a 2-connected graph with torsos that are
    3-connected or complete of order at most 3, by recursive splitting on
    proper 2-separations.

    Each piece carries an anchor pair (the adhesion to its parent, a virtual
    edge of the piece), and splits keep the anchor inside the first
    sub-piece, so every subtree's root bag contains its adhesion."""
    if g.n < 3:
        raise PreconditionError("triconnected_decomposition: graph too small")
    wit = connectivity_witness(g, 2)
    if wit is not None:
        raise PreconditionError("triconnected_decomposition: graph must be "
                                f"2-connected (separator {sorted(wit.s)})")
    td = TreeDecomposition(graph=g)
    # LIFO so that a split's anchored sub-piece finishes its whole subtree
    # before any sibling looks for its attachment bag
    work = [(g, tuple(range(g.n)), None, frozenset(anchor) or None)]
    while work:
        piece, names, parent, anchor = work.pop()
        if parent is not None and isinstance(parent, tuple):
            lo, pair = parent
            parent = next(i for i in range(lo, len(td.bags))
                          if pair <= td.bags[i])
        if piece.n <= 3:
            td.add_node(frozenset(names), _complete_class(piece.n), parent)
            continue
        wit = connectivity_witness(piece, 3)
        if wit is None:
            td.add_node(frozenset(names), "triconnected", parent)
            continue
        if wit.order != 2:
            raise InvariantViolation("triconnected split: piece lost 2-connectivity")
        sep_names = frozenset(names[v] for v in wit.s)
        comps = components(piece, wit.s)
        if anchor is not None:
            lead = next(i for i, c in enumerate(comps)
                        if anchor <= frozenset(names[v] for v in c | wit.s))
        else:
            lead = 0
        lo = len(td.bags)
        subs = []
        for i, c in enumerate(comps):
            sub = torso(piece, c | wit.s)
            sub_names = tuple(names[v] for v in sub.to_parent)
            subs.append((sub.graph, sub_names))
        for i in reversed(range(len(subs))):
            if i == lead:
                continue
            work.append((subs[i][0], subs[i][1], (lo, sep_names), sep_names))
        work.append((subs[lead][0], subs[lead][1], parent, anchor))
    return td


# ---------------------------------------------------------------------------
# the full stitched pipeline


def _induced_model(g: Graph, block: frozenset) -> MinorModel:
    """Model of the induced subgraph (reindexed) in g: singleton branch sets."""
    sub = induced_subgraph(g, block)
    return MinorModel(host=g, pattern=sub.graph,
                      branch_sets={w: frozenset((sub.to_parent[w],))
                                   for w in sub.graph.vertices()},
                      edge_witness={(u, v): (sub.to_parent[u], sub.to_parent[v])
                                    for u, v in sub.graph.edges()},
                      faithful=True, pattern_names=sub.to_parent)


def adhesion2_torso_model(g: Graph, b: frozenset) -> MinorModel:
    """Faithful model of the torso of b in g when every outside component
    attaches at <= 2 vertices: virtual edges absorb a connecting path."""
    mapped = torso(g, b)
    name = mapped.to_parent
    idx = mapped.parent_index()
    branch = {w: {name[w]} for w in mapped.graph.vertices()}
    witness = {}
    used_pairs = {}
    for c in sorted(components(g, b), key=min):
        att = neighborhood(g, c)
        if len(att) > 2:
            raise PreconditionError("adhesion2_torso_model: component attaches "
                                    f"at {len(att)} > 2 vertices")
        if len(att) == 2:
            used_pairs.setdefault(frozenset(att), c)
    for u, v in mapped.graph.edges():
        a, bb = name[u], name[v]
        if g.has_edge(a, bb):
            witness[(u, v)] = (a, bb)
            continue
        comp = used_pairs[frozenset((a, bb))]
        from .regions import _first_path
        path = _first_path(g, sorted(g.adjset(a) & comp), {bb},
                           forbidden=g.vertex_set() - comp - {bb})
        branch[idx[a]].update(path[:-1])
        witness[(u, v)] = (path[-2] if len(path) >= 2 else a, bb)
    return MinorModel(host=g, pattern=mapped.graph,
                      branch_sets={w: frozenset(s) for w, s in branch.items()},
                      edge_witness=witness, faithful=True, pattern_names=name)


def _graft(out: TreeDecomposition, sub: TreeDecomposition, names: tuple,
           parent: Optional[int], base_model: Optional[MinorModel]) -> tuple:
    """Append sub's nodes (bags translated through names, witnesses composed
    through base_model) under `parent`; returns (lo, hi) id range."""
    lo = len(out.bags)
    for t in range(len(sub.bags)):
        bag = frozenset(names[v] for v in sub.bags[t])
        p = sub.parents[t]
        new_parent = parent if p is None else lo + p
        witness = sub.witnesses[t]
        if witness is not None and base_model is not None:
            witness = compose_models(base_model, witness)
        out.add_node(bag, sub.classes[t], new_parent, witness)
    return lo, len(out.bags)


def _highest_with(out: TreeDecomposition, rng: tuple, want: frozenset) -> int:
    lo, hi = rng
    for i in range(lo, hi):
        if want <= out.bags[i]:
            return i
    raise InvariantViolation(f"stitch: no bag in range {rng} contains {sorted(want)}")


def decompose(g: Graph, level: int = 4, *,
              validate_regions: Optional[bool] = None) -> TreeDecomposition:
    """Full pipeline: connected components, then blocks, then triconnected
    pieces, then (level 4) quasi-4-connected components of each 3-connected
    torso, stitched into one tree of adhesion <= level - 1."""
    if level not in (2, 3, 4):
        raise PreconditionError(f"decompose: level must be 2, 3 or 4, got {level}")
    bi = biconnected_components(g)
    if level == 2:
        return bi
    out = TreeDecomposition(graph=g)
    ranges = {}
    order = []
    kids = bi.children()
    stack = [bi.root()]
    while stack:
        t = stack.pop()
        order.append(t)
        stack.extend(reversed(kids[t]))
    for t in order:
        p = bi.parents[t]
        if p is None:
            pnew, anchor = None, frozenset()
        else:
            anchor = bi.bags[t] & bi.bags[p]
            pnew = _highest_with(out, ranges[p], anchor)
        ranges[t] = _expand_block(out, g, bi.bags[t], bi.classes[t], pnew,
                                  anchor, level, validate_regions)
    return out


def _expand_block(out: TreeDecomposition, g: Graph, block: frozenset, cls: str,
                  pnew: Optional[int], anchor: frozenset, level: int,
                  validate_regions) -> tuple:
    lo = len(out.bags)
    if cls != "biconnected":
        out.add_node(block, cls, pnew)
        return lo, len(out.bags)
    sub = induced_subgraph(g, block)
    idx = sub.parent_index()
    anchor_local = frozenset(idx[v] for v in anchor)
    tri = triconnected_decomposition(sub.graph, anchor=anchor_local)
    if level == 3:
        return _graft(out, tri, sub.to_parent, pnew, None)

    block_model = _induced_model(g, block)
    tri_ranges = {}
    tkids = tri.children()
    torder = []
    tstack = [tri.root()]
    while tstack:
        u = tstack.pop()
        torder.append(u)
        tstack.extend(reversed(tkids[u]))
    for u in torder:
        tp = tri.parents[u]
        if tp is None:
            pq, anc_local = pnew, anchor_local
        else:
            anc_local = tri.bags[u] & tri.bags[tp]
            want = frozenset(sub.to_parent[v] for v in anc_local)
            pq = _highest_with(out, tri_ranges[tp], want)
        ulo = len(out.bags)
        if tri.classes[u] != "triconnected":
            out.add_node(frozenset(sub.to_parent[v] for v in tri.bags[u]),
                         tri.classes[u], pq)
        else:
            piece = torso(sub.graph, tri.bags[u])
            pidx = piece.parent_index()
            panchor = frozenset(pidx[v] for v in anc_local)
            q4 = decompose_quasi4(piece.graph, anchor=panchor,
                                  assume_3connected=True,
                                  validate_regions=validate_regions)
            piece_in_block = adhesion2_torso_model(sub.graph, tri.bags[u])
            piece_in_g = compose_models(block_model, piece_in_block)
            names = tuple(sub.to_parent[v] for v in piece.to_parent)
            _graft(out, q4, names, pq, piece_in_g)
        tri_ranges[u] = (ulo, len(out.bags))
    return lo, len(out.bags)


# ---------------------------------------------------------------------------
# validation


@dataclass
class Report:
    violations: List[str] = field(default_factory=list)
    tangle_count: Optional[int] = None
    flagged_nodes: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_decomposition(g: Graph, td: TreeDecomposition, level: int = 4,
                           oracle_cap: int = ORACLE_CAP,
                           check_tangle_count: bool = False) -> Report:
    """Check the tree-decomposition axioms, the adhesion bound, per-edge
    separation consistency (S from the bag intersection, the subtree side
    connected), torso classification with witness models at level 4, and
    (optionally, at oracle scale on 3-connected graphs) that the order-4
    tangle count matches the flagged-node count."""
    rep = Report()
    bad = rep.violations
    n_nodes = len(td.bags)
    if n_nodes == 0:
        bad.append("empty decomposition")
        return rep
    try:
        root = td.root()
    except InvariantViolation as exc:
        bad.append(str(exc))
        return rep
    # acyclicity / reachability
    kids = td.children()
    seen = set()
    stack = [root]
    while stack:
        t = stack.pop()
        if t in seen:
            bad.append("cycle in the tree")
            return rep
        seen.add(t)
        stack.extend(kids[t])
    if len(seen) != n_nodes:
        bad.append("tree not connected")
        return rep

    cover = frozenset().union(*td.bags)
    if cover != g.vertex_set():
        bad.append(f"vertices not covered: {sorted(g.vertex_set() - cover)}")
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags):
            bad.append(f"edge ({u},{v}) in no bag")
            break
    # vertex subtrees connected
    for v in g.vertices():
        holding = [t for t in range(n_nodes) if v in td.bags[t]]
        if not holding:
            continue
        hs = set(holding)
        comp = {holding[0]}
        frontier = [holding[0]]
        while frontier:
            t = frontier.pop()
            nbrs = list(kids[t])
            if td.parents[t] is not None:
                nbrs.append(td.parents[t])
            for u in nbrs:
                if u in hs and u not in comp:
                    comp.add(u)
                    frontier.append(u)
        if comp != hs:
            bad.append(f"bags containing vertex {v} do not form a subtree")

    if td.adhesion > level - 1:
        bad.append(f"adhesion {td.adhesion} exceeds {level - 1}")

    subs = td.subtree_unions()
    for s, t in td.tree_edges():
        sep_set = td.bags[s] & td.bags[t]
        z = subs[t] - sep_set
        y = g.vertex_set() - sep_set - z
        try:
            make_separation(g, y, sep_set, z)
        except PreconditionError as exc:
            bad.append(f"edge ({s},{t}): not a separation ({exc})")
            continue
        if z and not is_connected(g, z):
            bad.append(f"edge ({s},{t}): subtree side not connected")

    for t in range(n_nodes):
        cls = td.classes[t]
        mapped = torso(g, td.bags[t])
        h = mapped.graph
        if cls.startswith("K"):
            k = int(cls[1:])
            if h.n != k or h.m != k * (k - 1) // 2:
                bad.append(f"node {t}: torso is not {cls}")
            if k > 4 and level == 4:
                bad.append(f"node {t}: complete torso larger than K4")
        elif cls == "quasi4":
            if not is_quasi_4_connected(h):
                bad.append(f"node {t}: torso not quasi-4-connected")
            if level == 4:
                w = td.witnesses[t]
                if w is None:
                    bad.append(f"node {t}: quasi4 torso lacks a witness model")
                else:
                    if w.pattern != h:
                        bad.append(f"node {t}: witness pattern differs from torso")
                    errs = w.validate()
                    if errs:
                        bad.append(f"node {t}: witness invalid: {errs[0]}")
                    if not w.faithful:
                        bad.append(f"node {t}: witness not faithful")
        elif cls == "triconnected":
            if not is_k_connected(h, 3):
                bad.append(f"node {t}: torso not 3-connected")
            if level >= 4:
                bad.append(f"node {t}: triconnected torso left at level 4")
        elif cls == "biconnected":
            sub = induced_subgraph(g, td.bags[t]).graph
            if not is_k_connected(sub, 2):
                bad.append(f"node {t}: bag not 2-connected")
            if level >= 3:
                bad.append(f"node {t}: biconnected bag left at level {level}")
        else:
            bad.append(f"node {t}: unknown torso class {cls}")

    if check_tangle_count and level == 4:
        from .tangles import enumerate_tangles
        if g.n <= oracle_cap and is_k_connected(g, 3):
            rep.tangle_count = len(enumerate_tangles(g, 4, cap=oracle_cap))
            rep.flagged_nodes = len(td.tangle_nodes())
            if rep.tangle_count != rep.flagged_nodes:
                bad.append(f"order-4 tangle count {rep.tangle_count} differs "
                           f"from flagged node count {rep.flagged_nodes}")
    return rep
