"""Quasi-4-connectivity, exceptional-graph recognition, quasi-4-connected
regions with faithful witness models, non-exceptional extensions, the
crossedge-contraction pipeline, and the region extracted from a tangle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from .errors import InvariantViolation, PreconditionError
from .generators import th3, tr3
from .graph import (Graph, Mapped, MinorModel, components, compose_models,
                    contract_edge, find_embedding, identity_model,
                    neighborhood, torso, _embeddings)
from .mincut import disjoint_fan, is_k_connected
from .separations import (ORACLE_CAP, Separation, is_degenerate,
                          is_independent, make_separation)
from .tangles import (Tangle, classify_pair, crossedges_of, lift_tangle,
                      nd_minimal_separations, nd_minimals_and_crossedges)


def is_quasi_4_connected(g: Graph) -> bool:
    """3-connected and every order-3 separation has a side with at most one
    vertex (exact at any size; cubic scan over 3-subsets)."""
    if not is_k_connected(g, 3):
        return False
    for s in itertools.combinations(range(g.n), 3):
        comps = components(g, s)
        if len(comps) < 2:
            continue
        sizes = sorted(len(c) for c in comps)
        if sizes[-1] >= 2 and sum(sizes) - sizes[-1] >= 2:
            return False
        if sizes[-1] == 1 and len(sizes) >= 4:
            return False
    return True


def is_exceptional(g: Graph) -> bool:
    """Quasi-4-connected and embeddable into one of the two seven-or-fewer
    vertex obstruction graphs (so: no order-4 tangle)."""
    if not is_quasi_4_connected(g):
        raise PreconditionError("is_exceptional: graph must be quasi-4-connected")
    if g.n > 7:
        return False
    return (find_embedding(g, th3()) is not None
            or find_embedding(g, tr3()) is not None)


def canonical_q4_tangle(g: Graph) -> Optional[Tangle]:
    """The unique order-4 tangle of a non-exceptional quasi-4-connected
    graph: members are the separations with the strictly larger far side.
    None for exceptional graphs."""
    if is_exceptional(g):
        return None

    def resolver(s, comps):
        chosen = None
        for c in comps:
            if g.n - len(s) - len(c) < len(c):
                if chosen is not None:
                    raise InvariantViolation("canonical tangle: two large sides")
                chosen = c
        if chosen is None:
            raise InvariantViolation("canonical tangle: no strictly larger side")
        return chosen

    return Tangle(g, 4, "canonical", resolver)


# ---------------------------------------------------------------------------
# faithful torso models (constructive)


def faithful_torso_model(g: Graph, sep: Separation) -> MinorModel:
    """Faithful model of the torso of S+Z in g, for a non-degenerate proper
    order-3 separation, built by contracting pieces of the small side into
    the separator (three cases: separator spans an edge / small side
    disconnected / small side connected behind an independent separator)."""
    if sep.order != 3 or not sep.proper:
        raise PreconditionError("faithful_torso_model: need a proper order-3 separation")
    if is_degenerate(g, sep):
        raise PreconditionError("faithful_torso_model: separation is degenerate")
    model = _degsep_model(g, sep)
    bad = model.validate()
    if bad:
        raise InvariantViolation(f"lemma-degsep: construction invalid: {bad[0]}")
    return model


def _degsep_model(g: Graph, sep: Separation) -> MinorModel:
    y, s, z = sep.y, sep.s, sep.z
    mapped = torso(g, s | z)
    pat = mapped.graph
    name = mapped.to_parent
    idx = mapped.parent_index()
    branch = {w: frozenset((name[w],)) for w in pat.vertices()}
    witness = {}
    virtual = []
    for u, v in pat.edges():
        a, b = name[u], name[v]
        if g.has_edge(a, b):
            witness[(u, v)] = (a, b)
        else:
            virtual.append((u, v))
    # all virtual edges lie inside the separator (every small-side component
    # attaches to all three separator vertices in a 3-connected graph)
    assert all(name[u] in s and name[v] in s for u, v in virtual)

    def attach(s3, cset, partners):
        branch[idx[s3]] = frozenset(cset | {s3})
        for sp in partners:
            e = (idx[s3], idx[sp]) if idx[s3] < idx[sp] else (idx[sp], idx[s3])
            if e in witness:
                continue
            witness[e] = next((c, sp) for c in sorted(cset) if g.has_edge(c, sp))

    spanned = [(a, b) for a, b in itertools.combinations(sorted(s), 2)
               if g.has_edge(a, b)]
    ycomps = components(g, g.vertex_set() - y)

    if spanned:
        s1, s2 = spanned[0]
        s3 = next(iter(s - {s1, s2}))
        attach(s3, set(ycomps[0]), [s1, s2])
    elif len(ycomps) >= 2:
        s1, s2, s3 = sorted(s)
        attach(s1, set(ycomps[0]), [s2])
        attach(s3, set(ycomps[1]), [s1, s2])
    else:
        _degsep_paths_case(g, sep, mapped, branch, witness)

    return MinorModel(host=g, pattern=pat, branch_sets=branch,
                      edge_witness=witness, faithful=True, pattern_names=name)


def _degsep_paths_case(g: Graph, sep: Separation, mapped: Mapped,
                       branch: dict, witness: dict):
    """Independent separator with a connected small side: grow three
    internally disjoint paths from a small-side vertex to the separator,
    reroute so one has an interior, then connect it across to a second path;
    the path segments become the separator's branch sets."""
    y, s = sep.y, sep.s
    idx = mapped.parent_index()
    side = sorted(y | s)
    from .graph import induced_subgraph
    sub = induced_subgraph(g, side)
    sidx = sub.parent_index()
    v = min(y)
    fan = disjoint_fan(sub.graph, sidx[v], [sidx[t] for t in sorted(s)])
    if fan is None:
        raise InvariantViolation("lemma-degsep: no separator fan in a 3-connected graph")
    paths = [[sub.to_parent[u] for u in p] for p in fan]

    if all(len(p) == 2 for p in paths):
        # all fan paths are single edges: reroute one through a neighbor
        w = min(g.adjset(v) & y)
        q = _first_path(g, [w], s, forbidden={v})
        target = q[-1]
        i = next(i for i, p in enumerate(paths) if p[-1] == target)
        paths[i] = [v] + q

    paths.sort(key=len, reverse=True)
    p1, p2, p3 = paths[0], paths[1], paths[2]
    assert len(p1) >= 3

    inner1 = set(p1) - {v, p1[-1]}
    targets = (set(p2) | set(p3)) - {v}
    qprime = _first_path(g, sorted(inner1), targets,
                         forbidden={v, p1[-1]} | (g.vertex_set() - y - s))
    # trim so only the endpoints touch the fan paths
    qprime = _trim_to_last_source(qprime, inner1)
    if qprime[-1] in p3:
        p2, p3 = p3, p2
    w1, w2 = qprime[0], qprime[-1]

    # path lists run v -> separator; the separator segment of p runs w..s_i
    p1_seg = p1[p1.index(w1):]
    p2_seg = p2[p2.index(w2):]
    s1, s2, s3 = p1[-1], p2[-1], p3[-1]
    m1 = (set(p1_seg) | set(qprime)) - {w2}
    m2 = set(p2_seg)
    m3 = set(p3) | (set(p1) - set(p1_seg)) | (set(p2) - set(p2_seg))
    for sv, mset in ((s1, m1), (s2, m2), (s3, m3)):
        branch[idx[sv]] = frozenset(mset)

    def put(si, sj, host_edge):
        e = (idx[si], idx[sj]) if idx[si] < idx[sj] else (idx[sj], idx[si])
        witness[e] = host_edge

    put(s1, s2, (qprime[-2], w2))
    put(s1, s3, (w1, p1[p1.index(w1) - 1]))
    put(s2, s3, (w2, p2[p2.index(w2) - 1]))


def _first_path(g: Graph, sources: Iterable[int], targets, forbidden=frozenset()):
    """Shortest path (BFS, ascending tie-break) from the source set to the
    target set avoiding `forbidden`; targets stop the walk on first contact."""
    targets = set(targets)
    parent = {}
    queue = list(sources)
    seen = set(queue) | set(forbidden)
    for q in queue:
        if q in targets:
            return [q]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for x in g.adj[u]:
            if x in seen:
                continue
            parent[x] = u
            if x in targets:
                path = [x]
                while path[-1] in parent:
                    path.append(parent[path[-1]])
                return list(reversed(path))
            seen.add(x)
            queue.append(x)
    raise InvariantViolation("lemma-degsep: required connecting path absent")


def _trim_to_last_source(path: list, sources: set) -> list:
    last = max(i for i, u in enumerate(path) if u in sources)
    return path[last:]


# ---------------------------------------------------------------------------
# regions


@dataclass
class Region:
    graph: Graph = field(repr=False)
    r: frozenset
    torso: Mapped = field(repr=False)
    witness_model: MinorModel = field(repr=False)
    exceptional_torso: bool = False
    pipeline: Optional["PipelineState"] = field(default=None, repr=False)

    @property
    def torso_graph(self) -> Graph:
        return self.torso.graph


def check_region(g: Graph, r: Iterable[int]) -> Region:
    """Validate the three region conditions and assemble the faithful
    witness model for the torso; raises naming the violated condition."""
    rs = frozenset(r)
    if not rs:
        raise PreconditionError("check_region: region must be nonempty")
    comps = components(g, rs)
    for c in comps:
        att = neighborhood(g, c)
        if len(att) != 3:
            raise PreconditionError(
                f"Q3 violated: component {sorted(c)[:6]} attaches at {len(att)} vertices")
    mapped = torso(g, rs)
    if not is_quasi_4_connected(mapped.graph):
        raise PreconditionError("Q2 violated: torso not quasi-4-connected")
    witness = region_witness_model(g, rs)
    bad = witness.validate()
    if bad:
        raise PreconditionError(f"Q1 violated: witness model invalid: {bad[0]}")
    if witness.pattern != mapped.graph:
        raise InvariantViolation("region witness pattern differs from the torso")
    return Region(g, rs, mapped, witness,
                  exceptional_torso=is_exceptional(mapped.graph))


def region_witness_model(g: Graph, rs: frozenset) -> MinorModel:
    """Faithful model of the torso of R in g: remove the outside components
    group by group (grouped by attachment set) with the constructive
    torso-model lemma, composing the per-step models."""
    groups = {}
    for c in components(g, rs):
        groups.setdefault(neighborhood(g, c), []).append(c)
    cur = g
    cur_names = tuple(range(g.n))
    model = identity_model(g)
    for att in sorted(groups, key=sorted):
        name_idx = {p: i for i, p in enumerate(cur_names)}
        yset = frozenset(name_idx[v] for c in groups[att] for v in c)
        sset = frozenset(name_idx[v] for v in att)
        zset = frozenset(range(cur.n)) - yset - sset
        sep = make_separation(cur, yset, sset, zset)
        if is_degenerate(cur, sep):
            raise PreconditionError(
                "Q1 violated: a degenerate attachment group admits no faithful model "
                f"(attachment {sorted(att)})")
        step = faithful_torso_model(cur, sep)
        model = compose_models(model, step)
        cur_names = tuple(cur_names[w] for w in step.pattern_names)
        cur = step.pattern
    return model


def non_exceptional_extension(g: Graph, region: Region) -> Optional[tuple]:
    """(extension graph, faithful model) turning an exceptional torso into a
    full corner-extended tetrahedron realized in g, or None. The extension
    has the tetrahedron core plus four degree-3 corners; corners absent from
    the region are drawn from outside components with matching attachment."""
    if not region.exceptional_torso:
        raise PreconditionError("non_exceptional_extension: torso not exceptional")
    h = region.torso_graph
    names = region.torso.to_parent
    pattern = th3()
    corner_nbhd = {4: (0, 1, 2), 5: (0, 1, 3), 6: (0, 2, 3), 7: (1, 2, 3)}
    outside = [(c, neighborhood(g, c)) for c in components(g, region.r)]

    for f in _embeddings(h, pattern):
        image = {f[u]: u for u in range(h.n)}
        if not {0, 1, 2, 3} <= set(image):
            continue
        core = {j: names[image[j]] for j in range(4)}
        corners = {}
        ok = True
        for wj, trio in corner_nbhd.items():
            want = frozenset(core[j] for j in trio)
            if wj in image:
                u = names[image[wj]]
                if all(g.has_edge(u, t) for t in want):
                    corners[wj] = ("vertex", u)
                else:
                    ok = False
                    break
            else:
                cand = [c for c, att in outside if att == want]
                if not cand:
                    ok = False
                    break
                corners[wj] = ("component", min(cand, key=min))
        if not ok:
            continue
        return _assemble_extension(g, core, corners)
    return None


def _assemble_extension(g: Graph, core: dict, corners: dict) -> tuple:
    from .graph import build_graph
    edges = []
    hat_names = [core[j] for j in range(4)]
    branch = {j: frozenset((core[j],)) for j in range(4)}
    witness = {}
    corner_nbhd = {4: (0, 1, 2), 5: (0, 1, 3), 6: (0, 2, 3), 7: (1, 2, 3)}
    for i, j in itertools.combinations(range(4), 2):
        if g.has_edge(core[i], core[j]):
            edges.append((i, j))
            witness[(i, j)] = (core[i], core[j])
    for wj, trio in corner_nbhd.items():
        kind, payload = corners[wj]
        if kind == "vertex":
            branch[wj] = frozenset((payload,))
            hat_names.append(payload)
            for j in trio:
                e = (j, wj)
                edges.append(e)
                witness[e] = (core[j], payload)
        else:
            comp = payload
            branch[wj] = frozenset(comp)
            hat_names.append(min(comp))
            for j in trio:
                e = (j, wj)
                edges.append(e)
                host = next((core[j], c) for c in sorted(comp)
                            if g.has_edge(core[j], c))
                witness[e] = host
    hat = build_graph(8, edges)
    if not is_quasi_4_connected(hat) or is_exceptional(hat):
        raise InvariantViolation("lemma-q4r1: extension is not a full corner graph")
    model = MinorModel(host=g, pattern=hat, branch_sets=branch,
                       edge_witness=witness, faithful=True,
                       pattern_names=tuple(hat_names))
    bad = model.validate()
    if bad:
        raise InvariantViolation(f"lemma-q4r1: extension model invalid: {bad[0]}")
    return hat, model


def tangle_of_region(g: Graph, region: Region) -> Tangle:
    """Lift of the unique tangle of the torso (or of a non-exceptional
    extension when the torso is exceptional) through the witness model."""
    if not region.exceptional_torso:
        base = canonical_q4_tangle(region.torso_graph)
        lifted = lift_tangle(region.witness_model, base)
    else:
        ext = non_exceptional_extension(g, region)
        if ext is None:
            raise PreconditionError(
                "tangle_of_region: region is exceptional (no extension exists)")
        hat, model = ext
        base = canonical_q4_tangle(hat)
        lifted = lift_tangle(model, base)
    lifted.provenance = "region"
    lifted.payload["region"] = region.r
    return lifted


# ---------------------------------------------------------------------------
# the crossedge contraction pipeline


@dataclass
class PipelineState:
    """One stage of the crossedge-contraction pipeline. Vertex sets in
    `minimals`, `crossedges` and `region0` live in ORIGINAL vertex names;
    `names` maps current graph ids to original names."""

    graph: Graph
    names: tuple
    stage: int
    minimals: List[Separation]      # T_nd of the current tangle, original names
    crossedges: List[tuple]         # remaining non-degenerate crossedges
    contracted: List[tuple]         # (survivor, removed) so far
    region0: frozenset
    tangle: Optional[Tangle] = None

    def name_index(self) -> dict:
        return {p: i for i, p in enumerate(self.names)}

    @property
    def region(self) -> frozenset:
        return self.region0 - {r for _, r in self.contracted}


def fence(sep: Separation, crossedges: Iterable[tuple]) -> frozenset:
    """Separator vertices not on a crossedge of this separator, plus the
    small-side endpoints of its crossedges."""
    fc = set(sep.s)
    for u, v in crossedges:
        for a, b in ((u, v), (v, u)):
            if a in sep.s and b in sep.y:
                fc.discard(a)
                fc.add(b)
    return frozenset(fc)


def pipeline_start(g: Graph, t: Tangle, nd: List[Separation],
                   xedges: List[tuple]) -> PipelineState:
    if nd:
        region0 = frozenset.intersection(*[sep.z for sep in nd]) | \
            frozenset.union(*[sep.s for sep in nd])
    else:
        region0 = g.vertex_set()
    return PipelineState(graph=g, names=tuple(range(g.n)), stage=0,
                         minimals=list(nd), crossedges=list(xedges),
                         contracted=[], region0=region0, tangle=t)


def contract_crossedge_step(state: PipelineState, edge: tuple,
                            survivor: Optional[int] = None) -> PipelineState:
    """Contract one remaining non-degenerate crossedge (given in original
    names) onto `survivor` (default: its smaller endpoint), transferring the
    minimal separations and decrementing the crossedge bookkeeping."""
    u, v = edge
    key = (min(u, v), max(u, v))
    if key not in {(min(a, b), max(a, b)) for a, b in state.crossedges}:
        raise PreconditionError(f"contract_crossedge_step: {edge} is not a "
                                "remaining non-degenerate crossedge")
    s1 = min(u, v) if survivor is None else survivor
    s2 = v if s1 == u else u
    idx = state.name_index()
    mapped = contract_edge(state.graph, idx[s1], idx[s2])
    new_names = tuple(state.names[w] for w in mapped.to_parent)

    new_minimals = []
    for sep in state.minimals:
        if s1 in sep.s:
            cand = (sep.y - {s2}, sep.s, sep.z)
        elif s2 in sep.s:
            cand = (sep.y - {s1}, (sep.s - {s2}) | {s1}, sep.z)
        else:
            if not (s1 in sep.z and s2 in sep.z):
                raise InvariantViolation(
                    "lemma-4t15a: crossedge endpoint outside the big side of "
                    f"another minimal separation {sep}")
            cand = (sep.y, sep.s, sep.z - {s2})
        y2, s2set, z2 = cand
        if not y2:
            continue  # no longer a separator of the contracted graph
        # bookkeeping triples in original-name space, not separations of
        # any particular stage graph
        new_minimals.append(Separation(frozenset(y2), frozenset(s2set),
                                       frozenset(z2), None))

    new_xedges = [e for e in state.crossedges
                  if (min(e), max(e)) != key]
    new_tangle = None
    if state.tangle is not None:
        new_tangle = _contracted_tangle(state.tangle, mapped, new_names,
                                        s1, s2, state.names)
    return PipelineState(graph=mapped.graph, names=new_names,
                         stage=state.stage + 1, minimals=new_minimals,
                         crossedges=new_xedges,
                         contracted=state.contracted + [(s1, s2)],
                         region0=state.region0, tangle=new_tangle)


def _contracted_tangle(prev: Tangle, mapped: Mapped, new_names: tuple,
                       s1_name: int, s2_name: int, prev_names: tuple) -> Tangle:
    """The tangle of the contracted graph, by the three-case rule on the
    expansion of each separator (essential subseparator / plain contraction /
    non-separator)."""
    gprev = prev.graph
    prev_idx = {p: i for i, p in enumerate(prev_names)}
    cur_to_prev = {i: prev_idx[n] for i, n in enumerate(new_names)}
    s1_prev = prev_idx[s1_name]
    s2_prev = prev_idx[s2_name]
    gnew = mapped.graph

    def resolver(sp, comps):
        s_prev = frozenset(cur_to_prev[w] for w in sp)
        if s1_prev in s_prev:
            s_big = s_prev | {s2_prev}
            target_prev = None
            for cand in (s_big - {s1_prev}, s_big - {s2_prev}):
                rel = [c for c in components(gprev, cand)
                       if c - s_big]
                if len(rel) >= 2:
                    target_prev = prev.z_of(cand) - {s1_prev, s2_prev}
                    break
            if target_prev is None:
                raise InvariantViolation("lemma-4t15: no essential subseparator")
        else:
            z = prev.z_of(s_prev)
            if s2_prev in z or s1_prev in z:
                target_prev = (z | {s1_prev}) - {s2_prev}
            else:
                target_prev = z
        target_names = {prev_names[w] for w in target_prev}
        new_idx = {n: i for i, n in enumerate(new_names)}
        target_new = frozenset(new_idx[n] for n in target_names if n in new_idx)
        for c in comps:
            if c == target_new:
                return c
        raise InvariantViolation(
            "lemma-4t16/4t17: transferred big side is not a component")

    return Tangle(gnew, 4, "contracted", resolver)


def region_of_tangle(g: Graph, t: Tangle, *, prefer: Iterable[int] = (),
                     validate: Optional[bool] = None) -> Region:
    """Run the full pipeline: find the non-degenerate minimal separations
    and crossedges, contract the crossedges one at a time, and carve the
    region out of the big-side intersection. Every tangle maps onto a valid
    region; with `validate` the per-stage pipeline facts are asserted."""
    if validate is None:
        validate = g.n <= ORACLE_CAP
    if t.provenance == "defined":
        nd, xedges = nd_minimals_and_crossedges(g, t)
    else:
        nd = nd_minimal_separations(t)
        xedges = crossedges_of(g, nd)
    state = pipeline_start(g, t if validate else None, nd, xedges)

    prefer = frozenset(prefer)
    h_track = torso(g, state.region0).graph if validate else None
    h_names = tuple(sorted(state.region0)) if validate else None
    if validate:
        _check_stage(g, state, h_track, h_names)

    for edge in sorted((min(e), max(e)) for e in xedges):
        u, v = edge
        if u in prefer and v in prefer:
            raise InvariantViolation("crossedge with both endpoints preferred")
        survivor = u if u in prefer else (v if v in prefer else min(u, v))
        state = contract_crossedge_step(state, edge, survivor)
        if validate:
            removed = v if survivor == u else u
            h_track, h_names = _contract_named(h_track, h_names, survivor, removed)
            _check_stage(g, state, h_track, h_names)

    region = check_region(g, state.region)
    region.pipeline = state
    return region


def _contract_named(h: Graph, names: tuple, survivor: int, removed: int):
    idx = {n: i for i, n in enumerate(names)}
    mapped = contract_edge(h, idx[survivor], idx[removed])
    return mapped.graph, tuple(names[w] for w in mapped.to_parent)


def _check_stage(g: Graph, state: PipelineState, h_track: Graph, h_names: tuple):
    """Per-stage pipeline invariants, each named after the fact it checks."""
    if not is_k_connected(state.graph, 3):
        raise InvariantViolation(f"lemma-4t20(1): stage {state.stage} graph "
                                 "not 3-connected")
    seen = set()
    for u, v in state.crossedges:
        if u in seen or v in seen:
            raise InvariantViolation("corollary-CI: crossedges not a matching")
        seen.update((u, v))
    # delete-equals-contract: the torso of the current region equals the
    # contraction of the stage-0 torso
    cur = torso(g, state.region)
    cur_names = tuple(sorted(state.region))
    if (cur.graph, cur_names) != (h_track, h_names):
        raise InvariantViolation(f"lemma-4t24: stage {state.stage} torso differs "
                                 "from the contracted stage-0 torso")
    if state.tangle is not None and state.stage > 0:
        # the minimal-separation transfer matches the three-case tangle
        idx = state.name_index()
        for sep in state.minimals:
            s_cur = frozenset(idx[v] for v in sep.s)
            z_cur = frozenset(idx[v] for v in sep.z)
            if state.tangle.z_of(s_cur) != z_cur:
                raise InvariantViolation(
                    f"lemma-4t19: transferred minimal {sep} disagrees with the "
                    "contracted tangle")
