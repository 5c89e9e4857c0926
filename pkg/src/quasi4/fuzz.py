"""Invariant battery for randomized testing: one call runs every cross-check
the library promises on a single graph and reports violations as strings.
"""

from __future__ import annotations

import itertools
import random
from typing import List

from .decomposition import decompose, decompose_quasi4, validate_decomposition
from .errors import InvariantViolation, PreconditionError
from .graph import Graph, components, neighborhood
from .mincut import is_k_connected, min_wx_separation
from .regions import region_of_tangle, tangle_of_region
from .separations import (ORACLE_CAP, enumerate_separations, join,
                          make_separation, meet, preceq)
from .tangles import (block_of_tangle, check_axioms, enumerate_tangles,
                      find_blocks, tangle_from_inseparable_set, tangles_equal)


def run_battery(g: Graph, seed: int = 0, raw_t2: bool = False,
                cap: int = ORACLE_CAP) -> List[str]:
    """All violated invariants found on this graph (empty = clean run)."""
    out = []
    out += _check_separation_algebra(g, seed)
    out += _check_flow_vs_brute(g, seed)
    tangles_by_order = {}
    for k in (1, 2, 3, 4):
        try:
            ts = enumerate_tangles(g, k, cap=cap)
        except PreconditionError:
            return out  # disconnected: remaining checks need connectivity
        tangles_by_order[k] = ts
        for t in ts:
            viols = check_axioms(t, raw_t2=raw_t2, cap=cap)
            out += [f"order-{k} tangle: {v}" for v in viols]
    out += _check_block_bijection(g, tangles_by_order)
    if is_k_connected(g, 3):
        out += _check_correspondence(g, tangles_by_order[4])
        out += _check_decomposition(g, decompose_quasi4, tangle_count=True)
    out += _check_decomposition(g, lambda gg: decompose(gg, 4), tangle_count=True)
    return out


def _sample_separations(g, rng, count):
    pool = list(enumerate_separations(g, min(4, g.n + 1), cap=ORACLE_CAP))
    rng.shuffle(pool)
    seps = pool[:count]
    for _ in range(count * 4):
        colors = [rng.randrange(3) for _ in range(g.n)]
        try:
            seps.append(make_separation(
                g,
                {v for v in range(g.n) if colors[v] == 0},
                {v for v in range(g.n) if colors[v] == 1},
                {v for v in range(g.n) if colors[v] == 2}))
        except PreconditionError:
            continue
    return seps[:count * 2]


def _check_separation_algebra(g, seed):
    out = []
    rng = random.Random(seed)
    seps = _sample_separations(g, rng, 8)
    for a, b in itertools.combinations(seps, 2):
        for got, tag in ((meet(a, b), "meet"), (join(a, b), "join")):
            try:
                make_separation(g, got.y, got.s, got.z)
            except PreconditionError as exc:
                out.append(f"{tag} output invalid: {exc}")
    for a, b in itertools.permutations(seps, 2):
        if preceq(a, b) and preceq(b, a) and a != b:
            out.append("preceq not antisymmetric")
    for a, b, c in itertools.permutations(seps, 3):
        if preceq(a, b) and preceq(b, c) and not preceq(a, c):
            out.append("preceq not transitive")
    return out


def _check_flow_vs_brute(g, seed):
    if g.n > 10:
        return []
    out = []
    rng = random.Random(seed + 1)
    all_seps = list(enumerate_separations(g, min(4, g.n + 1), cap=ORACLE_CAP)) \
        if g.n <= 10 else []
    for _ in range(6):
        w = frozenset(rng.sample(range(g.n), rng.randint(1, 2)))
        x = frozenset(rng.sample(range(g.n), rng.randint(1, 2)))
        flow = min_wx_separation(g, w, x)
        candidates = [s for s in all_seps
                      if w <= s.y | s.s and x <= s.z | s.s]
        if not candidates:
            continue  # brute list is order-capped; skip large-order queries
        best = min(s.order for s in candidates)
        if flow.order > best:
            out.append(f"min_wx order {flow.order} exceeds brute {best} "
                       f"for W={sorted(w)}, X={sorted(x)}")
        for s in candidates:
            if s.order == flow.order and not flow.y <= s.y:
                out.append(f"min_wx Y not leftmost for W={sorted(w)}, X={sorted(x)}")
                break
    return out


def _check_block_bijection(g, tangles_by_order):
    out = []
    for k in (1, 2, 3):
        ts = tangles_by_order[k]
        blocks = {b for b in find_blocks(g, k - 1) if k != 3 or len(b) >= 4}
        if len(ts) != len(blocks):
            out.append(f"order-{k} tangle count {len(ts)} != "
                       f"{k - 1}-block count {len(blocks)}")
            continue
        seen = set()
        for t in ts:
            x = block_of_tangle(t)
            if x not in blocks:
                out.append(f"order-{k} tangle core {sorted(x)} is not a block")
                continue
            seen.add(x)
            back = tangle_from_inseparable_set(g, x, k)
            if not tangles_equal(t, back):
                out.append(f"order-{k} tangle differs from its block tangle")
        if seen != blocks:
            out.append(f"order-{k} tangles miss blocks")
    return out


def _check_correspondence(g, tangles):
    out = []
    for i, t in enumerate(tangles):
        try:
            region = region_of_tangle(g, t, validate=True)
            back = tangle_of_region(g, region)
        except (InvariantViolation, PreconditionError) as exc:
            out.append(f"tangle {i}: region pipeline failed: {exc}")
            continue
        if not tangles_equal(back, t):
            out.append(f"tangle {i}: region tangle differs from the original")
    return out


def _check_decomposition(g, builder, tangle_count=False):
    try:
        td = builder(g)
    except (InvariantViolation, PreconditionError) as exc:
        return [f"decomposition failed: {exc}"]
    rep = validate_decomposition(g, td, 4, check_tangle_count=tangle_count)
    return [f"decomposition: {v}" for v in rep.violations]


def random_instance(index: int, max_n: int, seed: int) -> Graph:
    """Deterministic per-index test graph: alternates seeded 3-connected
    graphs with general random connected graphs."""
    from .generators import random_3connected
    from .graph import build_graph
    rng = random.Random((seed << 20) ^ index)
    if index % 2 == 0:
        n = rng.randint(6, max(6, max_n))
        lo = max((3 * n + 1) // 2, n + 4)
        m = rng.randint(lo, max(lo, min(n * (n - 1) // 2, 3 * n)))
        return random_3connected(n, m, seed=rng.randrange(1 << 30))
    n = rng.randint(3, max(3, max_n))
    edges = {(min(u, v), max(u, v))
             for v in range(1, n) for u in [rng.randrange(v)]}
    extra = rng.randint(0, 2 * n)
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    return build_graph(n, sorted(edges))
