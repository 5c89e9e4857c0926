"""Batch command-line front end: parse or generate graphs, run the
decomposition / tangle / fuzz commands, and emit JSON, DOT or text.

Exit codes: 0 ok, 1 parse error, 2 validation failure, 3 internal invariant
failure, 4 oracle size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .decomposition import TreeDecomposition, decompose, validate_decomposition
from .errors import (GraphInputError, InvariantViolation, PreconditionError,
                     SizeCapExceeded)
from .generators import by_name
from .graph import Graph, build_graph
from .mincut import is_k_connected
from .regions import region_of_tangle, tangle_of_region
from .separations import ORACLE_CAP
from .tangles import (crossedges_of, enumerate_tangles, minimal_separations,
                      nd_minimal_separations, tangles_equal)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_INVARIANT = 3
EXIT_CAP = 4


def parse_dimacs(text: str) -> Graph:
    """DIMACS-like reader: one `p <n> <m>` header line, `e <u> <v>` edge
    lines with 1-based vertex ids, `c` comment lines."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            nums = [p for p in parts[1:] if p.lstrip("-").isdigit()]
            if len(nums) < 2:
                raise GraphInputError(f"line {lineno}: malformed header {raw!r}")
            n = int(nums[0])
        elif parts[0] == "e":
            if n is None:
                raise GraphInputError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise GraphInputError(f"line {lineno}: malformed edge {raw!r}")
            u, v = int(parts[1]), int(parts[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphInputError(f"line {lineno}: endpoint out of range")
            edges.append((u - 1, v - 1))
        else:
            raise GraphInputError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphInputError("missing `p` header line")
    return build_graph(n, edges)


def write_dimacs(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def decomposition_to_json(td: TreeDecomposition) -> str:
    tangles = set(td.tangle_nodes())
    nodes = [{"id": i, "bag": sorted(bag), "torso": td.classes[i],
              "tangle": i in tangles}
             for i, bag in enumerate(td.bags)]
    edges = [{"parent": p, "child": t, "separator": sorted(td.bags[p] & td.bags[t])}
             for p, t in td.tree_edges()]
    return json.dumps({"nodes": nodes, "edges": edges},
                      sort_keys=True, separators=(",", ":")) + "\n"


def decomposition_from_json(g: Graph, text: str) -> TreeDecomposition:
    data = json.loads(text)
    nodes = sorted(data["nodes"], key=lambda d: d["id"])
    td = TreeDecomposition(graph=g)
    parent_of = {e["child"]: e["parent"] for e in data["edges"]}
    for d in nodes:
        td.add_node(frozenset(d["bag"]), d["torso"], parent_of.get(d["id"]))
    return td


def decomposition_to_dot(td: TreeDecomposition) -> str:
    tangles = set(td.tangle_nodes())
    lines = ["graph decomposition {"]
    for i, bag in enumerate(td.bags):
        label = "{" + ",".join(map(str, sorted(bag))) + "}\\n" + td.classes[i]
        if i in tangles:
            label += " *"
        lines.append(f'  n{i} [label="{label}"];')
    for p, t in td.tree_edges():
        sep = ",".join(map(str, sorted(td.bags[p] & td.bags[t])))
        lines.append(f'  n{p} -- n{t} [label="{sep}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_to_text(td: TreeDecomposition) -> str:
    tangles = set(td.tangle_nodes())
    lines = [f"nodes {len(td.bags)} adhesion {td.adhesion}"]
    for i, bag in enumerate(td.bags):
        mark = " tangle" if i in tangles else ""
        parent = td.parents[i] if td.parents[i] is not None else "-"
        lines.append(f"node {i} parent {parent} {td.classes[i]}"
                     f" bag {sorted(bag)}{mark}")
    return "\n".join(lines) + "\n"


def _load_graph(args) -> Graph:
    if args.gen:
        return by_name(args.gen)
    if args.infile == "-":
        return parse_dimacs(sys.stdin.read())
    with open(args.infile) as fh:
        return parse_dimacs(fh.read())


def _emit(args, text: str):
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _oracle_cap(args) -> int:
    if getattr(args, "cap", None):
        return args.cap
    env = os.environ.get("Q4_ORACLE_CAP")
    return int(env) if env else ORACLE_CAP


def cmd_decompose(args) -> int:
    g = _load_graph(args)
    td = decompose(g, args.level)
    if args.format == "json":
        _emit(args, decomposition_to_json(td))
    elif args.format == "dot":
        _emit(args, decomposition_to_dot(td))
    else:
        _emit(args, decomposition_to_text(td))
    if args.validate:
        rep = validate_decomposition(g, td, args.level,
                                     oracle_cap=_oracle_cap(args),
                                     check_tangle_count=g.n <= _oracle_cap(args))
        for v in rep.violations:
            print(f"violation: {v}", file=sys.stderr)
        if not rep.ok:
            return EXIT_VALIDATION
    return EXIT_OK


def cmd_tangles(args) -> int:
    g = _load_graph(args)
    cap = _oracle_cap(args)
    if g.n > cap:
        print(f"graph has {g.n} vertices, oracle cap is {cap}", file=sys.stderr)
        return EXIT_CAP
    ts = enumerate_tangles(g, args.order, cap=cap)
    lines = [f"tangles of order {args.order}: {len(ts)}"]
    failures = 0
    for i, t in enumerate(ts):
        mins = minimal_separations(t, cap=cap)
        lines.append(f"tangle {i}: {len(mins)} minimal separations")
        for sep in mins:
            lines.append(f"  minimal Y={sorted(sep.y)} S={sorted(sep.s)}")
        if args.order == 4 and is_k_connected(g, 3):
            nd = nd_minimal_separations(t, cap=cap)
            for u, v in crossedges_of(g, nd):
                lines.append(f"  crossedge {u}-{v}")
            if args.check_correspondence:
                region = region_of_tangle(g, t)
                ok = tangles_equal(tangle_of_region(g, region), t, cap=cap)
                lines.append(f"  region {sorted(region.r)} correspondence "
                             + ("OK" if ok else "FAIL"))
                if not ok:
                    failures += 1
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_VALIDATION if failures else EXIT_OK


def _fuzz_one(task) -> tuple:
    index, max_n, seed, raw_t2, cap = task
    from .fuzz import random_instance, run_battery
    g = random_instance(index, max_n, seed)
    return index, write_dimacs(g), run_battery(g, seed=seed ^ index,
                                               raw_t2=raw_t2, cap=cap)


def cmd_fuzz(args) -> int:
    cap = _oracle_cap(args)
    tasks = [(i, args.max_n, args.seed, args.raw_t2, cap)
             for i in range(args.count)]
    if args.jobs > 1:
        import multiprocessing
        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.map(_fuzz_one, tasks)
    else:
        results = [_fuzz_one(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    bad = 0
    for index, dimacs, violations in results:
        if not violations:
            continue
        bad += 1
        repro = os.path.join(args.repro_dir, f"fuzz-repro-{index}.dimacs")
        with open(repro, "w") as fh:
            fh.write(dimacs)
        print(f"instance {index}: {len(violations)} violations "
              f"(repro: {repro})", file=sys.stderr)
        for v in violations[:10]:
            print(f"  {v}", file=sys.stderr)
    print(f"fuzz: {args.count} instances, {bad} with violations")
    return EXIT_VALIDATION if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="q4cc",
                                 description="quasi-4-connected components toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_input(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--in", dest="infile", metavar="FILE",
                         help="DIMACS-like input file, or - for stdin")
        src.add_argument("--gen", metavar="NAME",
                         help="named generator (k5, cube, hex2, hex3, th3, "
                              "tr3, th4:MASK, glued-k5, truncated-cube)")
        p.add_argument("--out", metavar="FILE", default="-")
        p.add_argument("--cap", type=int, default=0,
                       help="override the oracle size cap")

    p = sub.add_parser("decompose", help="compute a tree decomposition")
    add_input(p)
    p.add_argument("--level", type=int, choices=(2, 3, 4), default=4)
    p.add_argument("--validate", action="store_true")
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("tangles", help="enumerate tangles (oracle scale)")
    add_input(p)
    p.add_argument("--order", type=int, choices=(1, 2, 3, 4), default=4)
    p.add_argument("--check-correspondence", action="store_true")
    p.set_defaults(func=cmd_tangles)

    p = sub.add_parser("fuzz", help="run the randomized invariant battery")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--raw-t2", action="store_true",
                   help="also check the tangle axiom over all member triples")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--repro-dir", default=".")
    p.add_argument("--cap", type=int, default=0)
    p.set_defaults(func=cmd_fuzz)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphInputError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeCapExceeded as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
