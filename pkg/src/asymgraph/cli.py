"""Command-line driver: generate, build, query, verify, cost, report.

Exit codes: 0 success, 1 verification mismatch, 2 usage or I/O error.
Cost JSON is the single machine-readable channel (stdout); human
summaries go to stderr.  All commands are deterministic given identical
flags and input files.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from .bcc import BCCOracle, ClusterRecord, build_bcc_oracle
from .bclabel import BCForest
from .bounded import BoundedView
from .clustergraph import ClusterTree
from .connectivity import CCOracle, build_cc_oracle, connectivity_linear, ldd
from .decomposition import Decomposition, build_decomposition
from .graph import Graph, dump_edge_list, gen_random_bounded, gen_with_hubs, load_edge_list
from .groundtruth import brute_biconn, union_find_cc
from .meter import CostMeter

VIEW_THRESHOLD = 8  # wrap inputs whose max degree exceeds this
VIEW_DMAX = 3


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh)


def _structure_for(g: Graph, use_view: bool):
    return BoundedView(g, VIEW_DMAX) if use_view else g


def _emit_cost(meter: CostMeter) -> None:
    print(json.dumps(meter.as_dict(), sort_keys=True))


def cmd_gen(args) -> int:
    if args.hub_degree:
        g = gen_with_hubs(args.n, args.hub_degree, args.seed, args.max_degree)
    else:
        g = gen_random_bounded(args.n, args.max_degree, args.seed)
    text = dump_edge_list(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"generated n={g.n} m={g.m} max_degree={g.max_degree}", file=sys.stderr)
    return 0


def _serialize_bcc(oracle: BCCOracle, use_view: bool) -> str:
    out = [f"asymgraph bcc-sublinear v1", f"view {int(use_view)} {VIEW_DMAX}"]
    out.append(oracle.decomp.to_text().rstrip("\n"))
    out.append(f"bccmeta {oracle.total_internal}")
    out.append("clusters")
    for s in sorted(oracle.records):
        r = oracle.records[s]
        flags = int(r.rb_ok) | (int(r.bridge_ok) << 1) | (int(r.parent_edge_bridge) << 2)
        out.append(f"{s} {oracle.tree.parent[s]} {r.label} {flags} {r.span_label} {r.int_offset}")
    out.append("")
    return "\n".join(out)


def _deserialize_bcc(text: str, structure) -> BCCOracle:
    lines = text.splitlines()
    assert lines[0].startswith("asymgraph bcc-sublinear")
    _view, _flag, _dmax = lines[1].split()
    idx = next(i for i, ln in enumerate(lines) if ln.startswith("bccmeta"))
    decomp = Decomposition.from_text("\n".join(lines[2:idx]))
    total_internal = int(lines[idx].split()[1])
    parent: dict[int, int] = {}
    records: dict[int, ClusterRecord] = {}
    for ln in lines[idx + 2:]:
        if not ln.strip():
            continue
        s, p, lab, flags, span, off = (int(x) for x in ln.split())
        parent[s] = p
        records[s] = ClusterRecord(
            label=lab, rb_ok=bool(flags & 1), bridge_ok=bool(flags & 2),
            parent_edge_bridge=bool(flags & 4), span_label=span, int_offset=off)
    root_of = {}
    for s in parent:
        x = s
        while parent[x] != x:
            x = parent[x]
        root_of[s] = x
    order = sorted(parent)
    tree = ClusterTree(parent, root_of, order)
    return BCCOracle(structure, decomp, tree, records, total_internal, cache=True)


def cmd_build(args) -> int:
    g = _load_graph(args.graph)
    use_view = g.max_degree > VIEW_THRESHOLD and args.algo in (
        "decomp", "cc-sublinear", "bcc-sublinear")
    structure = _structure_for(g, use_view)
    meter = CostMeter(omega=args.omega)
    k = args.k if args.k else max(2, math.isqrt(args.omega) + (0 if math.isqrt(args.omega) ** 2 == args.omega else 1))
    header = [f"asymgraph {args.algo} v1", f"view {int(use_view)} {VIEW_DMAX}"]
    if args.algo == "decomp":
        d = build_decomposition(structure, k, args.seed, meter,
                                par_centers=args.par_centers)
        payload = "\n".join(header) + "\n" + d.to_text()
    elif args.algo == "cc-sublinear":
        oracle = build_cc_oracle(structure, k, args.seed, meter,
                                 par_centers=args.par_centers)
        payload = "\n".join(header) + "\n" + oracle.to_text()
    elif args.algo == "cc-linear":
        res = connectivity_linear(g, 1.0 / args.omega, args.seed, meter)
        lines = header + ["labels"]
        lines += [f"{v} {res.labels[v]}" for v in sorted(res.labels)]
        lines.append("forest")
        lines += [f"{u} {v}" for u, v in sorted(res.forest)]
        payload = "\n".join(lines) + "\n"
    elif args.algo == "bcc-linear":
        forest = BCForest(g, meter)
        lines = list(header)
        for root in sorted(forest.labelings):
            lines.append(f"component {root}")
            lines.append(forest.labelings[root].to_text().rstrip("\n"))
        payload = "\n".join(lines) + "\n"
    elif args.algo == "bcc-sublinear":
        oracle = build_bcc_oracle(structure, k, args.seed, meter,
                                  par_centers=args.par_centers)
        payload = _serialize_bcc(oracle, use_view)
    else:
        print(f"unknown algo {args.algo}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    _emit_cost(meter)
    print(f"built {args.algo} on n={g.n} m={g.m} k={k} seed={args.seed} "
          f"view={int(use_view)} writes={meter.writes}", file=sys.stderr)
    return 0


def _load_oracle(path: str, g: Graph):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lines = text.splitlines()
    kind = lines[0].split()[1]
    use_view = lines[1].split()[1] == "1"
    structure = _structure_for(g, use_view)
    if kind == "cc-sublinear":
        oracle = CCOracle.from_text("\n".join(lines[2:]))
        return ("cc", oracle, structure)
    if kind == "bcc-sublinear":
        return ("bcc", _deserialize_bcc(text, structure), structure)
    if kind == "cc-linear":
        labels = {}
        for ln in lines[lines.index("labels") + 1:]:
            if ln == "forest" or not ln.strip():
                break
            v, lab = (int(x) for x in ln.split())
            labels[v] = lab
        return ("cc-linear", labels, g)
    if kind == "bcc-linear":
        forest = BCForest.__new__(BCForest)
        forest.comp_root = {}
        forest.labelings = {}
        i = 2
        from .bclabel import BCLabeling
        while i < len(lines):
            if lines[i].startswith("component"):
                root = int(lines[i].split()[1])
                j = i + 1
                block = []
                while j < len(lines) and not lines[j].startswith("component"):
                    block.append(lines[j])
                    j += 1
                lab = BCLabeling.from_text("\n".join(block))
                forest.labelings[root] = lab
                forest.comp_root[root] = root
                for v in lab.l:
                    forest.comp_root[v] = root
                i = j
            else:
                i += 1
        return ("bcc-linear", forest, g)
    raise ValueError(f"unknown oracle kind {kind}")


def _answer(kind, oracle, structure, g, parts, meter) -> str:
    op = parts[0]
    if op == "component":
        v = int(parts[1])
        if kind == "cc":
            return str(oracle.component_label(structure, v, meter))
        if kind == "cc-linear":
            return str(oracle[v])
    if op == "connected":
        u, v = int(parts[1]), int(parts[2])
        if kind == "cc":
            return str(oracle.connected(structure, u, v, meter)).lower()
        if kind == "cc-linear":
            return str(oracle[u] == oracle[v]).lower()
    if kind == "bcc":
        if op == "bridge":
            return str(oracle.is_bridge(int(parts[1]), int(parts[2]), meter)).lower()
        if op == "articulation":
            return str(oracle.is_articulation(int(parts[1]), meter)).lower()
        if op == "biconnected":
            return str(oracle.vertices_biconnected(int(parts[1]), int(parts[2]), meter)).lower()
        if op == "oneedge":
            return str(oracle.one_edge_connected(int(parts[1]), int(parts[2]), meter)).lower()
        if op == "edgelabel":
            return str(oracle.edge_bcc_label(int(parts[1]), int(parts[2]), meter))
    if kind == "bcc-linear":
        if op == "bridge":
            return str(oracle.is_bridge(g, int(parts[1]), int(parts[2]))).lower()
        if op == "articulation":
            return str(oracle.is_articulation(int(parts[1]))).lower()
        if op == "biconnected":
            return str(oracle.same_bcc(int(parts[1]), int(parts[2]))).lower()
        if op == "edgelabel":
            return str(oracle.edge_bcc_label(g, int(parts[1]), int(parts[2])))
    raise ValueError(f"unsupported query {op!r} for oracle kind {kind}")


def cmd_query(args) -> int:
    g = _load_graph(args.graph)
    kind, oracle, structure = _load_oracle(args.oracle, g)
    meter = CostMeter(omega=args.omega)
    batch: list[list[str]] = []
    if args.connected:
        batch.append(["connected"] + args.connected)
    if args.component is not None:
        batch.append(["component", str(args.component)])
    if args.bridge:
        batch.append(["bridge"] + args.bridge)
    if args.articulation is not None:
        batch.append(["articulation", str(args.articulation)])
    if args.biconnected:
        batch.append(["biconnected"] + args.biconnected)
    if args.oneedge:
        batch.append(["oneedge"] + args.oneedge)
    if args.edgelabel:
        batch.append(["edgelabel"] + args.edgelabel)
    if not batch:
        batch = [line.split() for line in sys.stdin if line.strip()]
    for parts in batch:
        print(_answer(kind, oracle, structure, g, parts, meter))
    print(f"queries={len(batch)} reads={meter.reads} writes={meter.writes}",
          file=sys.stderr)
    return 0


def _partition_of(labels: dict) -> set[frozenset]:
    groups: dict = {}
    for v, lab in labels.items():
        groups.setdefault(lab, set()).add(v)
    return {frozenset(s) for s in groups.values()}


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    use_view = g.max_degree > VIEW_THRESHOLD
    structure = _structure_for(g, use_view)
    k = args.k or 4
    mismatches: list[str] = []
    if args.mode == "cc":
        truth = union_find_cc(g)
        oracle = build_cc_oracle(structure, k, args.seed, CostMeter(omega=args.omega))
        mine = {v: oracle.component_label(structure, v) for v in range(g.n)}
        if _partition_of(mine) != _partition_of(truth):
            mismatches.append("cc oracle partition differs from union-find")
        res = connectivity_linear(g, 1.0 / args.omega, args.seed, CostMeter())
        if _partition_of({v: res.labels[v] for v in range(g.n)}) != _partition_of(truth):
            mismatches.append("cc-linear partition differs from union-find")
    else:
        gt = brute_biconn(g)
        forest = BCForest(g)
        oracle = build_bcc_oracle(structure, k, args.seed, cache=True)
        lin_bridges = forest.bridges(g)
        if lin_bridges != gt.bridges:
            mismatches.append(f"linear bridges differ: {sorted(lin_bridges ^ gt.bridges)}")
        sub_bridges = {(u, v) for u, v in g.distinct_edges()
                       if u != v and oracle.is_bridge(u, v)}
        if sub_bridges != gt.bridges:
            mismatches.append(f"sublinear bridges differ: {sorted(sub_bridges ^ gt.bridges)}")
        lin_aps = forest.articulation_points()
        if lin_aps != gt.articulation:
            mismatches.append(f"linear articulation points differ: {sorted(lin_aps ^ gt.articulation)}")
        sub_aps = {v for v in range(g.n) if oracle.is_articulation(v)}
        if sub_aps != gt.articulation:
            mismatches.append(f"sublinear articulation points differ: {sorted(sub_aps ^ gt.articulation)}")
        mine: dict = {}
        for u, v in g.distinct_edges():
            if u == v:
                continue
            lab = oracle.edge_bcc_label(u, v)
            for c in range(g.multiplicity(u, v)):
                mine.setdefault(lab, set()).add((u, v, c))
        if {frozenset(s) for s in mine.values()} != {frozenset(c) for c in gt.bcc_edges}:
            mismatches.append("sublinear edge-label partition differs from brute force")
    if mismatches:
        for msg in mismatches:
            print(f"MISMATCH: {msg}", file=sys.stderr)
        return 1
    print(f"verify ok: mode={args.mode} n={g.n} m={g.m} k={k} seed={args.seed}",
          file=sys.stderr)
    return 0


def cmd_cost(args) -> int:
    if args.graph:
        g = _load_graph(args.graph)
    else:
        g = gen_random_bounded(args.n, args.max_degree, args.seed)
    use_view = g.max_degree > VIEW_THRESHOLD and args.algo in (
        "decomp", "cc-sublinear", "bcc-sublinear")
    structure = _structure_for(g, use_view)
    meter = CostMeter(omega=args.omega)
    k = args.k or 4
    if args.algo == "decomp":
        build_decomposition(structure, k, args.seed, meter)
    elif args.algo == "cc-sublinear":
        build_cc_oracle(structure, k, args.seed, meter)
    elif args.algo == "cc-linear":
        connectivity_linear(g, 1.0 / args.omega, args.seed, meter)
    elif args.algo == "bcc-linear":
        BCForest(g, meter)
    elif args.algo == "bcc-sublinear":
        build_bcc_oracle(structure, k, args.seed, meter)
    elif args.algo == "ldd":
        res = ldd(g, args.beta, args.seed, meter)
        print(f"blocks={res.num_blocks()} cut={res.cut_edges(g)} m={g.m}",
              file=sys.stderr)
    else:
        print(f"unknown algo {args.algo}", file=sys.stderr)
        return 2
    _emit_cost(meter)
    print(f"cost: algo={args.algo} n={g.n} m={g.m} k={k}", file=sys.stderr)
    return 0


def cmd_report(args) -> int:
    from .report import write_report
    write_report(args.out, sizes=args.sizes, seeds=args.seeds, k=args.k,
                 omega=args.omega)
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="asymgraph",
                                 description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--k", type=int, default=0,
                       help="cluster-size bound (default ceil(sqrt(omega)))")
        p.add_argument("--omega", type=int, default=16,
                       help="asymmetric write cost (default 16)")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="generate a random bounded-degree edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--hub-degree", type=int, default=0,
                   help="also add one hub of at least this degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("build", help="build an oracle and emit cost JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--algo", required=True,
                   choices=["decomp", "cc-linear", "cc-sublinear",
                            "bcc-linear", "bcc-sublinear"])
    p.add_argument("--out")
    p.add_argument("--par-centers", action="store_true",
                   help="also promote tree children when splitting clusters")
    common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("query", help="answer queries from flags or stdin batch")
    p.add_argument("--oracle", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--connected", nargs=2, metavar=("U", "V"))
    p.add_argument("--component", type=int)
    p.add_argument("--bridge", nargs=2, metavar=("U", "V"))
    p.add_argument("--articulation", type=int)
    p.add_argument("--biconnected", nargs=2, metavar=("U", "V"))
    p.add_argument("--oneedge", nargs=2, metavar=("U", "V"))
    p.add_argument("--edgelabel", nargs=2, metavar=("U", "V"))
    common(p)
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("verify", help="compare oracles against brute force")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=["cc", "bcc"], required=True)
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("cost", help="run one algorithm and emit its cost JSON")
    p.add_argument("--algo", required=True,
                   choices=["decomp", "cc-linear", "cc-sublinear",
                            "bcc-linear", "bcc-sublinear", "ldd"])
    p.add_argument("--graph")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--beta", type=float, default=0.1)
    common(p)
    p.set_defaults(fn=cmd_cost)

    p = sub.add_parser("report", help="seed sweeps: CSV tables plus figures")
    p.add_argument("--out", required=True)
    p.add_argument("--sizes", type=int, nargs="*", default=[256, 512, 1024, 2048])
    p.add_argument("--seeds", type=int, default=5)
    common(p)
    p.set_defaults(fn=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
