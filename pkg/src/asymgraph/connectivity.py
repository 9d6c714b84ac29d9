"""Low-diameter decomposition and connectivity oracles.

`ldd` and `connectivity_linear` run against anything exposing the node
protocol (num_nodes / iter_nodes / neighbors), so the same code serves
the vertex-level graph and the implicit cluster graph.  The sublinear
oracle runs the linear algorithm over the cluster graph with beta = 1/k
and stores one component label per center.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .clustergraph import ClusterGraphView
from .decomposition import Decomposition, build_decomposition, rho_with_members
from .meter import CostMeter
from .rng import exponential

_LDD_SALT = 0x1DD


@dataclass
class LDDResult:
    beta: float
    owner: dict[int, int]        # node -> block source
    sources: list[int]           # block sources, ascending
    iterations: int

    def num_blocks(self) -> int:
        return len(self.sources)

    def cut_edges(self, structure, meter: CostMeter | None = None) -> int:
        """Edges whose endpoints fall in different blocks (self-loops never cut)."""
        owner = self.owner
        cut = 0
        for u in structure.iter_nodes():
            ou = owner[u]
            for w in structure.neighbors(u, meter):
                if u < w and owner[w] != ou:
                    cut += 1
        return cut


def ldd(structure, beta: float, seed: int,
        meter: CostMeter | None = None) -> LDDResult:
    """(beta, O(log n / beta)) decomposition via staggered parallel BFS.

    Each node draws a deterministic Exp(beta) delay, capped at
    cap = 4 ln(n)/beta, and its BFS wakes at start time cap - delay, so
    the largest delays start first (the exponential-shift rule; a node
    ends up in the block whose source maximizes delay - distance).  At
    iteration i every live BFS advances one level, then still-unclaimed
    nodes with start time in [i, i+1) become block sources.  A node
    claimed by several blocks in one iteration goes to the lowest block
    id.  One write is charged per node (its owner).
    """
    if not (0.0 < beta < 1.0):
        raise ValueError("beta must be in (0, 1)")
    nodes = list(structure.iter_nodes())
    n = len(nodes)
    if n == 0:
        return LDDResult(beta, {}, [], 0)
    cap = 4.0 * math.log(max(n, 2)) / beta
    buckets: dict[int, list[int]] = {}
    for v in nodes:
        d = exponential(seed + _LDD_SALT, v, beta)
        if d > cap:
            d = cap
        buckets.setdefault(int(cap - d), []).append(v)
    owner: dict[int, int] = {}
    sources: list[int] = []
    frontier: list[int] = []
    remaining = n
    i = 0
    while remaining > 0 or frontier:
        # advance all live BFS one level, lowest block id wins a contested node
        claims: dict[int, int] = {}
        for u in frontier:
            ou = owner[u]
            for w in structure.neighbors(u, meter):
                if w == u or w in owner:
                    continue
                prev = claims.get(w)
                if prev is None or ou < prev:
                    claims[w] = ou
        claimed = sorted(claims)
        for w in claimed:
            owner[w] = claims[w]
            remaining -= 1
            if meter is not None:
                meter.record_write(1)
        # then start BFS from still-unclaimed nodes whose delay bucket is i
        started = []
        for v in sorted(buckets.get(i, ())):
            if v not in owner:
                owner[v] = v
                sources.append(v)
                started.append(v)
                remaining -= 1
                if meter is not None:
                    meter.record_write(1)
        frontier = claimed + started
        i += 1
    sources.sort()
    return LDDResult(beta, owner, sources, i)


@dataclass
class ConnectivityResult:
    labels: dict[int, int]                 # node -> component label (min node id)
    forest: list[tuple[int, int]]          # spanning forest edges
    num_components: int
    ldd_result: LDDResult
    cross_count: int


def connectivity_linear(structure, beta: float, seed: int,
                        meter: CostMeter | None = None) -> ConnectivityResult:
    """Write-efficient connectivity: LDD, block trees, contract, union-find.

    Writes: one owner word per node (LDD), one parent word per non-source
    node (block trees), two words per filtered cross edge, one label per
    node.  The contracted union-find itself is local scratch.
    """
    res = ldd(structure, beta, seed, meter)
    owner = res.owner
    forest: list[tuple[int, int]] = []
    # block spanning trees by BFS inside each block
    visited: set[int] = set()
    for src in res.sources:
        visited.add(src)
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for w in structure.neighbors(u, meter):
                    if w == u or w in visited or owner[w] != src:
                        continue
                    visited.add(w)
                    forest.append((u, w))
                    if meter is not None:
                        meter.record_write(1)
                    nxt.append(w)
            frontier = nxt
    # filter cross edges into a compacted array
    cross: list[tuple[int, int, int, int]] = []
    for u in structure.iter_nodes():
        ou = owner[u]
        for w in structure.neighbors(u, meter):
            if u < w and owner[w] != ou:
                cross.append((ou, owner[w], u, w))
                if meter is not None:
                    meter.record_write(2)
    # spanning forest of the contracted graph: plain union-find (scratch)
    parent = {s: s for s in res.sources}

    def find(x):
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            parent[x], x = r, parent[x]
        return r

    for a, b, u, w in cross:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            forest.append((u, w))
            if meter is not None:
                meter.record_write(1)
    comp_min: dict[int, int] = {}
    for s in res.sources:
        r = find(s)
        if r not in comp_min or s < comp_min[r]:
            comp_min[r] = s
    labels: dict[int, int] = {}
    for v in owner:
        labels[v] = comp_min[find(owner[v])]
        if meter is not None:
            meter.record_write(1)
    return ConnectivityResult(labels, forest, len(comp_min), res, len(cross))


@dataclass
class CCOracle:
    """Connectivity oracle: decomposition plus one label per center."""

    decomp: Decomposition
    labels: dict[int, int]                  # center -> component label
    forest: list[tuple[int, int]] = field(default_factory=list)

    def component_label(self, g, v: int, meter: CostMeter | None = None) -> int:
        """Component label of v; zero writes.

        Centers resolve through the stored label; a small component with
        an implicit center resolves by exhausting the component in local
        memory and returns its smallest vertex id.
        """
        c, members = rho_with_members(self.decomp, g, v, meter)
        if members is not None:
            return members[0]
        if meter is not None:
            meter.reads += 1
        return self.labels[c]

    def connected(self, g, u: int, v: int, meter: CostMeter | None = None) -> bool:
        return self.component_label(g, u, meter) == self.component_label(g, v, meter)

    def to_text(self) -> str:
        out = [self.decomp.to_text().rstrip("\n")]
        out.append("labels")
        out.extend(f"{c} {self.labels[c]}" for c in sorted(self.labels))
        out.append("")
        return "\n".join(out)

    @classmethod
    def from_text(cls, text: str) -> "CCOracle":
        lines = text.splitlines()
        split = lines.index("labels")
        decomp = Decomposition.from_text("\n".join(lines[:split]))
        labels = {}
        for ln in lines[split + 1:]:
            if ln.strip():
                c, lab = (int(x) for x in ln.split())
                labels[c] = lab
        return cls(decomp, labels)


def build_cc_oracle(g, k: int, seed: int, meter: CostMeter | None = None,
                    par_centers: bool = False) -> CCOracle:
    """Sublinear-write connectivity oracle over the implicit cluster graph."""
    decomp = build_decomposition(g, k, seed, meter, par_centers=par_centers)
    view = ClusterGraphView(g, decomp)
    res = connectivity_linear(view, 1.0 / k, seed, meter)
    return CCOracle(decomp, res.labels, res.forest)
