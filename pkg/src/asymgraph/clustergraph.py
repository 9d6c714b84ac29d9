"""Implicit multigraph over cluster centers, its spanning forest, and LCA.

Edges between centers are never stored: listing a center's neighbors
explores its cluster in local memory and records the owners of boundary
vertices.  The spanning forest (cluster tree) is the one persistent
structure; Euler ranks and the sparse-table LCA index are optional
add-ons charged only when built.
"""
from __future__ import annotations

from contextlib import nullcontext

from .decomposition import Decomposition, _charged_contains, _rho_walk
from .meter import CostMeter


class DisjointCentersError(ValueError):
    """LCA query across different cluster-tree components."""


def explore_cluster(g, decomp: Decomposition, s: int,
                    meter: CostMeter | None = None):
    """(members, boundary) of cluster s, all in local memory.

    `members` is the cluster in priority search order; `boundary` lists
    one (u, w, owner_of_w) triple per inter-cluster edge copy incident to
    the cluster.
    """
    members = [s]
    member_set = {s}
    visited = {s}
    boundary: list[tuple[int, int, int]] = []
    rho_memo: dict[int, int] = {s: s}
    frontier = [s]
    alloc = meter.local_alloc if meter is not None else None
    if alloc:
        alloc(4)
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u, meter):
                if w == u:
                    continue
                c = rho_memo.get(w)
                if c is None:
                    c = _rho_walk(decomp, g, w, meter)[0]
                    rho_memo[w] = c
                    if alloc:
                        alloc(2)
                if c != s:
                    boundary.append((u, w, c))
                    if alloc:
                        alloc(3)
                    continue
                if w not in visited:
                    visited.add(w)
                    member_set.add(w)
                    members.append(w)
                    nxt.append(w)
                    if alloc:
                        alloc(4)
        frontier = nxt
    return members, boundary


def center_neighbors(g, decomp: Decomposition, s: int,
                     meter: CostMeter | None = None) -> list[int]:
    """Deduplicated sorted list of centers adjacent to s; zero writes."""
    if not _charged_contains(decomp.centers, s, meter):
        raise ValueError(f"{s} is not a center")
    with (meter.local_scope() if meter is not None else nullcontext()):
        _, boundary = explore_cluster(g, decomp, s, meter)
        return sorted({t for _, _, t in boundary})


class ClusterGraphView:
    """Node protocol over centers; neighbors computed via cluster walks."""

    __slots__ = ("g", "decomp")

    def __init__(self, g, decomp: Decomposition):
        self.g = g
        self.decomp = decomp

    def num_nodes(self) -> int:
        return len(self.decomp.centers)

    def iter_nodes(self):
        return iter(self.decomp.centers)

    def neighbors(self, s: int, meter: CostMeter | None = None) -> list[int]:
        return center_neighbors(self.g, self.decomp, s, meter)


class ClusterTree:
    """Rooted spanning forest of the cluster graph.

    parent maps every center to its tree parent (roots map to
    themselves).  Euler first/last ranks and the sparse-table LCA index
    are built on demand so write-lean callers can skip them.
    """

    __slots__ = ("parent", "root_of", "order", "first", "last", "depth",
                 "_euler", "_euler_depth", "_focc", "_sparse", "_log")

    def __init__(self, parent: dict[int, int], root_of: dict[int, int],
                 order: list[int]):
        self.parent = parent
        self.root_of = root_of
        self.order = order
        self.first: dict[int, int] | None = None
        self.last: dict[int, int] | None = None
        self.depth: dict[int, int] | None = None
        self._euler = None
        self._euler_depth = None
        self._focc = None
        self._sparse = None
        self._log = None

    def roots(self) -> list[int]:
        return sorted({r for r in self.root_of.values()})

    def children_map(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {c: [] for c in self.parent}
        for c, p in self.parent.items():
            if p != c:
                ch[p].append(c)
        for lst in ch.values():
            lst.sort()
        return ch

    # -- Euler ranks ----------------------------------------------------------

    def build_euler(self, meter: CostMeter | None = None) -> None:
        """Enter/exit tour stamps: first(v) < last(v), intervals nest."""
        if self.first is not None:
            return
        ch = self.children_map()
        first: dict[int, int] = {}
        last: dict[int, int] = {}
        depth: dict[int, int] = {}
        focc: dict[int, int] = {}
        euler: list[int] = []       # vertex-appearance tour, for RMQ-LCA
        euler_depth: list[int] = []
        stamp = 0
        for root in self.roots():
            depth[root] = 0
            first[root] = stamp
            stamp += 1
            focc[root] = len(euler)
            euler.append(root)
            euler_depth.append(0)
            stack = [(root, iter(ch[root]))]
            while stack:
                v, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    last[v] = stamp
                    stamp += 1
                    stack.pop()
                    if stack:
                        p = stack[-1][0]
                        euler.append(p)
                        euler_depth.append(depth[p])
                    continue
                depth[nxt] = depth[v] + 1
                first[nxt] = stamp
                stamp += 1
                focc[nxt] = len(euler)
                euler.append(nxt)
                euler_depth.append(depth[nxt])
                stack.append((nxt, iter(ch[nxt])))
        self.first = first
        self.last = last
        self.depth = depth
        self._focc = focc
        self._euler = euler
        self._euler_depth = euler_depth
        if meter is not None:
            meter.record_write(2 * len(self.parent))  # first + last per center

    # -- LCA -----------------------------------------------------------------

    def build_lca_index(self, meter: CostMeter | None = None) -> None:
        """Sparse-table range-minimum over the Euler depth array."""
        if self._sparse is not None:
            return
        self.build_euler(meter)
        m = len(self._euler)
        log = [0] * (m + 1)
        for i in range(2, m + 1):
            log[i] = log[i // 2] + 1
        table = [list(range(m))]
        j = 1
        while (1 << j) <= m:
            prev = table[j - 1]
            half = 1 << (j - 1)
            row = []
            ed = self._euler_depth
            for i in range(m - (1 << j) + 1):
                a, b = prev[i], prev[i + half]
                row.append(a if ed[a] <= ed[b] else b)
            table.append(row)
            j += 1
        self._sparse = table
        self._log = log
        if meter is not None:
            words = sum(len(r) for r in table) + len(log)
            meter.record_write(words)

    def lca(self, a: int, b: int, meter: CostMeter | None = None) -> int:
        if self.root_of[a] != self.root_of[b]:
            raise DisjointCentersError(f"{a} and {b} are in different components")
        if self._sparse is None:
            self.build_lca_index(meter)
        if meter is not None:
            meter.reads += 4
        i, j = self._focc[a], self._focc[b]
        if i > j:
            i, j = j, i
        s = self._log[j - i + 1]
        x = self._sparse[s][i]
        y = self._sparse[s][j - (1 << s) + 1]
        return self._euler[x] if self._euler_depth[x] <= self._euler_depth[y] else self._euler[y]

    def lca_walk(self, a: int, b: int, meter: CostMeter | None = None) -> int:
        """Index-free LCA by parent walking; O(depth) reads, zero writes."""
        if self.root_of[a] != self.root_of[b]:
            raise DisjointCentersError(f"{a} and {b} are in different components")
        da, db = self.depth_walk(a, meter), self.depth_walk(b, meter)
        while da > db:
            a = self._parent_read(a, meter)
            da -= 1
        while db > da:
            b = self._parent_read(b, meter)
            db -= 1
        while a != b:
            a = self._parent_read(a, meter)
            b = self._parent_read(b, meter)
        return a

    def _parent_read(self, x: int, meter: CostMeter | None) -> int:
        if meter is not None:
            meter.reads += 1
        return self.parent[x]

    def depth_walk(self, x: int, meter: CostMeter | None = None) -> int:
        d = 0
        while True:
            p = self._parent_read(x, meter)
            if p == x:
                return d
            x = p
            d += 1

    def in_subtree(self, x: int, top: int, meter: CostMeter | None = None) -> bool:
        """Is x inside the subtree rooted at top?  Parent walk, zero writes."""
        while True:
            if x == top:
                return True
            p = self._parent_read(x, meter)
            if p == x:
                return False
            x = p


def build_cluster_tree(g, decomp: Decomposition, meter: CostMeter | None = None,
                       persist_euler: bool = True,
                       with_lca: bool = True) -> ClusterTree:
    """BFS spanning forest of the cluster graph, min-id center per root.

    Charges one write per center for the parent array; Euler ranks and
    the LCA index are charged only when requested.
    """
    parent: dict[int, int] = {}
    root_of: dict[int, int] = {}
    order: list[int] = []
    for s in decomp.centers:
        if s in parent:
            continue
        parent[s] = s
        root_of[s] = s
        order.append(s)
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for t in center_neighbors(g, decomp, u, meter):
                    if t not in parent:
                        parent[t] = u
                        root_of[t] = s
                        order.append(t)
                        nxt.append(t)
            frontier = nxt
    if meter is not None:
        meter.record_write(len(parent))
    tree = ClusterTree(parent, root_of, order)
    if persist_euler:
        tree.build_euler(meter)
    if with_lca:
        tree.build_lca_index(meter)
    return tree
