"""Euler-tour biconnectivity machinery and the BC labeling.

The BC labeling represents all biconnected components of a connected
multigraph in O(n) words: one label per non-root vertex plus one head
vertex per label class.  Construction: root a DFS spanning tree, compute
Euler-tour ranks and subtree low/high reach values, remove the
separating tree edges, and relabel connectivity over what remains.  Each
label class together with its head is exactly one biconnected component.

Two conventions worth noting:

* A nontree edge parallel to a tree edge contributes nothing to the
  reach values w(v); the 2-cycle it forms is handled by the multiplicity
  rule in the bridge query instead.  Nontree edges between
  ancestor-unrelated vertices join their endpoints' classes directly;
  ancestor-descendant nontree edges are implied by the reach values and
  must not join anything themselves.
* Every root edge separates (the root's Euler interval contains all
  reach values), so the root is never inside a label class; the public
  critical-edge list excludes root edges, matching the articulation-point
  rule which treats the root separately.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph
from .meter import CostMeter


class DisconnectedGraphError(ValueError):
    pass


@dataclass
class EulerData:
    """Rooted spanning tree with Euler ranks and subtree reach values."""

    root: int
    order: list[int]                  # DFS preorder
    parent: dict[int, int | None]
    first: dict[int, int]             # vertex-appearance tour ranks
    last: dict[int, int]
    w_min: dict[int, int]
    w_max: dict[int, int]
    low: dict[int, int]
    high: dict[int, int]

    def is_ancestor(self, a, b) -> bool:
        return self.first[a] <= self.first[b] and self.last[b] <= self.last[a]

    def tree_edges(self):
        for v in self.order:
            p = self.parent[v]
            if p is not None:
                yield (p, v)


def _dfs_tree(adj_fn, root, meter: CostMeter | None):
    """DFS spanning tree with sorted neighbor order; self-loops skipped.

    Returns (order, parent, first, last) where first/last are ranks on
    the vertex-appearance Euler tour (a leaf has first == last).
    """
    parent: dict[int, int | None] = {root: None}
    order = [root]
    first = {root: 0}
    last = {}
    rank = 0
    stack: list[tuple[int, list]] = [(root, list(adj_fn(root, meter)))]
    ptrs = [0]
    while stack:
        v, nbrs = stack[-1]
        i = ptrs[-1]
        advanced = False
        while i < len(nbrs):
            w = nbrs[i]
            i += 1
            if w == v or w in parent:
                continue
            ptrs[-1] = i
            parent[w] = v
            order.append(w)
            rank += 1
            first[w] = rank
            stack.append((w, list(adj_fn(w, meter))))
            ptrs.append(0)
            advanced = True
            break
        if not advanced:
            ptrs[-1] = i
            last[v] = max(first[v], rank)
            stack.pop()
            ptrs.pop()
            if stack:
                rank += 1  # parent reappears on the tour
    return order, parent, first, last


def compute_euler_data(adj_fn, root, meter: CostMeter | None = None) -> EulerData:
    """Tree + reach values over the component of `root`.

    adj_fn(u, meter) must return the sorted neighbor token list of u.
    w excludes self-loops and any neighbor joined to u by a tree edge
    (parallel copies of tree edges therefore never count).
    """
    order, parent, first, last = _dfs_tree(adj_fn, root, meter)
    children: dict[int, list[int]] = {v: [] for v in order}
    for v in order:
        p = parent[v]
        if p is not None:
            children[p].append(v)
    w_min: dict[int, int] = {}
    w_max: dict[int, int] = {}
    for u in order:
        lo = hi = first[u]
        prev = None
        for x in adj_fn(u, meter):
            if x == u or x == prev:
                prev = x
                continue
            prev = x
            if parent.get(x) == u or parent[u] == x:
                continue  # tree neighbor: no copy of this pair counts
            fx = first[x]
            if fx < lo:
                lo = fx
            if fx > hi:
                hi = fx
        w_min[u] = lo
        w_max[u] = hi
    low = dict(w_min)
    high = dict(w_max)
    for u in reversed(order):
        p = parent[u]
        if p is not None:
            if low[u] < low[p]:
                low[p] = low[u]
            if high[u] > high[p]:
                high[p] = high[u]
    return EulerData(root, order, parent, first, last, w_min, w_max, low, high)


def euler_low_high(g: Graph, root: int | None = None,
                   meter: CostMeter | None = None) -> EulerData:
    """EulerData for a connected graph; charges O(n) committed writes."""
    if root is None:
        root = 0
    data = compute_euler_data(lambda u, m: g.neighbors(u, m), root, meter)
    if len(data.order) != g.n:
        raise DisconnectedGraphError(
            f"graph is disconnected: reached {len(data.order)} of {g.n} vertices")
    if meter is not None:
        meter.record_write(5 * g.n)  # parent, first, last, low, high
    return data


def critical_edges(euler: EulerData) -> list[tuple[int, int]]:
    """Tree edges (v, u) with first(v) <= low(u) and high(u) <= last(v).

    Root edges are excluded: the rule is tied to the articulation
    condition, which never applies to the root directly.
    """
    out = []
    for v in euler.order:
        p = euler.parent[v]
        if p is None or p == euler.root:
            continue
        if euler.first[p] <= euler.low[v] and euler.high[v] <= euler.last[p]:
            out.append((p, v))
    out.sort()
    return out


class _ScratchUF:
    __slots__ = ("parent",)

    def __init__(self, ids):
        self.parent = {x: x for x in ids}

    def find(self, x):
        p = self.parent
        r = x
        while p[r] != r:
            r = p[r]
        while p[x] != r:
            p[x], x = r, p[x]
        return r

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class BCLabeling:
    """Vertex labels l and component heads r over a rooted spanning tree."""

    root: int
    l: dict[int, int]                  # non-root vertex -> label in 1..C
    r: dict[int, int]                  # label -> component head vertex
    members: dict[int, list[int]] = field(default_factory=dict)
    parent: dict[int, int | None] | None = None
    first: dict[int, int] | None = None
    _head_count: dict[int, int] | None = None

    @property
    def num_components(self) -> int:
        return len(self.r)

    def _heads(self) -> dict[int, int]:
        if self._head_count is None:
            hc: dict[int, int] = {}
            for lab, h in self.r.items():
                hc[h] = hc.get(h, 0) + 1
            self._head_count = hc
        return self._head_count

    # -- queries (O(1) operations, no writes) ------------------------------

    def is_articulation(self, v: int) -> bool:
        """Root: head of >= 2 components; any other vertex: head of >= 1."""
        c = self._heads().get(v, 0)
        return c >= 2 if v == self.root else c >= 1

    def articulation_points(self) -> set[int]:
        return {v for v in self._heads() if self.is_articulation(v)}

    def bridge_candidates(self) -> list[tuple[int, int]]:
        """(head, member) pairs of single-vertex component classes."""
        out = []
        for lab, mem in self.members.items():
            if len(mem) == 1:
                out.append((self.r[lab], mem[0]))
        out.sort()
        return out

    def same_bcc(self, u: int, v: int) -> bool:
        if u == v:
            return True
        if u == self.root:
            return v in self.l and self.r[self.l[v]] == u
        if v == self.root:
            return u in self.l and self.r[self.l[u]] == v
        lu, lv = self.l[u], self.l[v]
        return lu == lv or self.r[lu] == v or self.r[lv] == u

    def is_bridge(self, g: Graph, u: int, v: int) -> bool:
        """True iff {u,v} is the only edge joining a single-vertex class
        to its head."""
        mult = g.multiplicity(u, v)
        if mult == 0:
            raise ValueError(f"edge ({u},{v}) not in graph")
        if u == v or mult >= 2:
            return False
        return self._is_bridge_pair(u, v)

    def _is_bridge_pair(self, u: int, v: int) -> bool:
        if self.parent is None:
            raise ValueError("labeling lacks tree data")
        child = None
        if self.parent.get(v) == u:
            child = v
        elif self.parent.get(u) == v:
            child = u
        if child is None:
            return False  # nontree edges lie on a cycle
        other = u if child == v else v
        lab = self.l[child]
        return len(self.members[lab]) == 1 and self.r[lab] == other

    def vertex_label(self, v: int) -> int | None:
        return self.l.get(v)

    def edge_bcc_label(self, g: Graph, u: int, v: int) -> int | None:
        """Label of the endpoint further from the root; self-loops take
        the vertex's own label (None only for a root self-loop)."""
        if g.multiplicity(u, v) == 0:
            raise ValueError(f"edge ({u},{v}) not in graph")
        if u == v:
            return self.l.get(u)
        if u == self.root:
            return self.l[v]
        if v == self.root:
            return self.l[u]
        if self.first is not None:
            deeper = u if self.first[u] >= self.first[v] else v
            return self.l[deeper]
        lu, lv = self.l[u], self.l[v]
        if lu == lv:
            return lu
        return lv if self.r[lv] == u else lu

    def block_cut_tree(self) -> list[tuple[tuple[str, int], tuple[str, int]]]:
        """Bipartite tree edges after dropping degree-1 vertex nodes."""
        edges: list[tuple[tuple[str, int], tuple[str, int]]] = []
        degree: dict[int, int] = {}
        for v, lab in self.l.items():
            edges.append((("v", v), ("c", lab)))
            degree[v] = degree.get(v, 0) + 1
        for lab, h in self.r.items():
            edges.append((("c", lab), ("v", h)))
            degree[h] = degree.get(h, 0) + 1
        return [e for e in edges
                if not (e[0][0] == "v" and degree[e[0][1]] == 1)
                and not (e[1][0] == "v" and degree[e[1][1]] == 1)]

    def bcc_vertex_sets(self) -> list[set[int]]:
        return [set(mem) | {self.r[lab]} for lab, mem in sorted(self.members.items())]

    # -- serialization -------------------------------------------------------

    def to_text(self) -> str:
        n = len(self.l) + 1
        lines = [f"{n} {len(self.r)} {self.root}"]
        lines.extend(f"{v} {self.l[v]}" for v in sorted(self.l))
        lines.extend(f"{lab} {self.r[lab]}" for lab in sorted(self.r))
        lines.append("")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "BCLabeling":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n, c, root = (int(x) for x in lines[0].split())
        l = {}
        for ln in lines[1:n]:
            v, lab = (int(x) for x in ln.split())
            l[v] = lab
        r = {}
        for ln in lines[n:n + c]:
            lab, h = (int(x) for x in ln.split())
            r[lab] = h
        return cls.from_raw(root, l, r)

    @classmethod
    def from_raw(cls, root: int, l: dict[int, int], r: dict[int, int]) -> "BCLabeling":
        members: dict[int, list[int]] = {}
        for v, lab in l.items():
            members.setdefault(lab, []).append(v)
        for lst in members.values():
            lst.sort()
        return cls(root, l, r, members)


def bc_labeling_from_euler(euler: EulerData, adj_fn,
                           meter: CostMeter | None = None) -> BCLabeling:
    """Relabel connectivity after removing separating tree edges.

    Separating edges: every root edge, plus tree edges passing the
    Euler-containment rule.  Ancestor-unrelated nontree edges union their
    endpoints' classes (they certify a shared cycle); ancestor-related
    nontree edges are already reflected in low/high.
    """
    order, parent, first, last = euler.order, euler.parent, euler.first, euler.last
    uf = _ScratchUF(v for v in order if v != euler.root)
    for v in order:
        p = parent[v]
        if p is None or p == euler.root:
            continue
        if not (first[p] <= euler.low[v] and euler.high[v] <= last[p]):
            uf.union(v, p)
    for u in order:
        prev = None
        for x in adj_fn(u, meter):
            if x <= u or x == prev:  # each distinct pair once
                prev = x
                continue
            prev = x
            if parent.get(x) == u or parent[u] == x:
                continue
            if first[u] <= first[x] and last[x] <= last[u]:
                continue  # u is an ancestor of x
            if first[x] <= first[u] and last[u] <= last[x]:
                continue  # x is an ancestor of u
            uf.union(u, x)
    l: dict[int, int] = {}
    r: dict[int, int] = {}
    members: dict[int, list[int]] = {}
    rep_label: dict[int, int] = {}
    next_label = 1
    for v in sorted(order):  # dense labels in ascending-id first-touch order
        if v == euler.root:
            continue
        rep = uf.find(v)
        lab = rep_label.get(rep)
        if lab is None:
            lab = next_label
            next_label += 1
            rep_label[rep] = lab
        l[v] = lab
        members.setdefault(lab, []).append(v)
    for lab, mem in members.items():
        top = min(mem, key=lambda x: first[x])
        r[lab] = parent[top]
        mem.sort()
    if meter is not None:
        meter.record_write(len(l) + len(r))
    return BCLabeling(euler.root, l, r, members, parent, first)


def build_bc_labeling(g: Graph, meter: CostMeter | None = None,
                      root: int | None = None) -> BCLabeling:
    """BC labeling of a connected graph (O(n) writes, reads metered)."""
    euler = euler_low_high(g, root, meter)
    return bc_labeling_from_euler(euler, lambda u, m: g.neighbors(u, m), meter)


class BCForest:
    """Per-component BC labelings for possibly-disconnected graphs.

    Labels are namespaced by the component root so they stay unique
    across the whole graph.
    """

    def __init__(self, g: Graph, meter: CostMeter | None = None):
        self.comp_root: dict[int, int] = {}
        self.labelings: dict[int, BCLabeling] = {}
        for v in range(g.n):
            if v in self.comp_root:
                continue
            euler = compute_euler_data(lambda u, m: g.neighbors(u, m), v, meter)
            for u in euler.order:
                self.comp_root[u] = v
            if meter is not None:
                meter.record_write(5 * len(euler.order))
            self.labelings[v] = bc_labeling_from_euler(
                euler, lambda u, m: g.neighbors(u, m), meter)

    def labeling_of(self, v: int) -> BCLabeling:
        return self.labelings[self.comp_root[v]]

    def is_articulation(self, v: int) -> bool:
        return self.labeling_of(v).is_articulation(v)

    def same_bcc(self, u: int, v: int) -> bool:
        if self.comp_root[u] != self.comp_root[v]:
            return False
        return self.labeling_of(u).same_bcc(u, v)

    def is_bridge(self, g: Graph, u: int, v: int) -> bool:
        return self.labeling_of(u).is_bridge(g, u, v)

    def edge_bcc_label(self, g: Graph, u: int, v: int):
        root = self.comp_root[u]
        lab = self.labelings[root].edge_bcc_label(g, u, v)
        return None if lab is None else (root, lab)

    def bridges(self, g: Graph) -> set[tuple[int, int]]:
        out = set()
        for u, v in g.distinct_edges():
            if u != v and self.is_bridge(g, u, v):
                out.add((u, v))
        return out

    def articulation_points(self) -> set[int]:
        out: set[int] = set()
        for lab in self.labelings.values():
            out |= lab.articulation_points()
        return out
