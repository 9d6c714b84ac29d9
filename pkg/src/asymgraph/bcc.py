"""Sublinear-write biconnectivity oracle over the implicit decomposition.

Pipeline: build the cluster tree, BC-label the cluster multigraph, then
for every cluster build its local graph (cluster vertices plus one outer
vertex per cluster-tree edge, with boundary edges redirected to outers
and same-label neighbor clusters chained).  The oracle persists, per
cluster: its tree parent, its cluster-level label, three packed bits
(root biconnectivity of its cluster root inside the parent's local
graph, the 2-edge-connected analogue, and whether its parent edge is a
cluster-graph bridge), a dense label for the spanning biconnected
component its parent edge belongs to, and a prefix offset for the
biconnected components lying entirely inside it.  Everything else is
recomputed in local memory at query time; queries never write.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from contextlib import nullcontext
from dataclasses import dataclass, field

from .bclabel import BCLabeling, bc_labeling_from_euler, compute_euler_data, EulerData
from .clustergraph import ClusterTree, build_cluster_tree, explore_cluster
from .decomposition import Decomposition, build_decomposition, rho_with_members
from .graph import Graph
from .bounded import BoundedView
from .groundtruth import UnionFind
from .meter import CostMeter


class _MultiAdj:
    """Small multigraph held in local memory: sorted neighbor token lists."""

    __slots__ = ("adj",)

    def __init__(self, edges):
        adj: dict[int, list[int]] = {}
        for a, b in edges:
            adj.setdefault(a, []).append(b)
            if b != a:
                adj.setdefault(b, []).append(a)
            else:
                adj[a].append(a)
        for lst in adj.values():
            lst.sort()
        self.adj = adj

    def ensure(self, node):
        self.adj.setdefault(node, [])

    def nodes(self):
        return sorted(self.adj)

    def neighbors(self, u, meter=None):
        return self.adj[u]

    def mult(self, u, v):
        lst = self.adj.get(u, ())
        if u == v:
            return (bisect_right(lst, v) - bisect_left(lst, v)) // 2
        return bisect_right(lst, v) - bisect_left(lst, v)

    def distinct_edges(self):
        for u in self.nodes():
            prev = None
            for v in self.adj[u]:
                if v >= u and v != prev:
                    yield (u, v)
                    prev = v


def _labeling_for(adj: _MultiAdj, root) -> BCLabeling:
    euler = compute_euler_data(adj.neighbors, root, None)
    return bc_labeling_from_euler(euler, adj.neighbors, None)


def _two_ecc_labels(adj: _MultiAdj, labeling: BCLabeling) -> dict[int, int]:
    """Connected components after removing bridges of the local multigraph."""
    uf = UnionFind(adj.nodes())
    for u, v in adj.distinct_edges():
        if u == v:
            continue
        if adj.mult(u, v) == 1 and labeling._is_bridge_pair(u, v):
            continue
        uf.union(u, v)
    out = {}
    rep_min: dict[int, int] = {}
    for v in adj.nodes():
        r = uf.find(v)
        if r not in rep_min or v < rep_min[r]:
            rep_min[r] = v
    for v in adj.nodes():
        out[v] = rep_min[uf.find(v)]
    return out


@dataclass
class LocalGraph:
    """Per-cluster graph (V_i + outer vertices, redirected edges)."""

    cluster: int | None                  # center; None for an implicit component
    members: list[int]                   # V_i
    outers: list[int]                    # V_o, sorted
    adj: _MultiAdj                       # E'
    root: int                            # tree root of the local labeling
    cluster_root: int | None             # r_s (in V_i); None for root clusters
    up_outer: int | None                 # b_s (in parent cluster); None for root clusters
    child_inner: dict[int, int]          # child center -> endpoint inside this cluster
    child_outer: dict[int, int]          # child center -> child's cluster root
    labeling: BCLabeling = field(repr=False, default=None)
    two_ecc: dict[int, int] = field(repr=False, default=None)

    def finish(self):
        self.labeling = _labeling_for(self.adj, self.root)
        self.two_ecc = _two_ecc_labels(self.adj, self.labeling)
        return self

    def same_bcc(self, u, v) -> bool:
        return self.labeling.same_bcc(u, v)

    def two_edge_ok(self, u, v) -> bool:
        return self.two_ecc[u] == self.two_ecc[v]

    def lg_is_bridge(self, u, v) -> bool:
        if u == v or self.adj.mult(u, v) >= 2:
            return False
        return self.labeling._is_bridge_pair(u, v)

    def edge_class(self, u, v) -> int:
        """Label of the local BCC containing edge {u,v}."""
        lab = self.labeling
        if u == lab.root:
            return lab.l[v]
        if v == lab.root:
            return lab.l[u]
        deeper = u if lab.first[u] >= lab.first[v] else v
        return lab.l[deeper]

    def attachment_classes(self) -> dict[int | None, int]:
        """eps map: child center -> local class of its tree-edge image;
        key None -> class of this cluster's own parent-edge image."""
        eps: dict[int | None, int] = {}
        for x, inner in self.child_inner.items():
            eps[x] = self.edge_class(inner, self.child_outer[x])
        if self.cluster_root is not None:
            eps[None] = self.edge_class(self.cluster_root, self.up_outer)
        return eps

    def internal_classes(self) -> list[int]:
        """Local BCC labels lying entirely inside V_i, in label order."""
        outer_set = set(self.outers)
        out = []
        for lab in sorted(self.labeling.members):
            mem = self.labeling.members[lab]
            if any(x in outer_set for x in mem):
                continue
            if self.labeling.r[lab] in outer_set:
                continue
            out.append(lab)
        return out

    def root_biconnectivity(self) -> dict[int, int]:
        """Bit per outer vertex: shares a biconnected component with the
        upward attach (for root clusters: with the component anchor)."""
        target = self.up_outer if self.up_outer is not None else self.root
        return {o: int(self.same_bcc(o, target)) for o in self.outers}


def build_local_graph(g, decomp: Decomposition, tree: ClusterTree, s: int,
                      cluster_labels: dict[int, int],
                      meter: CostMeter | None = None,
                      explored=None) -> LocalGraph:
    """Assemble the local graph of cluster s entirely in local memory.

    Edge categories: (1) internal edges plus the canonical original edge
    of every incident cluster-tree edge; (2) chains joining outer
    vertices of same-label neighbor clusters in ascending id order;
    (3) every other boundary edge redirected to the outer vertex whose
    cluster-tree subtree contains the far endpoint's cluster (parent-side
    outer if none).
    """
    if explored is not None:
        members, boundary = explored
    else:
        members, boundary = explore_cluster(g, decomp, s, meter)
    member_set = set(members)
    parent = tree.parent
    p = parent[s]

    # canonical original edge per incident cluster-tree edge
    by_t: dict[int, list[tuple[int, int]]] = {}
    for u, w, t in boundary:
        key = (min(u, w), max(u, w))
        cur = by_t.get(t)
        if cur is None:
            by_t[t] = [(key[0], key[1], u, w)]  # min pair + orientation
        else:
            if key < (cur[0][0], cur[0][1]):
                by_t[t] = [(key[0], key[1], u, w)]
    child_inner: dict[int, int] = {}
    child_outer: dict[int, int] = {}
    cluster_root = None
    up_outer = None
    for t, rec in by_t.items():
        _a, _b, u, w = rec[0]
        if meter is not None:
            meter.reads += 1  # parent word of t
        if t != s and parent.get(t) == s:
            child_inner[t] = u
            child_outer[t] = w
        elif t == p and p != s:
            cluster_root = u
            up_outer = w

    # resolve every boundary edge to an outer vertex
    resolve_cache: dict[int, int | None] = {}

    def resolve(t: int) -> int | None:
        if t in resolve_cache:
            return resolve_cache[t]
        x = t
        while True:
            if meter is not None:
                meter.reads += 1
            px = parent[x]
            if px == s:
                o = child_outer[x]
                break
            if px == x:
                o = up_outer  # outside this cluster's subtree
                break
            x = px
        resolve_cache[t] = o
        return o

    edges: list[tuple[int, int]] = []
    for u in members:
        for w in g.neighbors(u, meter):
            if w in member_set and u <= w and w != u:
                edges.append((u, w))
    for u, w, t in boundary:
        o = resolve(t)
        edges.append((u, o))

    # category 2: chain outer vertices of same-label tree neighbors
    groups: dict[int, list[int]] = {}
    for t, y in child_outer.items():
        groups.setdefault(cluster_labels[t], []).append(y)
        if meter is not None:
            meter.reads += 1
    if p != s:
        groups.setdefault(cluster_labels[s], []).append(up_outer)
        if meter is not None:
            meter.reads += 1
    for lab in sorted(groups):
        outs = sorted(groups[lab])
        for a, b in zip(outs, outs[1:]):
            edges.append((a, b))

    outers = sorted(set(child_outer.values()) | ({up_outer} if up_outer is not None else set()))
    adj = _MultiAdj(edges)
    for v in members:
        adj.ensure(v)
    root = cluster_root if cluster_root is not None else min(members)
    lg = LocalGraph(s, sorted(members), outers, adj, root,
                    cluster_root, up_outer, child_inner, child_outer)
    return lg.finish()


def root_biconnectivity(lg: LocalGraph) -> dict[int, int]:
    return lg.root_biconnectivity()


def _implicit_local_graph(g, members: list[int],
                          meter: CostMeter | None = None) -> LocalGraph:
    member_set = set(members)
    edges = []
    for u in members:
        for w in g.neighbors(u, meter):
            if w in member_set and u < w:
                edges.append((u, w))
    adj = _MultiAdj(edges)
    for v in members:
        adj.ensure(v)
    lg = LocalGraph(None, sorted(members), [], adj, min(members),
                    None, None, {}, {})
    return lg.finish()


@dataclass
class ClusterRecord:
    """Persisted per-cluster payload (parent lives in the cluster tree)."""

    label: int = 0            # cluster-level BC label of the parent edge
    rb_ok: bool = True        # packed bit: cluster root biconnected upward
    bridge_ok: bool = True    # packed bit: no bridge cuts the root upward
    parent_edge_bridge: bool = False  # packed bit
    span_label: int = -1      # dense id of the parent edge's spanning BCC
    int_offset: int = 0       # prefix offset of internal BCC labels


class BCCOracle:
    """Biconnectivity oracle: O(n/k) stored words, zero-write queries."""

    def __init__(self, structure, decomp: Decomposition, tree: ClusterTree,
                 records: dict[int, ClusterRecord], total_internal: int,
                 cache: bool = False):
        self.structure = structure
        self.base = structure.base if isinstance(structure, BoundedView) else structure
        self.decomp = decomp
        self.tree = tree
        self.records = records
        self.total_internal = total_internal
        self._cache: dict | None = {} if cache else None

    # -- cluster / local-graph plumbing ------------------------------------

    def _cluster(self, v, meter):
        return rho_with_members(self.decomp, self.structure, v, meter)

    def _lg(self, s: int, meter) -> LocalGraph:
        if self._cache is not None and ("lg", s) in self._cache:
            return self._cache[("lg", s)]
        labels = _RecordLabelView(self.records, meter)
        lg = build_local_graph(self.structure, self.decomp, self.tree, s,
                               labels, meter)
        if self._cache is not None:
            self._cache[("lg", s)] = lg
        return lg

    def _lg_implicit(self, members, meter) -> LocalGraph:
        key = ("imp", members[0])
        if self._cache is not None and key in self._cache:
            return self._cache[key]
        lg = _implicit_local_graph(self.structure, members, meter)
        if self._cache is not None:
            self._cache[key] = lg
        return lg

    def _flag(self, x: int, name: str, meter) -> bool:
        if meter is not None:
            meter.reads += 1
        return getattr(self.records[x], name)

    def _chain_ok(self, c: int, lca: int, flag: str, meter):
        """Check cut flags along the cluster path from c up to (exclusive)
        the child of lca; returns (ok, child_of_lca_on_path)."""
        x = c
        while True:
            if meter is not None:
                meter.reads += 1
            p = self.tree.parent[x]
            if p == lca:
                return True, x
            if not self._flag(x, flag, meter):
                return False, None
            x = p

    @property
    def is_view(self) -> bool:
        return self.base is not self.structure

    # -- queries ---------------------------------------------------------------

    def _view_blocks(self, v: int, meter):
        """Exact per-component block structure for view-backed queries.

        The virtual trees of transformed vertices provide vertex-free
        detours among their edge slots, so distinct blocks of the base
        graph meeting at a high-degree vertex can merge in the view.
        Piece labels are therefore refined: the real edges of each
        view-level class are relabeled with this package's own linear BC
        labeling, splitting the class back at its cut vertices.  All
        work is read-only and local.
        """
        base = self.base
        comp = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for w in base.neighbors(u, meter):
                    if w not in comp:
                        comp.add(w)
                        nxt.append(w)
            frontier = nxt
        comp_min = min(comp)
        key = ("vblocks", comp_min)
        if self._cache is not None and key in self._cache:
            return self._cache[key]
        groups: dict = {}
        for u in sorted(comp):
            prev = None
            for w in base.adj[u]:
                if w <= u or w == prev:
                    prev = w
                    continue
                prev = w
                lab = self._piece_label(u, w, meter)
                groups.setdefault(lab, []).append((u, w))
        edge_label: dict[tuple[int, int], tuple] = {}
        from .bclabel import build_bc_labeling
        for lab in sorted(groups, key=repr):
            edges = groups[lab]
            ids = sorted({x for e in edges for x in e})
            idx = {x: i for i, x in enumerate(ids)}
            sub = Graph(len(ids), [(idx[a], idx[b]) for a, b in edges])
            sub_lab = build_bc_labeling(sub, None, root=0)
            for a, b in edges:
                edge_label[(a, b)] = (lab, sub_lab.edge_bcc_label(sub, idx[a], idx[b]))
        vertex_labels: dict[int, set] = {u: set() for u in comp}
        for (a, b), lab in edge_label.items():
            vertex_labels[a].add(lab)
            vertex_labels[b].add(lab)
        result = (edge_label, vertex_labels)
        if self._cache is not None:
            self._cache[key] = result
        return result

    def is_articulation(self, v: int, meter: CostMeter | None = None) -> bool:
        """A vertex is an articulation point iff it lies in two or more
        biconnected components.

        Over a bounded view the test runs on refined incident-edge
        labels: removing a transformed vertex from the view leaves its
        virtual tree connecting its neighborhood, so the view's own cut
        structure cannot be consulted there.
        """
        if self.is_view:
            _, vertex_labels = self._view_blocks(v, meter)
            return len(vertex_labels[v]) >= 2
        with (meter.local_scope() if meter is not None else nullcontext()):
            c, members = self._cluster(v, meter)
            lg = self._lg_implicit(members, meter) if members is not None \
                else self._lg(c, meter)
            return lg.labeling.is_articulation(v)

    def _edge_args(self, u, v, meter):
        """Validate an original edge and map it onto the queried structure."""
        if self.base.multiplicity(u, v) == 0:
            raise ValueError(f"edge ({u},{v}) not in graph")
        if isinstance(self.structure, BoundedView):
            return self.structure.edge_view_endpoints(u, v, 0, meter)
        return (u, v)

    def is_bridge(self, u: int, v: int, meter: CostMeter | None = None) -> bool:
        """Three cases: cluster-tree edge (stored bit), cross edge (never),
        within-cluster edge (local-graph bridge)."""
        base_mult = self.base.multiplicity(u, v)
        if base_mult == 0:
            raise ValueError(f"edge ({u},{v}) not in graph")
        if u == v or base_mult >= 2:
            return False
        a, b = self._edge_args(u, v, meter)
        with (meter.local_scope() if meter is not None else nullcontext()):
            ca, mem_a = self._cluster(a, meter)
            cb, mem_b = self._cluster(b, meter)
            if mem_a is not None or mem_b is not None:
                lg = self._lg_implicit(mem_a or mem_b, meter)
                return lg.lg_is_bridge(a, b)
            if ca == cb:
                return self._lg(ca, meter).lg_is_bridge(a, b)
            if self.tree.parent[ca] == cb:
                return self._flag(ca, "parent_edge_bridge", meter)
            if self.tree.parent[cb] == ca:
                return self._flag(cb, "parent_edge_bridge", meter)
            return False  # cross edge

    def vertices_biconnected(self, v1: int, v2: int,
                             meter: CostMeter | None = None) -> bool:
        """No single vertex separates v1 from v2 (shared biconnected
        component); adjacent vertices are always biconnected.

        The adjacency shortcut is the separate check for components made
        of a single bridge edge, whose view image is a path rather than
        an edge.  Over a view the rest of the query also runs on
        incident-edge labels (see is_articulation).
        """
        if v1 == v2:
            return True
        if self.base.has_edge(v1, v2):
            return True
        if self.is_view:
            _, vertex_labels = self._view_blocks(v1, meter)
            if v2 not in vertex_labels:
                return False
            return bool(vertex_labels[v1] & vertex_labels[v2])
        with (meter.local_scope() if meter is not None else nullcontext()):
            return self._pair_query(v1, v2, meter, bridge_mode=False)

    def one_edge_connected(self, v1: int, v2: int,
                           meter: CostMeter | None = None) -> bool:
        """No single edge separates v1 from v2 (same 2-edge-connected
        component)."""
        if v1 == v2:
            return True
        if self.is_view:
            return self._one_edge_view(v1, v2, meter)
        with (meter.local_scope() if meter is not None else nullcontext()):
            return self._pair_query(v1, v2, meter, bridge_mode=True)

    def _one_edge_view(self, v1: int, v2: int, meter) -> bool:
        """Component-local 2-edge-connectivity over exact piece bridges.

        Bridge answers through the view are exact, so the 2ecc classes
        are recovered by a read-only union over non-bridge edges of the
        component; gadget paths in the view cannot stand in for the base
        structure here.
        """
        base = self.base
        comp = {v1}
        frontier = [v1]
        while frontier:
            nxt = []
            for u in frontier:
                for w in base.neighbors(u, meter):
                    if w not in comp:
                        comp.add(w)
                        nxt.append(w)
            frontier = nxt
        if v2 not in comp:
            return False
        uf = UnionFind(comp)
        for u in sorted(comp):
            prev = None
            for w in base.adj[u]:
                if w <= u or w == prev:
                    prev = w
                    continue
                prev = w
                if base.multiplicity(u, w) >= 2 or not self.is_bridge(u, w, meter):
                    uf.union(u, w)
        return uf.find(v1) == uf.find(v2)

    def _pair_query(self, v1, v2, meter, bridge_mode: bool) -> bool:
        c1, mem1 = self._cluster(v1, meter)
        c2, mem2 = self._cluster(v2, meter)
        if mem1 is not None or mem2 is not None:
            if c1 != c2:
                return False  # different (implicit) components
            lg = self._lg_implicit(mem1, meter)
            return lg.two_edge_ok(v1, v2) if bridge_mode else lg.same_bcc(v1, v2)
        if self.tree.root_of[c1] != self.tree.root_of[c2]:
            return False
        if meter is not None:
            meter.reads += 2
        if c1 == c2:
            lg = self._lg(c1, meter)
            return lg.two_edge_ok(v1, v2) if bridge_mode else lg.same_bcc(v1, v2)
        lca = self.tree.lca_walk(c1, c2, meter)
        flag = "bridge_ok" if bridge_mode else "rb_ok"
        entries = []
        for (c, v) in ((c1, v1), (c2, v2)):
            if c == lca:
                entries.append(v)
                continue
            lg = self._lg(c, meter)
            if bridge_mode:
                ok = lg.two_edge_ok(v, lg.up_outer)
            else:
                ok = lg.same_bcc(v, lg.up_outer)
            if not ok:
                return False
            ok, d = self._chain_ok(c, lca, flag, meter)
            if not ok:
                return False
            lg_lca = self._lg(lca, meter)
            entries.append(lg_lca.child_outer[d])
        lg_lca = self._lg(lca, meter)
        o1, o2 = entries
        return lg_lca.two_edge_ok(o1, o2) if bridge_mode else lg_lca.same_bcc(o1, o2)

    # -- labels ------------------------------------------------------------------

    def _map_lg_class(self, s: int, lg: LocalGraph, clab: int, meter):
        eps = lg.attachment_classes()
        for x in sorted(k for k in eps if k is not None):
            if eps[x] == clab:
                if meter is not None:
                    meter.reads += 1
                return self.records[x].span_label
        if None in eps and eps[None] == clab:
            if meter is not None:
                meter.reads += 1
            return self.records[s].span_label
        internal = lg.internal_classes()
        if meter is not None:
            meter.reads += 1
        return self.records[s].int_offset + internal.index(clab)

    def _vertex_label(self, v, meter):
        c, members = self._cluster(v, meter)
        if members is not None:
            lg = self._lg_implicit(members, meter)
            lab = lg.labeling.l.get(v)
            return ("imp", members[0], lab) if lab is not None else ("imp-root", members[0])
        lg = self._lg(c, meter)
        lab = lg.labeling.l.get(v)
        if lab is None:
            return ("cluster-root", c)
        return self._map_lg_class(c, lg, lab, meter)

    def edge_bcc_label(self, u: int, v: int, meter: CostMeter | None = None):
        """Label of the biconnected component containing edge {u,v}.

        Within-cluster and cross edges resolve through the local graph of
        an endpoint's cluster; cluster-tree edges use the stored spanning
        label of the child cluster.  Self-loops take the vertex's label.
        Over a bounded view the piece label is refined per component (see
        _view_blocks).
        """
        if self.base.multiplicity(u, v) == 0:
            raise ValueError(f"edge ({u},{v}) not in graph")
        if self.is_view and u != v:
            edge_label, _ = self._view_blocks(u, meter)
            return edge_label[(min(u, v), max(u, v))]
        return self._piece_label(u, v, meter)

    def _piece_label(self, u: int, v: int, meter: CostMeter | None = None):
        with (meter.local_scope() if meter is not None else nullcontext()):
            if u == v:
                return self._vertex_label(u, meter)
            a, b = self._edge_args(u, v, meter)
            ca, mem_a = self._cluster(a, meter)
            cb, mem_b = self._cluster(b, meter)
            if mem_a is not None or mem_b is not None:
                lg = self._lg_implicit(mem_a or mem_b, meter)
                return ("imp", lg.members[0], lg.edge_class(a, b))
            if ca == cb:
                lg = self._lg(ca, meter)
                return self._map_lg_class(ca, lg, lg.edge_class(a, b), meter)
            if self.tree.parent[ca] == cb or self.tree.parent[cb] == ca:
                child = ca if self.tree.parent[ca] == cb else cb
                if meter is not None:
                    meter.reads += 1
                return self.records[child].span_label
            # cross edge: class of its image inside either endpoint cluster
            lg = self._lg(ca, meter)
            o = _resolve_via_tree(self.tree, lg, ca, cb, meter)
            return self._map_lg_class(ca, lg, lg.edge_class(a, o), meter)


class _RecordLabelView:
    """dict-like view of stored cluster labels that meters its reads."""

    __slots__ = ("records", "meter")

    def __init__(self, records, meter):
        self.records = records
        self.meter = meter

    def __getitem__(self, s):
        if self.meter is not None:
            self.meter.reads += 1
        return self.records[s].label


def _resolve_via_tree(tree: ClusterTree, lg: LocalGraph, s: int, t: int, meter):
    """Outer vertex of cluster s covering the direction of cluster t."""
    x = t
    while True:
        if meter is not None:
            meter.reads += 1
        p = tree.parent[x]
        if p == s:
            return lg.child_outer[x]
        if p == x:
            return lg.up_outer
        x = p


def build_bcc_oracle(structure, k: int, seed: int,
                     meter: CostMeter | None = None,
                     par_centers: bool = False,
                     cache: bool = False,
                     decomp: Decomposition | None = None) -> BCCOracle:
    """Build the sublinear-write biconnectivity oracle.

    Persisted payload per cluster: tree parent, cluster-level label,
    packed flag bits, spanning-component label, internal-label offset --
    about five words per center.  All intermediate structures (cluster
    explorations, Euler data, local graphs, the spanning union-find)
    live in local scratch and are recomputed at query time.
    """
    if decomp is None:
        decomp = build_decomposition(structure, k, seed, meter,
                                     par_centers=par_centers)
    tree = build_cluster_tree(structure, decomp, meter,
                              persist_euler=False, with_lca=False)
    centers = decomp.centers
    records = {s: ClusterRecord() for s in centers}

    scope = meter.local_scope if meter is not None else nullcontext
    with scope():
        # one exploration per cluster, reused by every later stage
        explored = {s: explore_cluster(structure, decomp, s, meter)
                    for s in centers}

        # cluster-level multigraph adjacency, multiplicities capped at 2
        cl_adj: dict[int, list[int]] = {}
        for s in centers:
            counts: dict[int, int] = {}
            for _u, _w, t in explored[s][1]:
                counts[t] = counts.get(t, 0) + 1
            toks: list[int] = []
            for t in sorted(counts):
                toks.extend([t] * min(2, counts[t]))
            cl_adj[s] = toks

        # cluster-level BC labeling per cluster-tree component, computed
        # on the cluster tree itself
        ch = tree.children_map()
        for root in tree.roots():
            order = _preorder(root, ch)
            euler = _euler_on_given_tree(order, tree.parent, ch,
                                         lambda u, m: cl_adj[u], root)
            lab = bc_labeling_from_euler(euler, lambda u, m: cl_adj[u], None)
            for x in order:
                if x == root:
                    continue
                records[x].label = lab.l[x]
                p = tree.parent[x]
                mult2 = cl_adj[x].count(p) >= 2
                records[x].parent_edge_bridge = (
                    not mult2 and lab._is_bridge_pair(x, p))
            records[root].label = 0
        if meter is not None:
            meter.record_write(len(centers))  # commit cluster labels

        # local graphs: attachment bits, spanning unions, internal counts
        label_map = {s: records[s].label for s in centers}
        span_uf = UnionFind(centers)
        n_internal: dict[int, int] = {}
        for s in centers:
            lg = build_local_graph(structure, decomp, tree, s, label_map,
                                   meter, explored=explored[s])
            eps = lg.attachment_classes()
            if lg.up_outer is not None:
                for x, y in lg.child_outer.items():
                    records[x].rb_ok = bool(lg.same_bcc(y, lg.up_outer))
                    records[x].bridge_ok = lg.two_edge_ok(y, lg.up_outer)
            by_class: dict[int, list] = {}
            for key, clab in eps.items():
                by_class.setdefault(clab, []).append(key)
            for clab, keys in by_class.items():
                anchor = s if None in keys else min(k2 for k2 in keys if k2 is not None)
                for key in keys:
                    span_uf.union(anchor, key if key is not None else s)
            n_internal[s] = len(lg.internal_classes())

        # dense ids: internal offsets first, spanning labels after
        total_internal = 0
        for s in centers:
            records[s].int_offset = total_internal
            total_internal += n_internal[s]
        class_min: dict[int, int] = {}
        for s in centers:
            if tree.parent[s] == s:
                continue
            r = span_uf.find(s)
            if r not in class_min or s < class_min[r]:
                class_min[r] = s
        dense = {m: total_internal + i
                 for i, m in enumerate(sorted(class_min.values()))}
        for s in centers:
            if tree.parent[s] != s:
                records[s].span_label = dense[class_min[span_uf.find(s)]]
    if meter is not None:
        # span labels and offsets are committed words; the flag bits ride
        # in the parent word already charged by the cluster tree
        meter.record_write(2 * len(centers))
    return BCCOracle(structure, decomp, tree, records,
                     total_internal, cache=cache)


def _preorder(root, children):
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        if v != root:
            order.append(v)
        for c in reversed(children.get(v, ())):
            stack.append(c)
    return order


def _euler_on_given_tree(order, parent, children, adj_fn, root) -> EulerData:
    """Euler ranks and reach values over an externally built tree."""
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    rank = 0
    stack = [(root, iter(children.get(root, ())))]
    first[root] = 0
    while stack:
        v, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            last[v] = max(first[v], rank)
            stack.pop()
            if stack:
                rank += 1
            continue
        rank += 1
        first[nxt] = rank
        stack.append((nxt, iter(children.get(nxt, ()))))
    w_min: dict[int, int] = {}
    w_max: dict[int, int] = {}
    for u in order:
        lo = hi = first[u]
        prev = None
        for x in adj_fn(u, None):
            if x == u or x == prev:
                prev = x
                continue
            prev = x
            if parent.get(x) == u or parent.get(u) == x:
                continue
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
        p = parent.get(u)
        if p is not None and p != u:
            if low[u] < low[p]:
                low[p] = low[u]
            if high[u] > high[p]:
                high[p] = high[u]
    par = {v: (None if parent[v] == v else parent[v]) for v in order}
    return EulerData(root, order, par, first, last, w_min, w_max, low, high)
