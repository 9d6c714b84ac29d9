"""Independent brute-force ground truth for connectivity and biconnectivity.

Nothing here consults the oracle modules or the cost meter.  Two
deliberately independent routes exist for biconnectivity: single
edge/vertex deletion with a connectivity recount, and an iterative
Hopcroft-Tarjan DFS.  Tests cross-check them against each other; any
disagreement is a loud failure of the suite itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph


class UnionFind:
    def __init__(self, ids):
        self.parent = {x: x for x in ids}
        self.size = {x: 1 for x in ids}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def _min_labels(uf: UnionFind, ids) -> dict[int, int]:
    rep_min: dict[int, int] = {}
    for v in ids:
        r = uf.find(v)
        if r not in rep_min or v < rep_min[r]:
            rep_min[r] = v
    return {v: rep_min[uf.find(v)] for v in ids}


def union_find_cc(g: Graph) -> dict[int, int]:
    """Component label per vertex, canonicalized to the min member id."""
    uf = UnionFind(range(g.n))
    for u, v in g.distinct_edges():
        if u != v:
            uf.union(u, v)
    return _min_labels(uf, range(g.n))


def count_components(g: Graph, skip_vertex: int | None = None,
                     skip_edge: tuple[int, int] | None = None) -> int:
    """Component count with an optional vertex or single edge copy removed."""
    seen = [False] * g.n
    if skip_vertex is not None:
        seen[skip_vertex] = True
    comps = 0
    for s in range(g.n):
        if seen[s]:
            continue
        comps += 1
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            skip_left = 1 if skip_edge is not None and u in skip_edge else 0
            for w in g.adj[u]:
                if skip_left and ((u, w) == skip_edge or (w, u) == skip_edge):
                    skip_left -= 1
                    continue
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return comps


def bridges_by_deletion(g: Graph) -> set[tuple[int, int]]:
    base = count_components(g)
    out = set()
    for u, v in g.distinct_edges():
        if u == v or g.multiplicity(u, v) >= 2:
            continue
        if count_components(g, skip_edge=(u, v)) > base:
            out.add((u, v))
    return out


def articulation_by_deletion(g: Graph) -> set[int]:
    base = count_components(g)
    out = set()
    for v in range(g.n):
        if not any(w != v for w in g.adj[v]):
            continue
        if count_components(g, skip_vertex=v) > base:
            out.add(v)
    return out


def hopcroft_tarjan(g: Graph) -> tuple[list[set[tuple[int, int, int]]], set[int], set[tuple[int, int]]]:
    """BCC edge partition, articulation points, and bridges via iterative DFS.

    Edge copies are identified as (u, v, copy) with u <= v; self-loops
    are excluded from the partition.  Parallel copies carry distinct ids,
    so a doubled edge forms a 2-cycle and is never a bridge.
    """
    edge_list: list[tuple[int, int]] = []
    incident: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    copy_counter: dict[tuple[int, int], int] = {}
    edge_key: list[tuple[int, int, int]] = []
    for u, v in g.edges():
        if u == v:
            continue
        eid = len(edge_list)
        edge_list.append((u, v))
        incident[u].append((v, eid))
        incident[v].append((u, eid))
        c = copy_counter.get((u, v), 0)
        copy_counter[(u, v)] = c + 1
        edge_key.append((u, v, c))

    disc = [-1] * g.n
    low = [0] * g.n
    comps: list[set[tuple[int, int, int]]] = []
    aps: set[int] = set()
    bridges: set[tuple[int, int]] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1 or not incident[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack: list[list[int]] = [[root, -1, 0]]  # [vertex, tree edge id, scan ptr]
        estack: list[int] = []
        root_children = 0
        while stack:
            frame = stack[-1]
            v, in_eid, ptr = frame
            if ptr < len(incident[v]):
                frame[2] += 1
                w, eid = incident[v][ptr]
                if eid == in_eid:
                    continue
                if disc[w] == -1:
                    estack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append([w, eid, 0])
                elif disc[w] < disc[v]:
                    estack.append(eid)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                stack.pop()
                if not stack:
                    continue
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] >= disc[p]:
                    comp: set[tuple[int, int, int]] = set()
                    while True:  # the tree edge (p, v) closes the component
                        eid = estack.pop()
                        comp.add(edge_key[eid])
                        if eid == in_eid:
                            break
                    comps.append(comp)
                    if p == root:
                        root_children += 1
                    else:
                        aps.add(p)
                    if len(comp) == 1:
                        a, b, _c = next(iter(comp))
                        bridges.add((a, b))
        if root_children >= 2:
            aps.add(root)
    return comps, aps, bridges


@dataclass
class GroundTruth:
    component: dict[int, int]
    bridges: set[tuple[int, int]]
    articulation: set[int]
    bcc_edges: list[set[tuple[int, int, int]]]
    two_ecc: dict[int, int]
    vertex_bccs: dict[int, set[int]] = field(default_factory=dict)

    def same_bcc(self, u: int, v: int) -> bool:
        if u == v:
            return True
        return bool(self.vertex_bccs.get(u, set()) & self.vertex_bccs.get(v, set()))

    def one_edge_connected(self, u: int, v: int) -> bool:
        return self.two_ecc[u] == self.two_ecc[v]


def brute_biconn(g: Graph) -> GroundTruth:
    """Full ground truth; deletion methods define bridges and APs."""
    comps, _aps_ht, _bridges_ht = hopcroft_tarjan(g)
    bridges = bridges_by_deletion(g)
    uf = UnionFind(range(g.n))
    for u, v in g.distinct_edges():
        if u != v and (u, v) not in bridges:
            uf.union(u, v)
    gt = GroundTruth(
        component=union_find_cc(g),
        bridges=bridges,
        articulation=articulation_by_deletion(g),
        bcc_edges=comps,
        two_ecc=_min_labels(uf, range(g.n)),
    )
    for idx, cls in enumerate(gt.bcc_edges):
        for (u, v, _c) in cls:
            gt.vertex_bccs.setdefault(u, set()).add(idx)
            gt.vertex_bccs.setdefault(v, set()).add(idx)
    return gt
