"""Implicit k-decomposition: center sampling, rho queries, construction.

The decomposition stores only a sorted center list with one bit per
center (primary vs secondary).  Everything else -- which cluster a vertex
belongs to, the cluster's spanning tree, the cluster's member list -- is
recomputed on demand by deterministic priority-ordered BFS, costing reads
but never writes.

Priority order: lower vertex id = higher priority.  Among equal-length
paths from a common source, the path whose vertex at the first point of
divergence has higher priority is considered shorter; the BFS below
generates vertices in exactly that order because frontiers are kept in
path-rank order and children are generated in ascending id order.
"""
from __future__ import annotations

from contextlib import nullcontext

from .meter import CostMeter
from .rng import hash64

_TWO64 = 1 << 64


class NoCenterError(ValueError):
    """Raised when a component contains no primary center."""


class DecompositionInvariantError(RuntimeError):
    """A component of size >= k exhausted without a center: construction bug."""


def _charged_contains(arr: list[int], x: int, meter: CostMeter | None) -> bool:
    """Binary search charging one read per probed word."""
    lo, hi = 0, len(arr)
    while lo < hi:
        mid = (lo + hi) // 2
        if meter is not None:
            meter.reads += 1
        a = arr[mid]
        if a < x:
            lo = mid + 1
        elif a > x:
            hi = mid
        else:
            return True
    return False


class Decomposition:
    """Center set S with 1-bit labels; rho is computed, never stored."""

    __slots__ = ("k", "seed", "n_nodes", "centers", "bits",
                 "forced", "secondaries")

    def __init__(self, k: int, seed: int, n_nodes: int,
                 centers: list[int], bits: list[int]):
        self.k = k
        self.seed = seed
        self.n_nodes = n_nodes
        self.centers = centers
        self.bits = bits
        # Split views for membership tests.  Sampled primaries are
        # recognizable by hash alone; only the exceptional arrays are
        # ever binary-searched.
        self.forced = [c for c, b in zip(centers, bits)
                       if b == 0 and not self.is_sampled_primary(c)]
        self.secondaries = [c for c, b in zip(centers, bits) if b == 1]

    def is_sampled_primary(self, v: int) -> bool:
        return hash64(self.seed, v) * self.k < _TWO64

    def is_primary(self, v: int, meter: CostMeter | None = None) -> bool:
        if self.is_sampled_primary(v):
            return True
        return bool(self.forced) and _charged_contains(self.forced, v, meter)

    def in_secondaries(self, v: int, meter: CostMeter | None = None) -> bool:
        return bool(self.secondaries) and _charged_contains(self.secondaries, v, meter)

    def in_centers(self, v: int, meter: CostMeter | None = None) -> bool:
        return self.is_primary(v, meter) or self.in_secondaries(v, meter)

    def to_text(self) -> str:
        lines = [f"{self.k} {self.n_nodes} {self.seed} {len(self.centers)}"]
        lines.extend(f"{c} {b}" for c, b in zip(self.centers, self.bits))
        lines.append("")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "Decomposition":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        k, n_nodes, seed, size = (int(x) for x in lines[0].split())
        centers, bits = [], []
        for ln in lines[1:1 + size]:
            c, b = (int(x) for x in ln.split())
            centers.append(c)
            bits.append(b)
        return cls(k, seed, n_nodes, centers, bits)


class _BuildMembership:
    """Mutable center-set view used while construction adds secondaries."""

    __slots__ = ("k", "seed", "forced_set", "secondary_set")

    def __init__(self, k, seed, forced_set, secondary_set):
        self.k = k
        self.seed = seed
        self.forced_set = forced_set
        self.secondary_set = secondary_set

    def is_sampled_primary(self, v):
        return hash64(self.seed, v) * self.k < _TWO64

    def is_primary(self, v, meter=None):
        if self.is_sampled_primary(v):
            return True
        if not self.forced_set:
            return False
        if meter is not None:
            meter.reads += 1
        return v in self.forced_set

    def in_secondaries(self, v, meter=None):
        if not self.secondary_set:
            return False
        if meter is not None:
            meter.reads += 1
        return v in self.secondary_set


# -- priority BFS --------------------------------------------------------------


def priority_bfs(g, v: int, meter: CostMeter | None = None, stop=None) -> list[int]:
    """Visit sequence from v ordered by tie-broken shortest-path length.

    Frontiers are held in path-rank order; children inherit the parent's
    rank and are tie-broken by ascending id; duplicates keep their first
    occurrence.  Stops (inclusive) at the first vertex where `stop` fires.
    All state is scratch; only adjacency reads are charged.
    """
    order = [v]
    if stop is not None and stop(v):
        return order
    parent = {v: None}
    frontier = [v]
    with (meter.local_scope() if meter is not None else nullcontext()):
        if meter is not None:
            meter.local_alloc(3)
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.neighbors(u, meter):
                    if w == u or w in parent:
                        continue
                    parent[w] = u
                    order.append(w)
                    if meter is not None:
                        meter.local_alloc(3)
                    if stop is not None and stop(w):
                        return order
                    nxt.append(w)
            frontier = nxt
    return order


def _rho_walk(deco, g, v: int, meter: CostMeter | None):
    """Core of rho: returns (center, implicit_members_or_None).

    BFS from v in priority order until a primary center is generated,
    then walks the tie-broken shortest path from v toward it and returns
    the first center (primary or secondary) on that path.  If the
    component exhausts without a primary it must be smaller than k; its
    smallest vertex is the implicit center.
    """
    if deco.is_primary(v, meter) or deco.in_secondaries(v, meter):
        return v, None
    parent = {v: None}
    frontier = [v]
    target = -1
    alloc = meter.local_alloc if meter is not None else None
    if alloc:
        alloc(3)
    while frontier and target < 0:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u, meter):
                if w == u or w in parent:
                    continue
                parent[w] = u
                if alloc:
                    alloc(3)
                if deco.is_primary(w, meter):
                    target = w
                    break
                nxt.append(w)
            if target >= 0:
                break
        frontier = nxt
    if target < 0:
        members = sorted(parent)
        if len(members) >= deco.k:
            raise DecompositionInvariantError(
                f"component of size {len(members)} has no primary center")
        return members[0], members
    path = []
    x = target
    while x is not None:
        path.append(x)
        x = parent[x]
    path.reverse()
    for x in path[1:-1]:  # v was checked up front, target is primary
        if deco.is_primary(x, meter) or deco.in_secondaries(x, meter):
            return x, None
    return target, None


def rho0(decomp: Decomposition, g, v: int, meter: CostMeter | None = None) -> int:
    """Nearest primary center of v under the priority path order."""
    if decomp.is_primary(v, meter):
        return v
    hit = []

    def stop(w):
        if decomp.is_primary(w, meter):
            hit.append(w)
            return True
        return False

    order = priority_bfs(g, v, meter, stop)
    if not hit:
        if len(order) >= decomp.k:
            raise DecompositionInvariantError(
                f"component of size {len(order)} has no primary center")
        raise NoCenterError(f"component of {v} has no primary center")
    return hit[0]


def rho(decomp: Decomposition, g, v: int, meter: CostMeter | None = None) -> int:
    """First center on the tie-broken shortest path from v to rho0(v).

    For a component smaller than k with no sampled center, returns the
    component's smallest vertex (the implicit center, never stored).
    """
    if meter is None:
        return _rho_walk(decomp, g, v, None)[0]
    with meter.local_scope():
        return _rho_walk(decomp, g, v, meter)[0]


def rho_with_members(decomp: Decomposition, g, v: int,
                     meter: CostMeter | None = None):
    """(center, implicit_component_members_or_None) -- query-side helper."""
    if meter is None:
        return _rho_walk(decomp, g, v, None)
    with meter.local_scope():
        return _rho_walk(decomp, g, v, meter)


def _owned_search(deco, g, s: int, limit: int | None, meter: CostMeter | None):
    """Priority BFS from s visiting only vertices owned by s.

    Expands through a vertex only if rho(v) == s, so exactly the cluster
    is reached.  Returns (owned_order, parent, exhausted); `limit` stops
    the search as soon as that many owned vertices exist.
    """
    owned = [s]
    parent = {s: None}
    visited = {s}
    frontier = [s]
    rho_memo: dict[int, int] = {}
    alloc = meter.local_alloc if meter is not None else None
    if alloc:
        alloc(4)
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u, meter):
                if w == u or w in visited:
                    continue
                visited.add(w)
                if alloc:
                    alloc(4)
                c = rho_memo.get(w)
                if c is None:
                    c = _rho_walk(deco, g, w, meter)[0]
                    rho_memo[w] = c
                if c != s:
                    continue
                parent[w] = u
                owned.append(w)
                if limit is not None and len(owned) >= limit:
                    return owned, parent, False
                nxt.append(w)
        frontier = nxt
    return owned, parent, True


def cluster_of(decomp: Decomposition, g, s: int,
               meter: CostMeter | None = None) -> list[int]:
    """All vertices v with rho(v) == s, in priority search order."""
    if not _charged_contains(decomp.centers, s, meter):
        raise ValueError(f"{s} is not a center")
    if meter is None:
        return _owned_search(decomp, g, s, None, None)[0]
    with meter.local_scope():
        return _owned_search(decomp, g, s, None, meter)[0]


def cluster_tree_of(decomp: Decomposition, g, s: int,
                    meter: CostMeter | None = None):
    """(members, parent) of the cluster's implicit rooted spanning tree."""
    if not _charged_contains(decomp.centers, s, meter):
        raise ValueError(f"{s} is not a center")
    owned, parent, _ = _owned_search(decomp, g, s, None, meter)
    return owned, parent


def partition_vertex(order: list[int], parent: dict[int, int | None],
                     k: int | None = None) -> int:
    """Vertex whose subtree size is closest to k/2 (ties: lower id).

    `order`/`parent` describe a rooted tree of the first k vertices found
    owning a center; in a degree-bounded tree both sides of the cut are
    at least k/(max_degree+1).
    """
    if k is None:
        k = len(order)
    size = {u: 1 for u in order}
    for u in reversed(order):
        p = parent[u]
        if p is not None:
            size[p] += size[u]
    best_key = None
    best = -1
    for u in order[1:]:
        key = (abs(2 * size[u] - k), u)
        if best_key is None or key < best_key:
            best_key = key
            best = u
    return best


def build_decomposition(g, k: int, seed: int, meter: CostMeter | None = None,
                        par_centers: bool = False) -> Decomposition:
    """Construct the implicit k-decomposition of a bounded-degree structure.

    1. Sample primaries with per-node probability 1/k (hash-based, retried
       with seed+1 while the sample is more than 4x oversized).
    2. Components without a sampled center: size >= k gets its smallest
       node marked primary (one write); smaller components keep their
       smallest node as an implicit center that is never written out.
    3. Oversized clusters are recursively split by emitting partition
       vertices as secondary centers, one write per emitted center.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    n = g.num_nodes()
    eff_seed = seed
    for _ in range(8):
        count = sum(1 for v in g.iter_nodes()
                    if hash64(eff_seed, v) * k < _TWO64)
        if count * k <= 4 * n:
            break
        eff_seed += 1

    forced_set: set[int] = set()
    secondary_set: set[int] = set()
    membership = _BuildMembership(k, eff_seed, forced_set, secondary_set)

    # Unconnected-graph fix: find primary-less components.  A node only
    # concludes anything if it is the smallest id it can reach, so this
    # scan aborts within a few steps almost everywhere.
    sampled: list[int] = []
    for v in g.iter_nodes():
        if membership.is_sampled_primary(v):
            sampled.append(v)
            continue
        seen = {v}
        frontier = [v]
        abort = False
        while frontier and not abort:
            nxt = []
            for u in frontier:
                for w in g.neighbors(u, meter):
                    if w == u or w in seen:
                        continue
                    if w < v or membership.is_primary(w, meter):
                        abort = True
                        break
                    seen.add(w)
                    nxt.append(w)
                if abort:
                    break
            frontier = nxt
        if abort:
            continue
        if len(seen) >= k:
            forced_set.add(v)
            if meter is not None:
                meter.record_write(1)

    primaries = sorted(sampled) + sorted(forced_set)
    if meter is not None:
        meter.record_write(len(sampled))  # commit the sampled center list

    scope = (meter.local_scope if meter is not None else nullcontext)
    for s in primaries:
        stack = [s]
        while stack:
            v = stack.pop()
            with scope():
                owned, par, exhausted = _owned_search(
                    membership, g, v, k + 1, meter)
            if exhausted:
                continue
            tree_order = owned[:k]
            u = partition_vertex(tree_order, par, k)
            secondary_set.add(u)
            if meter is not None:
                meter.record_write(1)
            extra: list[int] = []
            if par_centers:
                # parallel variant: also promote the root's tree children
                for c in tree_order:
                    if (par.get(c) == v and c not in secondary_set
                            and not membership.is_primary(c)):
                        secondary_set.add(c)
                        extra.append(c)
                        if meter is not None:
                            meter.record_write(1)
            for c in sorted(extra, reverse=True):
                stack.append(c)
            stack.append(u)
            stack.append(v)

    centers = sorted(set(primaries) | secondary_set)
    bits = [1 if c in secondary_set else 0 for c in centers]
    return Decomposition(k, eff_seed, n, centers, bits)
