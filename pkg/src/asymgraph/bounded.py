"""Implicit bounded-degree adapter over an arbitrary multigraph.

Vertices whose degree exceeds the cap are expanded into an implicit
binary tree of virtual nodes over their edge slots: two nodes at the top
level, each covering half the slots, splitting until a node covers at
most cap-1 slots.  Nothing is materialized for virtual nodes; ids, tree
edges, and redirected endpoints are all computed arithmetically from the
sorted adjacency offsets, so the view costs reads but zero writes.

Virtual node ids live above the real id range:

    vid = n + 4 * offset(v) + heap_index

where offset(v) is v's CSR offset and heap_index >= 1 addresses the
binary tree over v's slots (index 0, the whole range, is never exposed;
the real vertex stands in for it).
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterator

from .graph import Graph
from .meter import CostMeter


class BoundedView:
    """Node-and-neighbor interface over real plus virtual nodes."""

    __slots__ = ("base", "dmax", "_offsets", "_num_nodes")

    def __init__(self, base: Graph, dmax: int = 3):
        if dmax < 3:
            raise ValueError("dmax must be >= 3 (a binary tree node needs degree 3)")
        self.base = base
        self.dmax = dmax
        offsets = [0] * (base.n + 1)
        for v in range(base.n):
            offsets[v + 1] = offsets[v] + len(base.adj[v])
        self._offsets = offsets
        extra = 0
        for v in range(base.n):
            extra += self._virtual_count(len(base.adj[v]))
        self._num_nodes = base.n + extra

    # -- id arithmetic -------------------------------------------------------

    def _leaf_cap(self) -> int:
        return self.dmax - 1

    def _virtual_count(self, d: int) -> int:
        if d <= self.dmax:
            return 0
        count = 0
        stack = [(0, d)]
        while stack:
            lo, hi = stack.pop()
            if lo == 0 and hi == d:
                pass  # conceptual root, not materialized
            else:
                count += 1
            if hi - lo > self._leaf_cap():
                mid = lo + (hi - lo + 1) // 2
                stack.append((lo, mid))
                stack.append((mid, hi))
        return count

    def is_virtual(self, node: int) -> bool:
        return node >= self.base.n

    def owner(self, node: int) -> int:
        """Real vertex owning a node (identity on real nodes)."""
        if node < self.base.n:
            return node
        rel = node - self.base.n
        slot4 = rel // 4
        v = bisect_right(self._offsets, slot4) - 1
        if v >= self.base.n:
            raise ValueError(f"node id {node} out of range")
        return v

    def _vid(self, v: int, heap: int) -> int:
        return self.base.n + 4 * self._offsets[v] + heap

    def _heap_range(self, d: int, heap: int) -> tuple[int, int]:
        """Slot range covered by heap node `heap` of a degree-d tree."""
        path = []
        i = heap
        while i > 0:
            path.append(i % 2 == 1)  # odd index -> left child
            i = (i - 1) // 2
        lo, hi = 0, d
        for go_left in reversed(path):
            mid = lo + (hi - lo + 1) // 2
            if go_left:
                hi = mid
            else:
                lo = mid
        return lo, hi

    # -- redirection ----------------------------------------------------------

    def _endpoint_for_slot(self, v: int, slot: int, meter: CostMeter | None) -> int:
        """View endpoint replacing v's neighbor at the given edge slot."""
        adj_v = self.base.adj[v]
        w = adj_v[slot]
        if meter is not None:
            meter.reads += 1
        if w == v:
            # self-loop: pair slot 2t with 2t+1 inside the loop group
            first = bisect_left(adj_v, v)
            r = slot - first
            partner = first + (r ^ 1)
            if len(adj_v) <= self.dmax:
                return v
            return self._leaf_for_slot(v, partner, meter)
        if len(self.base.adj[w]) <= self.dmax:
            return w
        # position of this copy inside w's sorted list, via binary search
        first_v = bisect_left(adj_v, w)
        r = slot - first_v
        first_w = bisect_left(self.base.adj[w], v)
        if meter is not None:
            meter.reads += max(1, len(self.base.adj[w]).bit_length())
        return self._leaf_for_slot(w, first_w + r, meter)

    def _leaf_for_slot(self, v: int, slot: int, meter: CostMeter | None) -> int:
        d = len(self.base.adj[v])
        if d <= self.dmax:
            return v  # no virtual tree for bounded-degree vertices
        lo, hi, heap = 0, d, 0
        cap = self._leaf_cap()
        while hi - lo > cap:
            mid = lo + (hi - lo + 1) // 2
            if slot < mid:
                heap, hi = 2 * heap + 1, mid
            else:
                heap, lo = 2 * heap + 2, mid
        if heap == 0:
            return v  # degree <= dmax, no tree
        return self._vid(v, heap)

    # -- node protocol ---------------------------------------------------------

    def num_nodes(self) -> int:
        return self._num_nodes

    def iter_nodes(self) -> Iterator[int]:
        yield from range(self.base.n)
        cap = self._leaf_cap()
        for v in range(self.base.n):
            d = len(self.base.adj[v])
            if d <= self.dmax:
                continue
            heaps = []
            stack = [(0, d, 0)]
            while stack:
                lo, hi, heap = stack.pop()
                if heap > 0:
                    heaps.append(heap)
                if hi - lo > cap:
                    mid = lo + (hi - lo + 1) // 2
                    stack.append((lo, mid, 2 * heap + 1))
                    stack.append((mid, hi, 2 * heap + 2))
            heaps.sort()
            base_id = self.base.n + 4 * self._offsets[v]
            for h in heaps:
                yield base_id + h

    def neighbors(self, node: int, meter: CostMeter | None = None) -> list[int]:
        """Sorted neighbors of a view node; every node has degree <= dmax."""
        n = self.base.n
        if node < 0:
            raise ValueError(f"invalid node id {node}")
        if node < n:
            d = len(self.base.adj[node])
            if d <= self.dmax:
                out = [self._endpoint_for_slot(node, j, meter) for j in range(d)]
                out.sort()
                return out
            if meter is not None:
                meter.reads += 1  # degree word
            return [self._vid(node, 1), self._vid(node, 2)]
        v = self.owner(node)
        heap = node - n - 4 * self._offsets[v]
        d = len(self.base.adj[v])
        if heap < 1 or d <= self.dmax:
            raise ValueError(f"invalid virtual node id {node}")
        lo, hi = self._heap_range(d, heap)
        if lo >= hi or hi > d:
            raise ValueError(f"invalid virtual node id {node}")
        if meter is not None:
            meter.reads += 1  # degree word
        parent_heap = (heap - 1) // 2
        parent = v if parent_heap == 0 else self._vid(v, parent_heap)
        if hi - lo > self._leaf_cap():
            out = [parent, self._vid(v, 2 * heap + 1), self._vid(v, 2 * heap + 2)]
        else:
            out = [parent]
            out.extend(self._endpoint_for_slot(v, j, meter) for j in range(lo, hi))
        out.sort()
        return out

    # -- edge mapping ------------------------------------------------------------

    def edge_view_endpoints(self, u: int, v: int, copy: int = 0,
                            meter: CostMeter | None = None) -> tuple[int, int]:
        """View endpoints of the copy-th parallel edge {u,v}.

        The returned pair is one edge of the view (the "piece" incident to
        u's side); for low-degree endpoints it is the vertex itself.
        """
        if u == v:
            slot = self.base.edge_slot(u, u, 2 * copy)
            a = self._leaf_for_slot(u, slot, meter)
            b = self._endpoint_for_slot(u, slot, meter)
            return (a, b) if a <= b else (b, a)
        slot_u = self.base.edge_slot(u, v, copy)
        a = self._leaf_for_slot(u, slot_u, meter)
        b = self._endpoint_for_slot(u, slot_u, meter)
        return (a, b) if a <= b else (b, a)
