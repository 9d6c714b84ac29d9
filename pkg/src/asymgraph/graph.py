"""Read-only multigraph storage, edge-list I/O, and random generation.

Graphs are undirected and may contain self-loops and parallel edges.
Vertex ids are 0..n-1 and double as priorities: lower id = higher
priority, which is the total order used for every tie-break in the
package.  Adjacency lists are kept sorted so the structure can be
binary-searched without any auxiliary writes.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterable, Iterator, TextIO

from .meter import CostMeter
from .rng import SplitMix

MAX_VERTEX_ID = 1 << 40


class EdgeListParseError(ValueError):
    def __init__(self, line_no: int, line: str, reason: str):
        super().__init__(f"line {line_no}: {reason}: {line!r}")
        self.line_no = line_no


class VertexRangeError(ValueError):
    pass


class Graph:
    """Immutable undirected multigraph with sorted adjacency lists."""

    __slots__ = ("n", "m", "adj", "max_degree")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        adj: list[list[int]] = [[] for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge ({u},{v}) outside 0..{n - 1}")
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
            else:
                adj[u].append(u)  # self-loop occupies two slots
            m += 1
        for lst in adj:
            lst.sort()
        self.n = n
        self.m = m
        self.adj = adj
        self.max_degree = max((len(a) for a in adj), default=0)

    # -- node protocol shared with BoundedView and ClusterGraphView ---------

    def num_nodes(self) -> int:
        return self.n

    def iter_nodes(self) -> Iterator[int]:
        return iter(range(self.n))

    def neighbors(self, v: int, meter: CostMeter | None = None) -> list[int]:
        """Sorted neighbor list of v; charges one read per adjacency word."""
        if not (0 <= v < self.n):
            raise VertexRangeError(f"vertex {v} outside 0..{self.n - 1}")
        lst = self.adj[v]
        if meter is not None:
            meter.reads += len(lst)
        return lst

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    # -- edge helpers --------------------------------------------------------

    def multiplicity(self, u: int, v: int) -> int:
        """Number of parallel copies of edge {u,v} (self-loops count once)."""
        lst = self.adj[u]
        cnt = bisect_right(lst, v) - bisect_left(lst, v)
        return cnt // 2 if u == v else cnt

    def has_edge(self, u: int, v: int) -> bool:
        return self.multiplicity(u, v) > 0

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge copy once, endpoints sorted ascending."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)
            loops = self.multiplicity(u, u)
            for _ in range(loops):
                yield (u, u)

    def distinct_edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            prev = -1
            for v in self.adj[u]:
                if v >= u and v != prev:
                    yield (u, v)
                    prev = v

    def edge_slot(self, u: int, v: int, copy: int = 0) -> int:
        """Index of the copy-th appearance of v inside u's adjacency list."""
        lst = self.adj[u]
        i = bisect_left(lst, v)
        if i + copy >= len(lst) or lst[i + copy] != v:
            raise VertexRangeError(f"edge ({u},{v}) copy {copy} not present")
        return i + copy

    def degree_sum(self) -> int:
        return sum(len(a) for a in self.adj)


# -- edge-list text format ---------------------------------------------------


def load_edge_list(stream: TextIO | str) -> Graph:
    """Parse "u v" lines into a Graph.  '#' starts a comment line.

    Ids are 0-indexed; n = 1 + max id; duplicate lines become parallel
    edges.  Malformed lines raise EdgeListParseError with the line number.
    """
    if isinstance(stream, str):
        lines = stream.splitlines()
    else:
        lines = stream.read().splitlines()
    edges: list[tuple[int, int]] = []
    max_id = -1
    for i, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(i, raw, "expected two integers")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(i, raw, "expected two integers") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(i, raw, "negative vertex id")
        if u >= MAX_VERTEX_ID or v >= MAX_VERTEX_ID:
            raise VertexRangeError(f"line {i}: vertex id exceeds {MAX_VERTEX_ID}")
        edges.append((u, v))
        if u > max_id:
            max_id = u
        if v > max_id:
            max_id = v
    return Graph(max_id + 1, edges)


def dump_edge_list(g: Graph) -> str:
    out = [f"# n={g.n} m={g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    out.append("")
    return "\n".join(out)


# -- generators ---------------------------------------------------------------


def gen_random_bounded(n: int, delta: int, seed: int) -> Graph:
    """Random connected graph with max degree <= delta.

    Built as a random spanning tree (each vertex attaches to a random
    earlier vertex with spare degree) plus random extra edges, rejecting
    any that would exceed the degree cap.  Deterministic in (n, delta,
    seed).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if delta < 2:
        raise ValueError("delta must be >= 2")
    rng = SplitMix(seed * 7919 + delta)
    deg = [0] * n
    edges: list[tuple[int, int]] = []
    open_slots: list[int] = [0]  # vertices with deg < delta, insertion order
    for v in range(1, n):
        i = rng.randrange(len(open_slots))
        u = open_slots[i]
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
        if deg[u] >= delta:
            open_slots[i] = open_slots[-1]
            open_slots.pop()
        if deg[v] < delta:
            open_slots.append(v)
    if n > 1:
        present = {(min(u, v), max(u, v)) for u, v in edges}
        extra_target = max(0, (n * (delta - 2)) // 2)
        attempts = 0
        while extra_target > 0 and attempts < 4 * n:
            attempts += 1
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key in present or deg[u] >= delta or deg[v] >= delta:
                continue
            present.add(key)
            edges.append(key)
            deg[u] += 1
            deg[v] += 1
            extra_target -= 1
    return Graph(n, edges)


def gen_with_hubs(n: int, hub_degree: int, seed: int, delta: int = 3) -> Graph:
    """Bounded-degree random graph plus a high-degree hub vertex.

    Used to exercise the unbounded-degree adapter: the hub gets edges to
    hub_degree distinct vertices regardless of the cap.
    """
    if n < hub_degree + 1:
        raise ValueError("n must exceed hub_degree")
    base = gen_random_bounded(n, delta, seed)
    rng = SplitMix(seed * 31337 + hub_degree)
    hub = rng.randrange(n)
    edges = list(base.edges())
    present = {(min(u, v), max(u, v)) for u, v in edges}
    added = 0
    while added < hub_degree:
        v = rng.randrange(n)
        if v == hub:
            continue
        key = (min(hub, v), max(hub, v))
        if key in present:
            continue
        present.add(key)
        edges.append(key)
        added += 1
    return Graph(n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union with id-shifted vertices."""
    offset = 0
    edges: list[tuple[int, int]] = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges)
