import pytest

from asymgraph import (CostMeter, DisjointCentersError, Graph, build_cluster_tree,
                       build_decomposition, center_neighbors, gen_random_bounded,
                       rho)
from asymgraph.clustergraph import ClusterGraphView
from tests.test_decomposition import forced_decomp


def brute_cluster_edges(g, d):
    owner = {v: rho(d, g, v) for v in range(g.n)}
    edges = set()
    for u, v in g.distinct_edges():
        if u != v and owner[u] != owner[v]:
            edges.add((min(owner[u], owner[v]), max(owner[u], owner[v])))
    return edges


def test_single_cluster_component_has_no_neighbors(c6):
    d = forced_decomp(6, 8, [0])
    assert center_neighbors(c6, d, 0) == []


def test_p5_split_at_midpoint(p5):
    d = forced_decomp(5, 8, [0, 4])
    assert center_neighbors(p5, d, 0) == [4]
    assert center_neighbors(p5, d, 4) == [0]


def test_center_neighbors_requires_center(p5):
    d = forced_decomp(5, 8, [0, 4])
    with pytest.raises(ValueError):
        center_neighbors(p5, d, 2)


def test_center_neighbors_zero_writes(p5):
    d = forced_decomp(5, 8, [0, 4])
    m = CostMeter()
    center_neighbors(p5, d, 0, m)
    assert m.writes == 0 and m.reads > 0


def test_center_neighbors_match_explicit_cluster_graph():
    for seed in range(6):
        g = gen_random_bounded(150, 3, seed)
        d = build_decomposition(g, 4, seed)
        brute = brute_cluster_edges(g, d)
        mine = set()
        for s in d.centers:
            for t in center_neighbors(g, d, s):
                mine.add((min(s, t), max(s, t)))
        assert mine == brute, seed


def test_cluster_tree_path_of_three():
    g = Graph(9, [(i, i + 1) for i in range(8)])
    d = forced_decomp(9, 16, [0, 4, 8])
    tree = build_cluster_tree(g, d)
    assert tree.parent[0] == 0
    assert tree.parent[4] == 0
    assert tree.parent[8] == 4


def test_cluster_tree_single_center_ranks(c6):
    d = forced_decomp(6, 8, [0])
    tree = build_cluster_tree(c6, d)
    assert tree.first[0] == 0 and tree.last[0] == 1


def test_cluster_tree_edges_span_and_subset():
    for seed in range(5):
        g = gen_random_bounded(180, 3, seed)
        d = build_decomposition(g, 4, seed)
        tree = build_cluster_tree(g, d)
        brute = brute_cluster_edges(g, d)
        tree_edges = {(min(c, p), max(c, p)) for c, p in tree.parent.items() if p != c}
        assert tree_edges <= brute
        # spans: every center reaches its component root via parents
        for s in d.centers:
            x = s
            for _ in range(len(d.centers) + 1):
                if tree.parent[x] == x:
                    break
                x = tree.parent[x]
            assert tree.parent[x] == x
            assert x == tree.root_of[s]


def test_euler_intervals_nest_exactly():
    for seed in range(5):
        g = gen_random_bounded(200, 3, seed)
        d = build_decomposition(g, 4, seed)
        tree = build_cluster_tree(g, d)

        def is_ancestor(a, b):
            x = b
            while True:
                if x == a:
                    return True
                if tree.parent[x] == x:
                    return False
                x = tree.parent[x]

        centers = d.centers
        for a in centers[:64]:
            for b in centers[:64]:
                if tree.root_of[a] != tree.root_of[b]:
                    continue
                nested = tree.first[a] <= tree.first[b] and tree.last[b] <= tree.last[a]
                assert nested == is_ancestor(a, b), (seed, a, b)


def test_lca_trivial_cases():
    g = Graph(9, [(i, i + 1) for i in range(8)])
    d = forced_decomp(9, 16, [0, 4, 8])
    tree = build_cluster_tree(g, d)
    assert tree.lca(4, 4) == 4
    assert tree.lca(8, 4) == 4  # parent of 8 is 4


def test_lca_matches_brute_force_walk():
    for seed in range(5):
        g = gen_random_bounded(220, 3, seed)
        d = build_decomposition(g, 4, seed)
        tree = build_cluster_tree(g, d)

        def path_to_root(x):
            out = [x]
            while tree.parent[x] != x:
                x = tree.parent[x]
                out.append(x)
            return out

        centers = [c for c in d.centers][:40]
        for a in centers:
            for b in centers:
                if tree.root_of[a] != tree.root_of[b]:
                    continue
                pa = path_to_root(a)
                pb = set(path_to_root(b))
                want = next(x for x in pa if x in pb)
                assert tree.lca(a, b) == want
                assert tree.lca_walk(a, b) == want


def test_lca_distinct_components_signal(two_triangles):
    d = forced_decomp(6, 2, [0, 3])
    tree = build_cluster_tree(two_triangles, d)
    with pytest.raises(DisjointCentersError):
        tree.lca(0, 3)


def test_cluster_graph_view_protocol():
    g = gen_random_bounded(100, 3, 1)
    d = build_decomposition(g, 4, 1)
    view = ClusterGraphView(g, d)
    assert view.num_nodes() == len(d.centers)
    assert list(view.iter_nodes()) == d.centers
    s = d.centers[0]
    assert view.neighbors(s) == center_neighbors(g, d, s)
