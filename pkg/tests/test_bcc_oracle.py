import pytest
from hypothesis import given, settings, strategies as st

from asymgraph import (BCForest, CostMeter, Graph, build_bcc_oracle,
                       build_cluster_tree, build_local_graph, disjoint_union,
                       gen_random_bounded, root_biconnectivity)
from asymgraph.bcc import _implicit_local_graph
from asymgraph.groundtruth import brute_biconn
from tests.test_decomposition import find_seed, forced_decomp


def full_check(g, oracle, gt):
    for u, v in g.distinct_edges():
        if u != v:
            assert oracle.is_bridge(u, v) == ((u, v) in gt.bridges), ("bridge", u, v)
    for v in range(g.n):
        assert oracle.is_articulation(v) == (v in gt.articulation), ("ap", v)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            assert oracle.vertices_biconnected(u, v) == gt.same_bcc(u, v), ("bi", u, v)
            assert oracle.one_edge_connected(u, v) == gt.one_edge_connected(u, v), \
                ("1e", u, v)
    mine = {}
    for u, v in g.distinct_edges():
        if u == v:
            continue
        lab = oracle.edge_bcc_label(u, v)
        for c in range(g.multiplicity(u, v)):
            mine.setdefault(lab, set()).add((u, v, c))
    assert {frozenset(s) for s in mine.values()} == \
        {frozenset(c) for c in gt.bcc_edges}, "edge partition"


# -- local graphs -----------------------------------------------------------------


def test_local_graph_isolated_cluster(c6):
    d = forced_decomp(6, 8, [0])
    tree = build_cluster_tree(c6, d, persist_euler=False, with_lca=False)
    lg = build_local_graph(c6, d, tree, 0, {0: 0})
    assert lg.outers == []
    assert sorted(lg.members) == list(range(6))
    assert sorted(lg.adj.distinct_edges()) == sorted(c6.distinct_edges())


def test_local_graph_two_cluster_path(p5):
    d = forced_decomp(5, 8, [0, 4])
    tree = build_cluster_tree(p5, d, persist_euler=False, with_lca=False)
    labels = {0: 0, 4: 1}
    lg0 = build_local_graph(p5, d, tree, 0, labels)
    lg4 = build_local_graph(p5, d, tree, 4, labels)
    # clusters are {0,1,2} and {3,4}; the canonical crossing edge is (2,3)
    assert lg0.outers == [3] and lg0.child_outer == {4: 3}
    assert lg4.outers == [2] and lg4.cluster_root == 3 and lg4.up_outer == 2


def test_category2_chain_count():
    # central singleton cluster with three same-label neighbor clusters
    g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])
    d = forced_decomp(4, 2, [0, 1, 2, 3])
    tree = build_cluster_tree(g, d, persist_euler=False, with_lca=False)
    assert tree.parent == {0: 0, 1: 0, 2: 0, 3: 0}
    labels = {0: 0, 1: 1, 2: 1, 3: 1}  # children share one cluster label
    lg = build_local_graph(g, d, tree, 0, labels)
    outer_set = set(lg.outers)
    chain_edges = [(a, b) for a, b in lg.adj.distinct_edges()
                   if a in outer_set and b in outer_set]
    assert chain_edges == [(1, 2), (2, 3)]  # exactly c - 1 = 2 edges


def test_root_biconnectivity_cycle_bit():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    d = forced_decomp(4, 4, [0, 2])
    tree = build_cluster_tree(g, d, persist_euler=False, with_lca=False)
    lg = build_local_graph(g, d, tree, 0, {0: 0, 2: 1})
    bits = root_biconnectivity(lg)
    assert bits == {2: 1}  # outer on a cycle through the anchor


def test_root_biconnectivity_path_bit():
    g = Graph(3, [(0, 1), (1, 2)])
    d = forced_decomp(3, 4, [0, 2])
    tree = build_cluster_tree(g, d, persist_euler=False, with_lca=False)
    lg = build_local_graph(g, d, tree, 0, {0: 0, 2: 1})
    assert root_biconnectivity(lg) == {2: 0}  # vertex 1 cuts


def test_implicit_local_graph(two_triangles):
    lg = _implicit_local_graph(two_triangles, [0, 1, 2])
    assert lg.cluster is None and lg.outers == [] and lg.root == 0
    assert lg.labeling.num_components == 1


# -- oracle construction ---------------------------------------------------------------


def test_bowtie_single_cluster_internal_bccs(bowtie):
    seed = find_seed(5, 5, {0})
    oracle = build_bcc_oracle(bowtie, 5, seed)
    assert len(oracle.records) == 1
    assert oracle.total_internal == 2  # the two triangles


def test_bridge_between_clusters_uses_tree_case(two_triangles):
    g = Graph(6, list(two_triangles.edges()) + [(2, 3)])
    d = forced_decomp(6, 4, [0, 3])
    oracle = build_bcc_oracle(g, 4, d.seed, decomp=d)
    child = 3 if oracle.tree.parent[3] == 0 else 0
    assert oracle.records[child].parent_edge_bridge
    assert oracle.is_bridge(2, 3)
    assert not oracle.is_bridge(0, 1)


def test_build_write_budget_small():
    n, k = 256, 4
    m = CostMeter()
    build_bcc_oracle(gen_random_bounded(n, 3, 0), k, 0, m)
    assert m.writes <= 8 * n // k


def test_queries_never_write(bowtie):
    oracle = build_bcc_oracle(bowtie, 4, 0, cache=True)
    checks = [
        lambda mt: oracle.is_bridge(2, 3, mt),
        lambda mt: oracle.is_articulation(2, mt),
        lambda mt: oracle.vertices_biconnected(0, 4, mt),
        lambda mt: oracle.one_edge_connected(0, 4, mt),
        lambda mt: oracle.edge_bcc_label(0, 1, mt),
    ]
    for fn in checks:
        mt = CostMeter()
        fn(mt)
        assert mt.writes == 0


def test_bowtie_answers(bowtie):
    gt = brute_biconn(bowtie)
    for seed in range(4):
        oracle = build_bcc_oracle(bowtie, 4, seed, cache=True)
        assert not oracle.vertices_biconnected(0, 4)  # vertex 2 cuts
        assert oracle.one_edge_connected(0, 4)        # no bridge
        full_check(bowtie, oracle, gt)


def test_edge_queries_validate_edges(bowtie):
    oracle = build_bcc_oracle(bowtie, 4, 0)
    with pytest.raises(ValueError):
        oracle.is_bridge(0, 3)
    with pytest.raises(ValueError):
        oracle.edge_bcc_label(0, 3)


def test_fixture_agreement(p5, c6, tri_bridge, blocks9, two_triangles):
    for g in (p5, c6, tri_bridge, blocks9, two_triangles):
        gt = brute_biconn(g)
        for k in (2, 4):
            for seed in range(3):
                oracle = build_bcc_oracle(g, k, seed, cache=True)
                full_check(g, oracle, gt)


def test_random_agreement():
    for seed in range(10):
        g = gen_random_bounded(64, 3, seed)
        gt = brute_biconn(g)
        oracle = build_bcc_oracle(g, 4, seed, cache=True)
        full_check(g, oracle, gt)


def test_disconnected_agreement():
    for seed in range(4):
        g = disjoint_union(gen_random_bounded(40, 3, seed),
                           gen_random_bounded(3, 2, seed + 9),
                           gen_random_bounded(20, 3, seed + 77))
        gt = brute_biconn(g)
        oracle = build_bcc_oracle(g, 4, seed, cache=True)
        full_check(g, oracle, gt)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)),
                min_size=1, max_size=20),
       st.integers(0, 3))
def test_multigraph_agreement(pairs, seed):
    g = Graph(9, pairs)
    gt = brute_biconn(g)
    oracle = build_bcc_oracle(g, 3, seed, cache=True)
    full_check(g, oracle, gt)


def test_linear_sublinear_consistency():
    for seed in range(6):
        g = gen_random_bounded(56, 3, seed)
        forest = BCForest(g)
        oracle = build_bcc_oracle(g, 4, seed, cache=True)
        for u, v in g.distinct_edges():
            if u != v:
                assert oracle.is_bridge(u, v) == forest.is_bridge(g, u, v)
        for v in range(g.n):
            assert oracle.is_articulation(v) == forest.is_articulation(v)
        for u in range(0, g.n, 3):
            for v in range(u + 1, g.n, 2):
                assert oracle.vertices_biconnected(u, v) == forest.same_bcc(u, v)


def test_build_deterministic():
    g = gen_random_bounded(90, 3, 5)
    a = build_bcc_oracle(g, 4, 5)
    b = build_bcc_oracle(g, 4, 5)
    assert a.records == b.records
    assert a.tree.parent == b.tree.parent
    assert a.total_internal == b.total_internal


def test_concurrent_queries_share_an_oracle():
    # oracles are immutable after build; readers use per-query meters
    import threading
    g = gen_random_bounded(120, 3, 3)
    gt = brute_biconn(g)
    oracle = build_bcc_oracle(g, 4, 3, cache=False)
    errors = []

    def worker(offset):
        for v in range(offset, g.n, 4):
            m = CostMeter()
            ok = oracle.is_articulation(v, m)
            if ok != (v in gt.articulation) or m.writes != 0:
                errors.append(v)

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
