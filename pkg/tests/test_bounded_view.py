import pytest

from asymgraph import BoundedView, CostMeter, Graph, gen_random_bounded, gen_with_hubs


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def test_dmax_validation():
    with pytest.raises(ValueError):
        BoundedView(star(4), 2)


def test_star8_shape():
    # per the two-nodes-per-level construction: 2 + 4 = 6 virtual nodes,
    # the center keeps its two top-level children
    view = BoundedView(star(8), 3)
    assert view.num_nodes() == 9 + 6
    center_nbrs = view.neighbors(0)
    assert len(center_nbrs) == 2
    assert all(view.is_virtual(x) and view.owner(x) == 0 for x in center_nbrs)


def test_every_view_node_degree_capped():
    for g in (star(8), star(17), gen_with_hubs(60, 40, 1)):
        view = BoundedView(g, 3)
        for x in view.iter_nodes():
            assert len(view.neighbors(x)) <= 3


def test_bounded_input_is_identity(p5):
    view = BoundedView(p5, 3)
    assert view.num_nodes() == 5
    assert list(view.iter_nodes()) == list(range(5))
    assert view.neighbors(2) == [1, 3]


def test_both_endpoints_redirected():
    # edge between two high-degree vertices must be redirected on both sides
    edges = [(0, i) for i in range(2, 8)] + [(1, i) for i in range(2, 8)] + [(0, 1)]
    g = Graph(8, edges)
    assert g.degree(0) > 3 and g.degree(1) > 3
    view = BoundedView(g, 3)
    a, b = view.edge_view_endpoints(0, 1)
    assert view.is_virtual(a) and view.is_virtual(b)
    assert {view.owner(a), view.owner(b)} == {0, 1}


def test_round_trip_contracts_to_original():
    for seed in range(4):
        g = gen_with_hubs(50, 32, seed)
        view = BoundedView(g, 3)
        mapped = sorted(
            tuple(sorted((view.owner(a), view.owner(b))))
            for a, b in (view.edge_view_endpoints(u, v, c)
                         for u, v in g.distinct_edges()
                         for c in range(g.multiplicity(u, v))))
        assert mapped == sorted(g.edges())


def test_view_edges_are_symmetric():
    g = gen_with_hubs(40, 20, 2)
    view = BoundedView(g, 3)
    for x in view.iter_nodes():
        for y in view.neighbors(x):
            assert x in view.neighbors(y), (x, y)


def test_zero_writes_for_view_operations():
    g = gen_with_hubs(40, 20, 3)
    m = CostMeter()
    view = BoundedView(g, 3)
    for x in view.iter_nodes():
        view.neighbors(x, m)
    assert m.writes == 0
    assert m.reads > 0


def test_self_loop_on_high_degree_vertex():
    edges = [(0, i) for i in range(1, 9)] + [(0, 0)]
    g = Graph(9, edges)
    view = BoundedView(g, 3)
    # the view stays consistent: every listed neighbor lists back
    for x in view.iter_nodes():
        for y in view.neighbors(x):
            assert x in view.neighbors(y)


def test_view_connectivity_matches_base():
    from asymgraph.groundtruth import UnionFind
    g = gen_with_hubs(60, 40, 4)
    view = BoundedView(g, 3)
    nodes = list(view.iter_nodes())
    uf = UnionFind(nodes)
    for x in nodes:
        for y in view.neighbors(x):
            uf.union(x, y)
    for u in range(g.n):
        for v in g.adj[u]:
            assert uf.find(u) == uf.find(v)
