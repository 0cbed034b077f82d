import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramsey_lb.geometry import projective_plane
from ramsey_lb.graphs import INFINITY, BipartiteGraph, DegreeProfile, Graph, girth, named_graph

from strategies import bipartite, graphs


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_graph_rejects_asymmetric_and_loops():
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0b00])
    with pytest.raises(ValueError):
        Graph(1, [0b1])


def test_basic_constructors():
    assert Graph.complete(5).edge_count == 10
    assert Graph.cycle(6).degrees() == [2] * 6
    assert Graph.path(4).edge_count == 3
    assert Graph.empty(3).edge_count == 0
    k23 = named_graph("K2,3")
    assert k23.edge_count == 6 and sorted(k23.degrees()) == [2, 2, 2, 3, 3]


def test_named_graph_rejects_garbage():
    for bad in ("X5", "C2", "", "K"):
        with pytest.raises(ValueError):
            named_graph(bad)


def test_girth_cycle_tree_heawood():
    assert girth(Graph.cycle(6)) == 6
    tree = Graph.from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert girth(tree) is INFINITY
    assert girth(Graph.empty(4)) is INFINITY
    heawood = projective_plane(2).incidence
    assert girth(heawood) == 6
    assert girth(heawood.to_graph()) == 6


def test_infinity_sentinel_orders_above_integers():
    assert INFINITY > 10**9 and not INFINITY < 3
    assert INFINITY == INFINITY
    assert str(INFINITY) in ("inf", "infinity")


@given(graphs(max_n=10))
def test_girth_matches_networkx(g):
    h = to_nx(g)
    cycles = nx.minimum_cycle_basis(h)
    expected = min((len(c) for c in cycles), default=None)
    got = girth(g)
    if expected is None:
        assert got is INFINITY
    else:
        assert got == expected


@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_girth_permutation_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert girth(g.relabel(perm)) == girth(g)


@given(bipartite(max_m=5, max_n=5))
def test_bipartite_girth_even_or_infinite(b):
    gi = girth(b)
    assert gi is INFINITY or gi % 2 == 0


@given(bipartite())
def test_degree_profile_sums(b):
    prof = b.degree_profile()
    assert sum(prof.left_degrees) == sum(prof.right_degrees) == b.edge_count


def test_degree_profile_rejects_mismatch():
    with pytest.raises(ValueError):
        DegreeProfile((1, 1), (1,))


def test_bipartite_transpose_and_graph():
    b = BipartiteGraph.from_matrix([[1, 1, 0], [0, 1, 1]])
    assert b.transpose().matrix() == [[1, 0], [1, 1], [0, 1]]
    g = b.to_graph()
    assert g.n == 5 and g.edge_count == 4
    assert g.has_edge(0, 2) and g.has_edge(1, 4) and not g.has_edge(0, 4)


@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_induced_subgraph(g, rnd):
    vs = sorted(rnd.sample(range(g.n), rnd.randint(0, g.n)))
    h = g.induced(vs)
    for i, u in enumerate(vs):
        for j, v in enumerate(vs):
            assert h.has_edge(i, j) == (u != v and g.has_edge(u, v))


@given(graphs(max_n=9))
def test_complement_involution(g):
    assert g.complement().complement() == g
    assert g.edge_count + g.complement().edge_count == g.n * (g.n - 1) // 2
