import json

import networkx as nx
import pytest
from hypothesis import given

from ramsey_lb.formats import (
    ParseError,
    dumps,
    from_graph6,
    incidence_from_json,
    incidence_to_json,
    to_graph6,
)
from ramsey_lb.graphs import BipartiteGraph, Graph
from ramsey_lb.rng import substream

from strategies import bipartite, graphs


def test_graph6_known_strings():
    assert to_graph6(Graph.empty(1)) == "@"
    assert to_graph6(Graph.complete(2)) == "A_"
    assert to_graph6(Graph.empty(0)) == "?"


def random_graph(i: int, n: int) -> Graph:
    s = substream(11, "g6", i)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if s.random() < 0.4])


def test_graph6_bit_exact_against_networkx():
    # sizes cross the 62/63 boundary where the long size header kicks in
    for i, n in enumerate([0, 1, 2, 5, 13, 40, 62, 63, 64, 100, 130] * 10):
        g = random_graph(i, n)
        ours = to_graph6(g)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges())
        theirs = nx.to_graph6_bytes(h, header=False).decode().strip()
        assert ours == theirs
        back = nx.from_graph6_bytes(ours.encode())
        assert sorted(tuple(sorted(e)) for e in back.edges()) == g.edges()


@given(graphs(max_n=14))
def test_graph6_round_trip(g):
    assert from_graph6(to_graph6(g)) == g
    assert from_graph6(to_graph6(g, header=True)) == g


def test_graph6_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as e:
        from_graph6("")
    assert e.value.offset == 0
    with pytest.raises(ParseError) as e:
        from_graph6("D?")  # 5 vertices need 2 data bytes; only 1 given
    assert e.value.offset >= 1
    with pytest.raises(ParseError) as e:
        from_graph6("A\x7f")
    assert e.value.offset == 1


@given(bipartite())
def test_incidence_json_round_trip(b):
    text = incidence_to_json(b)
    back, extra = incidence_from_json(text)
    assert back == b
    d = json.loads(text)
    assert d["edges"] == sorted(d["edges"])


def test_incidence_json_labels_and_extra_keys():
    b = BipartiteGraph.from_matrix([[1, 0], [1, 1]])
    text = incidence_to_json(b, {"lines": ["x", "y"]}, provenance={"who": "test"})
    back, extra = incidence_from_json(text)
    assert back == b
    assert extra["labels"] == {"lines": ["x", "y"]}
    assert extra["provenance"] == {"who": "test"}


@pytest.mark.parametrize(
    "text",
    [
        '{"m": 1, "n": 1}',
        '{"m": 1, "n": 1, "edges": [[0, 1]]}',
        '{"m": 1, "n": 1, "edges": [[0]]}',
        '{"m": -1, "n": 1, "edges": []}',
        "[1, 2]",
        "{not json",
    ],
)
def test_incidence_json_malformed(text):
    with pytest.raises(ParseError) as e:
        incidence_from_json(text)
    assert e.value.offset >= 0


def test_dumps_is_deterministic_and_compact():
    a = dumps({"b": [1, 2, 3], "a": {"y": 1, "x": [0.5, 1e-05]}})
    b = dumps({"a": {"x": [0.5, 1e-05], "y": 1}, "b": [1, 2, 3]})
    assert a == b
    assert "[1, 2, 3]" in a
    assert json.loads(a)["a"]["x"] == [0.5, 1e-05]
