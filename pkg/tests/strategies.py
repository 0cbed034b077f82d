"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from ramsey_lb.graphs import BipartiteGraph, Graph


@st.composite
def graphs(draw, min_n=0, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def bipartite(draw, max_m=5, max_n=5, min_m=1, min_n=1):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m))
    return BipartiteGraph(m, n, rows)


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))
