"""Immutable bitset graphs and girth.

Adjacency is stored as one Python ``int`` per vertex, bit ``j`` set when the
vertex is adjacent to ``j``. Bipartite graphs keep left rows as masks over the
right part, which doubles as the 0/1 incidence matrix (rows = left side).
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@functools.total_ordering
class _Infinity:
    """Girth of an acyclic graph. Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("ramsey_lb.INFINITY")

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "infinity"


INFINITY = _Infinity()


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, adj: Sequence[int]):
        if len(adj) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {{{v}, {u}}}")
        self.n = n
        self.adj = tuple(adj)
        self._edges = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, k: int) -> "Graph":
        return cls.from_edges(k, [(i, (i + 1) % k) for i in range(k)])

    @classmethod
    def path(cls, k: int) -> "Graph":
        return cls.from_edges(k, [(i, i + 1) for i in range(k - 1)])

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = [(v, u) for v in range(self.n) for u in bits(self.adj[v] >> v << v) if u > v]
        return self._edges

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled so ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            row = 0
            for u in bits(self.adj[v]):
                j = index.get(u)
                if j is not None:
                    row |= 1 << j
            adj.append(row)
        return Graph(len(vertices), adj)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            adj[perm[v]] = mask_of(perm[u] for u in bits(self.adj[v]))
        return Graph(self.n, adj)

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [full & ~row & ~(1 << v) for v, row in enumerate(self.adj)])

    def is_independent(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        return all(not (self.adj[v] & m) for v in bits(m))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.adj, other.adj))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


class BipartiteGraph:
    """Bipartite graph with ``m`` left and ``n`` right vertices.

    ``rows[i]`` is the mask of right neighbours of left vertex ``i``; read as a
    matrix it is the incidence matrix with left vertices as rows.
    """

    __slots__ = ("m", "n", "rows", "_cols")

    def __init__(self, m: int, n: int, rows: Sequence[int]):
        if len(rows) != m:
            raise ValueError(f"expected {m} rows, got {len(rows)}")
        full = (1 << n) - 1
        for i, row in enumerate(rows):
            if row & ~full:
                raise ValueError(f"left vertex {i} has a neighbour outside 0..{n - 1}")
        self.m = m
        self.n = n
        self.rows = tuple(rows)
        self._cols = None

    @classmethod
    def from_edges(cls, m: int, n: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        rows = [0] * m
        for l, r in edges:
            if not (0 <= l < m and 0 <= r < n):
                raise ValueError(f"edge ({l}, {r}) outside {m}x{n}")
            rows[l] |= 1 << r
        return cls(m, n, rows)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "BipartiteGraph":
        m = len(matrix)
        n = len(matrix[0]) if m else 0
        rows = []
        for line in matrix:
            if len(line) != n:
                raise ValueError("ragged matrix")
            rows.append(mask_of(j for j, x in enumerate(line) if x))
        return cls(m, n, rows)

    @property
    def cols(self) -> tuple[int, ...]:
        """Left-neighbour masks of the right vertices."""
        if self._cols is None:
            cols = [0] * self.n
            for i, row in enumerate(self.rows):
                for j in bits(row):
                    cols[j] |= 1 << i
            self._cols = tuple(cols)
        return self._cols

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in bits(row)]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def matrix(self) -> list[list[int]]:
        return [[row >> j & 1 for j in range(self.n)] for row in self.rows]

    def transpose(self) -> "BipartiteGraph":
        return BipartiteGraph(self.n, self.m, self.cols)

    def degree_profile(self) -> "DegreeProfile":
        return DegreeProfile(
            tuple(row.bit_count() for row in self.rows),
            tuple(col.bit_count() for col in self.cols),
        )

    def to_graph(self) -> Graph:
        """Ordinary graph with left vertices ``0..m-1`` and right ``m..m+n-1``."""
        m = self.m
        adj = [row << m for row in self.rows] + [col for col in self.cols]
        return Graph(m + self.n, adj)

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "BipartiteGraph":
        """Rename left ``i`` to ``row_perm[i]`` and right ``j`` to ``col_perm[j]``."""
        rows = [0] * self.m
        for i, row in enumerate(self.rows):
            rows[row_perm[i]] = mask_of(col_perm[j] for j in bits(row))
        return BipartiteGraph(self.m, self.n, rows)

    def __eq__(self, other):
        return (
            isinstance(other, BipartiteGraph)
            and (self.m, self.n, self.rows) == (other.m, other.n, other.rows)
        )

    def __hash__(self):
        return hash((self.m, self.n, self.rows))

    def __repr__(self):
        return f"BipartiteGraph(m={self.m}, n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True)
class DegreeProfile:
    left_degrees: tuple[int, ...]
    right_degrees: tuple[int, ...]

    def __post_init__(self):
        if sum(self.left_degrees) != sum(self.right_degrees):
            raise ValueError("left and right degree sums differ")

    @property
    def edge_count(self) -> int:
        return sum(self.left_degrees)

    def biregular(self) -> tuple[int, int] | None:
        """``(left degree, right degree)`` when both sides are regular, else ``None``."""
        left = set(self.left_degrees)
        right = set(self.right_degrees)
        if len(left) <= 1 and len(right) <= 1:
            return (left.pop() if left else 0, right.pop() if right else 0)
        return None


def girth(g: Graph | BipartiteGraph):
    """Length of a shortest cycle, or :data:`INFINITY` for a forest.

    Runs a BFS from every vertex. A non-tree edge ``uw`` seen from root ``s``
    closes a walk of length ``d(u) + d(w) + 1`` that contains a cycle; the
    minimum is attained at any root lying on a shortest cycle.
    """
    if isinstance(g, BipartiteGraph):
        g = g.to_graph()
    adj = g.adj
    best = INFINITY
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if best is not INFINITY and 2 * du >= best:
                break
            for w in bits(adj[u]):
                if w == parent[u]:
                    continue
                dw = dist.get(w)
                if dw is None:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                else:
                    length = du + dw + 1
                    if best is INFINITY or length < best:
                        best = length
    return best


def named_graph(spec: str) -> Graph:
    """``Ck`` cycle, ``Kk`` clique, ``Pk`` path on k vertices, ``Ka,b`` complete bipartite."""
    s = spec.strip()
    try:
        if s[0] in "Cc" and s[1:].isdigit():
            k = int(s[1:])
            if k < 3:
                raise ValueError
            return Graph.cycle(k)
        if s[0] in "Pp" and s[1:].isdigit():
            return Graph.path(int(s[1:]))
        if s[0] in "Kk" and "," in s:
            a, b = (int(x) for x in s[1:].split(","))
            return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
        if s[0] in "Kk" and s[1:].isdigit():
            return Graph.complete(int(s[1:]))
    except (ValueError, IndexError):
        pass
    raise ValueError(f"unrecognised graph name {spec!r} (expected e.g. C5, K4, P3, K2,3)")
