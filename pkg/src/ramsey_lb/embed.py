"""Non-induced subgraph embedding by bitset backtracking.

Two front ends share one engine:

* :func:`embeds_side_respecting` places a bipartite pattern into a bipartite
  host with pattern-left going to host-left and pattern-right to host-right.
  This is submatrix containment up to arbitrary row AND column permutation
  (rows need not be consecutive or kept in order). Ordered-submatrix
  containment is a different problem and is not offered.
* :func:`find_subgraph` looks for a copy of an arbitrary graph ``F``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .budget import Budget
from .graphs import BipartiteGraph, Graph, bits


@dataclass(frozen=True)
class Embedding:
    """Injections of pattern-left into host-left and pattern-right into host-right."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def verify(self, pattern: BipartiteGraph, host: BipartiteGraph) -> bool:
        if len(set(self.left)) != len(self.left) or len(set(self.right)) != len(self.right):
            return False
        return all(host.rows[self.left[i]] >> self.right[j] & 1 for i, j in pattern.edges())

    def to_json(self) -> dict:
        return {"left": list(self.left), "right": list(self.right)}


def _search_order(p_adj: Sequence[int], sizes: Sequence[int]) -> list[int]:
    """Most constrained first: fewest host candidates, then most placed neighbours."""
    k = len(p_adj)
    deg = [a.bit_count() for a in p_adj]
    placed = 0
    order = []
    for _ in range(k):
        best = None
        best_key = None
        for x in range(k):
            if placed >> x & 1:
                continue
            key = ((p_adj[x] & placed).bit_count(), -sizes[x] if sizes[x] <= 1 else 0, deg[x], -x)
            if best_key is None or key > best_key:
                best, best_key = x, key
        order.append(best)
        placed |= 1 << best
    return order


def _monomorphism(
    p_adj: Sequence[int],
    p_allowed: Sequence[int],
    h_adj: Sequence[int],
    budget: Budget | None = None,
) -> list[int] | None:
    """Map pattern vertices to distinct host vertices preserving edges.

    ``p_allowed[x]`` is the mask of host vertices that may receive pattern
    vertex ``x`` (this is how sides, or a forced image, are imposed). Returns
    ``image`` with ``image[x]`` the host vertex of ``x``, or ``None``.
    """
    k = len(p_adj)
    if k == 0:
        return []
    h_deg = [a.bit_count() for a in h_adj]
    # host degree pruning
    allowed_by_x = []
    for x in range(k):
        d = p_adj[x].bit_count()
        m = 0
        for v in bits(p_allowed[x]):
            if h_deg[v] >= d:
                m |= 1 << v
        if not m:
            return None
        allowed_by_x.append(m)
    order = _search_order(p_adj, [a.bit_count() for a in allowed_by_x])
    pos = {x: i for i, x in enumerate(order)}
    back = [[pos[y] for y in bits(p_adj[x]) if pos[y] < i] for i, x in enumerate(order)]
    allowed = [allowed_by_x[x] for x in order]

    image = [0] * k
    cand = [0] * k
    used = 0
    i = 0
    cand[0] = allowed[0]
    while True:
        c = cand[i]
        if not c:
            i -= 1
            if i < 0:
                return None
            used &= ~(1 << image[i])
            continue
        if budget is not None:
            budget.tick()
        low = c & -c
        cand[i] = c ^ low
        image[i] = low.bit_length() - 1
        if i == k - 1:
            out = [0] * k
            for j, x in enumerate(order):
                out[x] = image[j]
            return out
        used |= low
        i += 1
        nxt = allowed[i] & ~used
        for j in back[i]:
            nxt &= h_adj[image[j]]
            if not nxt:
                break
        cand[i] = nxt


def embeds_side_respecting(
    pattern: BipartiteGraph, host: BipartiteGraph, budget: Budget | None = None
) -> tuple[bool, Embedding | None]:
    """Whether ``pattern`` occurs in ``host`` with sides preserved, plus a witness."""
    if pattern.m > host.m or pattern.n > host.n or pattern.edge_count > host.edge_count:
        return False, None
    pg = pattern.to_graph()
    hg = host.to_graph()
    left = (1 << host.m) - 1
    right = ((1 << host.n) - 1) << host.m
    image = _monomorphism(pg.adj, [left] * pattern.m + [right] * pattern.n, hg.adj, budget)
    if image is None:
        return False, None
    emb = Embedding(tuple(image[: pattern.m]), tuple(v - host.m for v in image[pattern.m :]))
    return True, emb


def find_subgraph(pattern: Graph, host: Graph, budget: Budget | None = None) -> list[int] | None:
    """A (not necessarily induced) copy of ``pattern`` in ``host`` as a vertex map."""
    if pattern.n > host.n or pattern.edge_count > host.edge_count:
        return None
    return _monomorphism(pattern.adj, [(1 << host.n) - 1] * pattern.n, host.adj, budget)


def contains_subgraph(pattern: Graph, host: Graph, budget: Budget | None = None) -> bool:
    return find_subgraph(pattern, host, budget) is not None


def verify_subgraph_map(pattern: Graph, host: Graph, image: Sequence[int]) -> bool:
    if len(set(image)) != len(image):
        return False
    return all(host.has_edge(image[u], image[v]) for u, v in pattern.edges())


def embeds_using_row(pattern: BipartiteGraph, host: BipartiteGraph, row: int) -> bool:
    """Whether ``pattern`` embeds with some pattern row landing on host row ``row``."""
    if pattern.m > host.m or pattern.n > host.n:
        return False
    pg = pattern.to_graph()
    hg = host.to_graph()
    left = ((1 << host.m) - 1) & ~(1 << row)
    right = ((1 << host.n) - 1) << host.m
    seen = set()
    for i in range(pattern.m):
        # rows with identical neighbourhoods are interchangeable
        if pattern.rows[i] in seen:
            continue
        seen.add(pattern.rows[i])
        allowed = [left] * pattern.m + [right] * pattern.n
        allowed[i] = 1 << row
        if _monomorphism(pg.adj, allowed, hg.adj) is not None:
            return True
    return False
