"""Slow, obviously-correct reference implementations.

Nothing here shares code with the fast paths it checks: no bitset tricks, no
pruning, just enumeration with :mod:`itertools`.
"""

from __future__ import annotations

import itertools

from .graphs import Graph


def alpha_bruteforce(g: Graph) -> int:
    """Largest independent set by scanning subset sizes from the top."""
    n = g.n
    edges = g.edges()
    for k in range(n, 0, -1):
        for sub in itertools.combinations(range(n), k):
            s = set(sub)
            if not any(u in s and v in s for u, v in edges):
                return k
    return 0


def count_independent_bruteforce(g: Graph, t: int) -> int:
    edges = g.edges()
    return sum(
        1
        for sub in itertools.combinations(range(g.n), t)
        if not any(u in sub and v in sub for u, v in edges)
    )


def _bipartite(edge_list) -> bool:
    colour: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for u, v in edge_list:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for s in adj:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def matrix_class(matrix) -> tuple:
    """Canonical representative under all row and column permutations (brute force)."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    best = None
    for cp in itertools.permutations(range(n)):
        rows = sorted(tuple(row[j] for j in cp) for row in matrix)
        key = (m, n, tuple(rows))
        if best is None or key < best:
            best = key
    return best if best is not None else (m, n, ())


def decompositions_bruteforce(f: Graph) -> set[frozenset]:
    """Valid edge decompositions as sets of edge sets.

    Every map from edges to labels ``0..e-1`` is tried and the resulting set
    partitions are collected, then filtered by the two conditions.
    """
    edges = f.edges()
    e = len(edges)
    partitions = set()
    for labels in itertools.product(range(e), repeat=e):
        parts: dict[int, list] = {}
        for edge, lab in zip(edges, labels):
            parts.setdefault(lab, []).append(edge)
        partitions.add(frozenset(frozenset(p) for p in parts.values()))
    out = set()
    for partition in partitions:
        if not all(_bipartite(p) for p in partition):
            continue
        vsets = [{x for ed in p for x in ed} for p in partition]
        if any(len(a & b) > 1 for a, b in itertools.combinations(vsets, 2)):
            continue
        out.add(partition)
    return out


def lfamily_bruteforce(f: Graph, with_c4: bool = True) -> set[tuple]:
    """L(F) as a set of :func:`matrix_class` keys, built from :func:`decompositions_bruteforce`."""
    out = set()
    for partition in decompositions_bruteforce(f):
        vsets = [{x for ed in p for x in ed} for p in partition]
        matrix = [[1 if v in vs else 0 for v in range(f.n)] for vs in vsets]
        out.add(matrix_class(matrix))
    if with_c4:
        out.add(matrix_class([[1, 1], [1, 1]]))
    return out
