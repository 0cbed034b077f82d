"""Edge decompositions of F, their bipartite patterns J(H), and the family L(F).

A decomposition splits E(F) into nonempty parts, each inducing a bipartite
subgraph, with any two parts sharing at most one vertex. Its pattern has one
left vertex per part, joined to every vertex the part touches; the right side
is V(F). The family is every such pattern plus the 2x2 all-ones matrix (C4),
deduplicated up to row and column permutation.

Parts are unordered here: reordering parts permutes pattern rows, which the
permutation-closed containment ignores.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .budget import EXACT, INCOMPLETE, Budget, BudgetExhausted
from .embed import Embedding, embeds_side_respecting
from .formats import to_graph6
from .graphs import INFINITY, BipartiteGraph, Graph, bits, girth

C4 = BipartiteGraph(2, 2, (0b11, 0b11))

Edge = tuple[int, int]


@dataclass(frozen=True)
class EdgeDecomposition:
    vertex_count: int
    parts: tuple[tuple[Edge, ...], ...]

    def vertex_sets(self) -> list[set[int]]:
        return [{x for e in part for x in e} for part in self.parts]

    def is_valid(self, f: Graph) -> bool:
        edges = sorted(f.edges())
        flat = sorted(e for part in self.parts for e in part)
        if flat != edges or any(not part for part in self.parts):
            return False
        if not all(_is_bipartite(part) for part in self.parts):
            return False
        vs = self.vertex_sets()
        return all(len(a & b) <= 1 for a, b in itertools.combinations(vs, 2))


def _is_bipartite(edges) -> bool:
    colour: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for u, v in edges:
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


def enumerate_decompositions(f: Graph, budget: Budget | None = None) -> tuple[list[EdgeDecomposition], str]:
    """All valid unordered decompositions of E(F), and ``exact`` or ``incomplete``.

    Edges are assigned in order to an existing part or a new one (restricted
    growth, so each set partition appears once). Both conditions are monotone
    under adding edges to a part, so violations prune immediately.
    """
    budget = (budget or Budget()).start()
    edges = f.edges()
    if len(edges) > 12:
        raise ValueError(f"F has {len(edges)} edges; decomposition search supports at most 12")
    parts: list[list[Edge]] = []
    vsets: list[int] = []
    out: list[EdgeDecomposition] = []

    def ok(idx: int) -> bool:
        if not _is_bipartite(parts[idx]):
            return False
        mine = vsets[idx]
        return all((mine & other).bit_count() <= 1 for j, other in enumerate(vsets) if j != idx)

    def rec(i: int) -> None:
        budget.tick()
        if i == len(edges):
            out.append(EdgeDecomposition(f.n, tuple(tuple(p) for p in parts)))
            return
        u, v = edges[i]
        emask = (1 << u) | (1 << v)
        for idx in range(len(parts) + 1):
            if idx == len(parts):
                parts.append([])
                vsets.append(0)
            saved = vsets[idx]
            parts[idx].append((u, v))
            vsets[idx] = saved | emask
            if ok(idx):
                rec(i + 1)
            parts[idx].pop()
            vsets[idx] = saved
            if not parts[idx]:
                parts.pop()
                vsets.pop()

    try:
        rec(0)
    except BudgetExhausted:
        return out, INCOMPLETE
    return out, EXACT


def build_pattern(d: EdgeDecomposition) -> BipartiteGraph:
    """The parts-versus-vertices pattern: row ``i`` covers every vertex of part ``i``."""
    rows = []
    for vs in d.vertex_sets():
        row = 0
        for x in vs:
            row |= 1 << x
        rows.append(row)
    return BipartiteGraph(len(rows), d.vertex_count, rows)


def _perm_rows(rows, perm) -> tuple[int, ...]:
    out = []
    for row in rows:
        r = 0
        for j in bits(row):
            r |= 1 << perm[j]
        out.append(r)
    return tuple(sorted(out))


def canonical_form(p: BipartiteGraph) -> bytes:
    """Byte string equal for two patterns iff they agree up to row/column permutation.

    Minimises over permutations of the smaller side; for each such permutation
    sorting the other side's masks is the optimal choice, so the minimum is
    canonical. Which side is permuted depends only on the shape.
    """
    if p.n <= p.m:
        best = min(_perm_rows(p.rows, perm) for perm in itertools.permutations(range(p.n)))
        width = p.n
        tag = b"R"
    else:
        best = min(_perm_rows(p.cols, perm) for perm in itertools.permutations(range(p.m)))
        width = p.m
        tag = b"C"
    body = "".join(format(r, f"0{width}b") if width else "" for r in best)
    return f"{p.m}x{p.n}".encode() + tag + body.encode()


@dataclass(frozen=True)
class PatternFamily:
    source: Graph
    patterns: tuple[BipartiteGraph, ...]
    status: str = EXACT

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def to_json(self) -> dict:
        return {
            "F": to_graph6(self.source),
            "status": self.status,
            "patterns": [p.matrix() for p in self.patterns],
        }


def make_family(patterns, source: Graph | None = None, status: str = EXACT, with_c4: bool = False) -> PatternFamily:
    """Deduplicate ``patterns`` and sort them into the canonical family order."""
    seen: dict[bytes, BipartiteGraph] = {}
    pool = list(patterns) + ([C4] if with_c4 else [])
    for p in pool:
        seen.setdefault(canonical_form(p), p)
    ordered = sorted(seen.items(), key=lambda kv: (kv[1].m, kv[1].n, kv[0]))
    return PatternFamily(source if source is not None else Graph.empty(0), tuple(p for _, p in ordered), status)


def lfamily(f: Graph, budget: Budget | None = None) -> PatternFamily:
    decomps, status = enumerate_decompositions(f, budget)
    return make_family((build_pattern(d) for d in decomps), f, status, with_c4=True)


@dataclass(frozen=True)
class FreenessResult:
    free: bool
    pattern_index: int | None = None
    pattern: BipartiteGraph | None = None
    embedding: Embedding | None = None
    transposed: bool = False

    def to_json(self) -> dict:
        d = {"free": self.free}
        if not self.free:
            d.update(
                pattern_index=self.pattern_index,
                pattern=self.pattern.matrix(),
                embedding=self.embedding.to_json(),
                transposed=self.transposed,
            )
        return d


def _check_one(args):
    pattern, host = args
    return embeds_side_respecting(pattern, host)


def is_lfree(g: BipartiteGraph, fam: PatternFamily, transpose: bool = False, workers: int = 1) -> FreenessResult:
    """Whether no pattern of ``fam`` embeds with its left side in ``g``'s left part.

    With ``transpose`` the patterns are also tried the other way round
    (left side into ``g``'s right part). Patterns are tried in family order and
    the first violation is reported, so the answer does not depend on
    ``workers``.
    """
    jobs = [(p, g, False) for p in fam.patterns]
    if transpose:
        gt = g.transpose()
        jobs += [(p, gt, True) for p in fam.patterns]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_one, [(p, h) for p, h, _ in jobs]))
    else:
        results = [_check_one((p, h)) for p, h, _ in jobs]
    for k, ((found, emb), (p, _, flipped)) in enumerate(zip(results, jobs)):
        if found:
            return FreenessResult(False, k % len(fam.patterns), p, emb, flipped)
    return FreenessResult(True)


def girth_shortcut_lfree(g: BipartiteGraph, l: int) -> bool:
    """Sufficient test for L(C_{2l+1})-freeness: girth larger than 4l + 2.

    A ``False`` answer says nothing; run :func:`is_lfree` to decide.
    """
    gi = girth(g)
    return gi is INFINITY or gi > 4 * l + 2
