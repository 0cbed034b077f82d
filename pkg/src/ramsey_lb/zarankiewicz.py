"""Small exact Zarankiewicz numbers z(m, n, family) and the extremal envelopes.

Containment is side-respecting and closed under row and column permutation:
a matrix contains pattern P if some choice of rows and columns, in any order,
covers every 1 of P. The ordered-submatrix variant is not implemented.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .budget import EXACT, LOWER_BOUND, Budget, BudgetExhausted
from .embed import embeds_side_respecting, embeds_using_row
from .graphs import BipartiteGraph
from .lfamily import PatternFamily


@dataclass
class ZarankiewiczInstance:
    m: int
    n: int
    family: PatternFamily
    budget: Budget = field(default_factory=Budget)
    both_orientations: bool = False

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be at least 1")
        if len(self.family) == 0:
            raise ValueError("pattern family is empty")


@dataclass(frozen=True)
class ZarankiewiczResult:
    value: int
    status: str
    extremal_matrix: BipartiteGraph
    nodes_explored: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "status": self.status,
            "matrix": self.extremal_matrix.matrix(),
            "nodes_explored": self.nodes_explored,
        }


def _new_row_violates(rows: tuple[int, ...], n: int, patterns, both: bool) -> bool:
    """Whether appending the last row created a pattern copy (earlier rows were clean)."""
    host = BipartiteGraph(len(rows), n, rows)
    last = len(rows) - 1
    for p in patterns:
        if embeds_using_row(p, host, last):
            return True
    if both:
        # transposed containment: a copy must use some column touched by the new row
        ht = host.transpose()
        for p in patterns:
            if embeds_side_respecting(p, ht)[0]:
                return True
    return False


def _prefix_mask(n: int, w: int) -> int:
    return ((1 << w) - 1) << (n - w)


def _top_sum(cands: list[int], j: int, repeatable: dict[int, bool]) -> int:
    """Most 1s that ``j`` more rows drawn from ``cands`` could hold.

    A row that clashes with a copy of itself is counted once; any other row may
    fill every remaining slot. Self-clashing is monotone, so this stays an
    upper bound as rows are added.
    """
    total = 0
    for s in sorted(cands, key=lambda s: -s.bit_count()):
        if j <= 0:
            break
        w = s.bit_count()
        if repeatable[s]:
            return total + w * j
        total += w
        j -= 1
    return total


def _search(m: int, n: int, patterns, both: bool, budget: Budget, first_rows, incumbent: int):
    """Branch and bound over row sequences ``r_0 >= r_1 >= ...`` (as integers).

    Each node carries the rows that could still be appended without creating a
    pattern copy; compatibility only shrinks as rows are added, so the heaviest
    ``m - k`` compatible rows (repeated when a row does not clash with itself)
    bound what the remaining rows can contribute.
    Returns ``(best_value, best_rows, exhausted)``.
    """
    best_val = incumbent
    best_rows = None
    rows: list[int] = []
    repeatable: dict[int, bool] = {}

    def rows_cap(r: int, k: int) -> int:
        return r.bit_count() if k == 0 else rows[0].bit_count()

    def compatible(cands):
        out = []
        for s in cands:
            rows.append(s)
            ok = not _new_row_violates(tuple(rows), n, patterns, both)
            rows.pop()
            if ok:
                out.append(s)
        return out

    def rec(count: int, compat: list[int]) -> None:
        nonlocal best_val, best_rows
        budget.tick()
        k = len(rows)
        if k == m:
            if count > best_val:
                best_val, best_rows = count, tuple(rows)
            return
        if count + _top_sum(compat, m - k, repeatable) <= best_val:
            return
        if k == 0:
            # columns can be permuted so a heaviest row reads 1..10..0; it is then
            # the largest row, and no later row is heavier
            options = [s for s in compat if s == _prefix_mask(n, s.bit_count())]
            if first_rows is not None:
                options = [s for s in options if s in first_rows]
        else:
            options = compat
        # heavy rows first: good incumbents early make the bounds bite
        for r in sorted(options, key=lambda s: (-s.bit_count(), -s)):
            w = r.bit_count()
            # later rows must not exceed r; r itself may repeat
            tail = [s for s in compat if s <= r and s.bit_count() <= rows_cap(r, k)]
            if count + w + _top_sum(tail, m - k - 1, repeatable) <= best_val:
                continue
            rows.append(r)
            child = compatible(tail) if k + 1 < m else []
            if count + w + _top_sum(child, m - k - 1, repeatable) > best_val:
                rec(count + w, child)
            rows.pop()

    try:
        first = compatible(range((1 << n) - 1, -1, -1))
        for r in first:
            repeatable[r] = not _new_row_violates((r, r), n, patterns, both)
        rec(0, first)
    except BudgetExhausted:
        return best_val, best_rows, True
    return best_val, best_rows, False


def _worker(args):
    m, n, patterns, both, budget, first = args
    budget = Budget(budget.seconds, budget.nodes).start()
    val, rows, exhausted = _search(m, n, patterns, both, budget, {first}, -1)
    return val, rows, exhausted, budget.nodes_used


def z_exact(inst: ZarankiewiczInstance, workers: int = 1) -> ZarankiewiczResult:
    """Maximum number of 1s in an ``m x n`` matrix avoiding every family pattern.

    Rows are kept in non-increasing integer order and the first row is a
    block of leading ones at least as heavy as every other row; both lose
    nothing because the family is closed under row and column permutations.
    Pruning uses the heaviest rows still compatible with the current prefix. If the budget runs out the best matrix found so far
    is returned with status ``lower_bound``.
    """
    m, n = inst.m, inst.n
    patterns = inst.family.patterns
    both = inst.both_orientations
    if workers > 1:
        tops = [_prefix_mask(n, w) for w in range(n, -1, -1)]
        jobs = [(m, n, patterns, both, inst.budget, r) for r in tops]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(_worker, jobs))
        best_val, best_rows, exhausted, nodes = -1, None, False, 0
        for val, rows, ex, used in outs:
            exhausted |= ex
            nodes += used
            if rows is not None and val > best_val:
                best_val, best_rows = val, rows
    else:
        budget = inst.budget.start()
        best_val, best_rows, exhausted = _search(m, n, patterns, both, budget, None, -1)
        nodes = budget.nodes_used
    if best_rows is None:
        best_val, best_rows = 0, (0,) * m
    witness = BipartiteGraph(m, n, best_rows)
    return ZarankiewiczResult(best_val, LOWER_BOUND if exhausted else EXACT, witness, nodes)


def contains_submatrix_bruteforce(host: BipartiteGraph, pattern: BipartiteGraph) -> bool:
    """Try every ordered choice of rows and columns; independent of :mod:`embed`."""
    if pattern.m > host.m or pattern.n > host.n:
        return False
    pm = pattern.matrix()
    hm = host.matrix()
    ones = [(i, j) for i in range(pattern.m) for j in range(pattern.n) if pm[i][j]]
    for rsel in itertools.permutations(range(host.m), pattern.m):
        for csel in itertools.permutations(range(host.n), pattern.n):
            if all(hm[rsel[i]][csel[j]] for i, j in ones):
                return True
    return False


def z_bruteforce(inst: ZarankiewiczInstance) -> int:
    """Exhaustive maximum over all ``2^(mn)`` matrices (``mn <= 25``)."""
    m, n = inst.m, inst.n
    if m * n > 25:
        raise ValueError(f"brute force limited to m*n <= 25, got {m * n}")
    cells = [(i, j) for i in range(m) for j in range(n)]
    pats = list(inst.family.patterns)

    def free(host: BipartiteGraph) -> bool:
        if any(contains_submatrix_bruteforce(host, p) for p in pats):
            return False
        if inst.both_orientations:
            ht = host.transpose()
            return not any(contains_submatrix_bruteforce(ht, p) for p in pats)
        return True

    # scanning weights from the top, the first free matrix met is a maximum
    for w in range(m * n, -1, -1):
        for chosen in itertools.combinations(cells, w):
            if free(BipartiteGraph.from_edges(m, n, chosen)):
                return w
    return 0


def hoory_bound(m: int, n: int, l: int) -> float:
    """Constant-free envelope ``(mn)^beta + m + n`` with ``beta = (l+1)/(2l+1)``.

    Shape only: the true bound on edges of an ``m x n`` bipartite graph of girth
    at least ``4l + 4`` carries an unknown constant.
    """
    if m < 1 or n < 1 or l < 1:
        raise ValueError("need m, n, l >= 1")
    beta = hoory_beta(l)
    return float((m * n) ** (beta.numerator / beta.denominator) + m + n)


def hoory_beta(l: int) -> Fraction:
    return Fraction(l + 1, 2 * l + 1)


def ks_zarankiewicz_exponents(s: int) -> tuple[Fraction, Fraction]:
    """Exponents of ``m`` and ``n`` in the L(K_s)-free edge envelope."""
    if s < 3:
        raise ValueError("s must be at least 3")
    return Fraction(s - 1, 2 * s - 3), Fraction(2 * s - 4, 2 * s - 3)
