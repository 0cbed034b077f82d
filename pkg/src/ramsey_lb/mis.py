"""Maximum independent sets and independent-set counting on bitset graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .budget import EXACT, LOWER_BOUND, Budget, BudgetExhausted
from .graphs import Graph, bits, mask_of

ORDERS = ("degree", "degree_reverse")


@dataclass(frozen=True)
class MISResult:
    value: int
    status: str
    vertices: tuple[int, ...]
    nodes: int

    def to_json(self) -> dict:
        return {"value": self.value, "status": self.status, "vertices": list(self.vertices), "nodes": self.nodes}


def _components(adj, cand: int) -> list[int]:
    comps = []
    rest = cand
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def _clique_cover(adj, cand: int) -> int:
    """Greedy clique partition size; an upper bound on alpha of ``cand``."""
    count = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        clique = low
        common = adj[v] & rest
        while common:
            u_low = common & -common
            clique |= u_low
            common &= adj[u_low.bit_length() - 1]
        rest &= ~clique
        count += 1
    return count


def _low_degree_set(adj, comp: int) -> int:
    """Maximum independent set of a path or cycle component (max degree <= 2)."""
    start = None
    for v in bits(comp):
        if (adj[v] & comp).bit_count() <= 1:
            start = v
            break
    is_cycle = start is None
    if is_cycle:
        start = (comp & -comp).bit_length() - 1
    walk = [start]
    seen = 1 << start
    cur = start
    while True:
        nxt = adj[cur] & comp & ~seen
        if not nxt:
            break
        cur = (nxt & -nxt).bit_length() - 1
        walk.append(cur)
        seen |= 1 << cur
    chosen = walk[0::2]
    if is_cycle and len(walk) % 2 == 1 and len(walk) > 1:
        chosen = chosen[:-1]
    return mask_of(chosen)


class _Solver:
    def __init__(self, g: Graph, budget: Budget, reverse: bool):
        self.adj = g.adj
        self.budget = budget
        self.reverse = reverse

    def _pick(self, cand: int) -> int:
        adj = self.adj
        best_v, best_d = -1, -1
        for v in bits(cand):
            d = (adj[v] & cand).bit_count()
            if d > best_d or (self.reverse and d == best_d):
                best_v, best_d = v, d
        return best_v

    def solve(self, cand: int, lb: int) -> int | None:
        """Largest independent subset of ``cand`` if it has more than ``lb`` vertices."""
        self.budget.tick()
        adj = self.adj
        forced = 0
        # take isolated and pendant vertices: some maximum set contains them
        changed = True
        while changed and cand:
            changed = False
            for v in bits(cand):
                if not cand >> v & 1:
                    continue
                nb = adj[v] & cand
                if nb.bit_count() <= 1:
                    forced |= 1 << v
                    cand &= ~(nb | (1 << v))
                    changed = True
        base = forced.bit_count()
        if not cand:
            return forced if base > lb else None
        if base + _clique_cover(adj, cand) <= lb:
            return None

        comps = _components(adj, cand)
        if len(comps) > 1:
            total = forced
            rest_ub = sum(c.bit_count() for c in comps)
            for c in sorted(comps, key=lambda c: (c.bit_count(), c)):
                rest_ub -= c.bit_count()
                part = self.solve(c, -1)
                total |= part
                if total.bit_count() + rest_ub <= lb:
                    return None
            return total if total.bit_count() > lb else None

        if max((adj[v] & cand).bit_count() for v in bits(cand)) <= 2:
            found = forced | _low_degree_set(adj, cand)
            return found if found.bit_count() > lb else None

        v = self._pick(cand)
        best = None
        need = lb - base
        with_v = self.solve(cand & ~adj[v] & ~(1 << v), need - 1)
        if with_v is not None:
            best = with_v | (1 << v)
            need = best.bit_count()
        without = self.solve(cand & ~(1 << v), need)
        if without is not None:
            best = without
        return None if best is None else best | forced


def greedy_independent_set(g: Graph) -> int:
    """Min-degree greedy followed by (1,2)-swap local search."""
    adj = g.adj
    cand = (1 << g.n) - 1
    chosen = 0
    while cand:
        v = min(bits(cand), key=lambda u: ((adj[u] & cand).bit_count(), u))
        chosen |= 1 << v
        cand &= ~(adj[v] | (1 << v))

    improved = True
    while improved:
        improved = False
        for v in bits(chosen):
            # outsiders whose only chosen neighbour is v
            free = 0
            for u in bits(adj[v] & ~chosen):
                if (adj[u] & chosen) == (1 << v):
                    free |= 1 << u
            for u in bits(free):
                others = free & ~adj[u] & ~(1 << u)
                if others:
                    w = (others & -others).bit_length() - 1
                    chosen = (chosen & ~(1 << v)) | (1 << u) | (1 << w)
                    # extend greedily with anything now unblocked
                    for x in range(g.n):
                        if not (chosen >> x & 1) and not (adj[x] & chosen):
                            chosen |= 1 << x
                    improved = True
                    break
            if improved:
                break
    return chosen


def independence_number(
    g: Graph, mode: str = "exact", budget: Budget | None = None, order: str = "degree"
) -> MISResult:
    """Independence number of ``g``.

    ``exact`` runs branch and bound (branch on a maximum-degree vertex, bound by
    a greedy clique cover, i.e. a greedy colouring of the complement), returning
    status ``lower_bound`` with the best known set if the budget runs out.
    ``heuristic`` always returns ``lower_bound``. ``order`` picks the tie-break
    among equal-degree branch vertices: lowest id (``degree``) or highest id
    (``degree_reverse``). Returned sets are checked independent.
    """
    if order not in ORDERS:
        raise ValueError(f"unknown vertex order {order!r}; expected one of {ORDERS}")
    budget = (budget or Budget()).start()
    lower = greedy_independent_set(g)
    status = LOWER_BOUND
    best = lower
    if mode == "exact":
        solver = _Solver(g, budget, reverse=(order == "degree_reverse"))
        try:
            found = solver.solve((1 << g.n) - 1, lower.bit_count() - 1)
        except BudgetExhausted:
            found = None
        else:
            status = EXACT
        if found is not None and found.bit_count() > best.bit_count():
            best = found
    elif mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")
    vertices = tuple(bits(best))
    if not g.is_independent(vertices):
        raise AssertionError("internal error: returned set is not independent")
    return MISResult(len(vertices), status, vertices, budget.nodes_used)


def count_independent_sets(g: Graph, t: int, budget: Budget | None = None) -> tuple[int, str]:
    """Number of independent sets with exactly ``t`` vertices.

    On budget exhaustion returns the count found so far (a lower bound) with
    status ``lower_bound``.
    """
    budget = (budget or Budget()).start()
    adj = g.adj
    found = 0

    def rec(cand: int, k: int) -> int:
        nonlocal found
        if k == 0:
            found += 1
            return 1
        if cand.bit_count() < k:
            return 0
        budget.tick()
        total = 0
        while cand and cand.bit_count() >= k:
            low = cand & -cand
            cand ^= low
            total += rec(cand & ~adj[low.bit_length() - 1], k - 1)
        return total

    if t < 0:
        return 0, EXACT
    try:
        return rec((1 << g.n) - 1, t), EXACT
    except BudgetExhausted:
        return found, LOWER_BOUND


def alpha_upper_bound(g: Graph) -> int:
    """Greedy clique-cover size, a certified upper bound on the independence number."""
    return _clique_cover(g.adj, (1 << g.n) - 1)
