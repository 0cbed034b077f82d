"""From a C4-free incidence structure to a certified F-free graph.

Stages: the clique graph on the points (one clique per line), an independent
uniform cut inside every clique, uniform random subsets to audit how evenly
edges spread, a vertex sample, and finally an exact independence number so
that ``r(F, alpha + 1) > order`` holds for the sampled graph.

The asymptotic argument deletes a vertex from every large independent set of
the sample; enumerating those sets is hopeless, so here alpha is computed
directly instead. That is stronger for the instance at hand and says nothing
asymptotic.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .bounds import container_count_bound, container_precondition, theorem1_values
from .budget import EXACT, Budget
from .embed import find_subgraph, verify_subgraph_map
from .formats import to_graph6
from .geometry import IncidenceStructure
from .graphs import Graph, bits
from .lfamily import girth_shortcut_lfree, is_lfree, lfamily
from .mis import alpha_upper_bound, count_independent_sets, independence_number
from .rng import RNG_NAME, substream


class PipelineError(ValueError):
    """A stage precondition failed; ``witness`` carries the evidence."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True)
class PipelineParams:
    """Constants of the construction; the defaults are the asymptotic ones.

    ``c_R``: sets of size ``c_R m log n / a`` are audited.
    ``c_S``: such sets should span ``c_S a^2/m |X|^2`` edges (also the
    density ``delta`` handed to the container count).
    ``c_t``: ``t = c_t n (log n)^2 / (ab)``.
    ``c_p``: vertices are kept with probability ``c_p a t / (m log n)``.
    ``c_a``: the degree condition ``a >= c_a (log n)^3``.
    """

    c_R: float = 2.0**10
    c_S: float = 2.0**-8
    c_t: float = 2.0**8
    c_p: float = 2.0**-13
    c_a: float = 2.0**12
    audit_trials: int = 1000
    profile: str = "paper"

    def __post_init__(self):
        for name in ("c_R", "c_S", "c_t", "c_p", "c_a"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def paper(cls) -> "PipelineParams":
        return cls()

    @classmethod
    def desk(cls) -> "PipelineParams":
        """Unit constants, so the derived quantities are non-trivial for small q."""
        return cls(c_R=1.0, c_S=0.25, c_t=1.0, c_p=1.0, c_a=1.0, profile="desk")

    @classmethod
    def named(cls, name: str) -> "PipelineParams":
        if name == "paper":
            return cls.paper()
        if name == "desk":
            return cls.desk()
        raise ValueError(f"unknown params profile {name!r}; expected 'paper' or 'desk'")

    def derived(self, m: int, n: int, a: float, b: float) -> dict:
        """``R``, ``t``, ``r``, ``delta``, sampling probability and the S coefficient."""
        L = math.log2(n)
        t = self.c_t * n * L * L / (a * b)
        p_raw = self.c_p * a * t / (m * L)
        return {
            "log2_n": L,
            "R": self.c_R * m * L / a,
            "S_coefficient": self.c_S * a * a / m,
            "delta": self.c_S * a * a / m,
            "t": t,
            "r": t / L,
            "p_raw": p_raw,
            "p": min(1.0, p_raw),
            "a_threshold": self.c_a * L**3,
            "a_large_enough": a >= self.c_a * L**3,
        }

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CliqueGraph:
    n: int
    cliques: tuple[tuple[int, ...], ...]
    membership: tuple[tuple[int, ...], ...]
    graph: Graph

    @property
    def m(self) -> int:
        return len(self.cliques)


def clique_graph(g: IncidenceStructure) -> CliqueGraph:
    """Union of one clique per line on that line's points.

    Lines pairwise share at most one point exactly when the incidence graph has
    no C4, which is also what makes the cliques edge-disjoint. A shared pair of
    points raises :class:`PipelineError` carrying the 2x2 witness.
    """
    inc = g.incidence
    n = inc.n
    adj = [0] * n
    owner: dict[tuple[int, int], int] = {}
    cliques = []
    for line, row in enumerate(inc.rows):
        members = tuple(bits(row))
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                prev = owner.setdefault((u, v), line)
                if prev != line:
                    raise PipelineError(
                        f"incidence graph contains C4: lines {prev} and {line} share points {u} and {v}",
                        {"lines": [prev, line], "points": [u, v]},
                    )
            adj_row = row
            for u in members:
                adj[u] |= adj_row & ~(1 << u)
        cliques.append(members)
    membership = [[] for _ in range(n)]
    for cid, members in enumerate(cliques):
        for v in members:
            membership[v].append(cid)
    graph = Graph(n, adj)
    expected = sum(len(c) * (len(c) - 1) // 2 for c in cliques)
    if graph.edge_count != expected:
        raise AssertionError("clique edges overlap although no C4 was found")
    return CliqueGraph(n, tuple(cliques), tuple(tuple(x) for x in membership), graph)


@dataclass(frozen=True)
class SparsifiedGraph:
    base: CliqueGraph
    seed: int
    cut_labels: tuple[tuple[int, ...], ...]
    graph: Graph

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "rng": RNG_NAME,
            "graph6": to_graph6(self.graph),
            "edges": self.graph.edge_count,
        }


def sparsify(h: CliqueGraph, seed: int) -> SparsifiedGraph:
    """Keep, inside each clique, only the edges across an independent uniform cut.

    Member ``j`` of clique ``c`` (members in increasing order) gets label bit
    ``j`` of ``substream(seed, "cut", c)``.
    """
    adj = [0] * h.n
    labels = []
    for cid, members in enumerate(h.cliques):
        word = substream(seed, "cut", cid).bits(len(members))
        lab = tuple(word >> j & 1 for j in range(len(members)))
        labels.append(lab)
        side0 = side1 = 0
        for v, x in zip(members, lab):
            if x:
                side1 |= 1 << v
            else:
                side0 |= 1 << v
        for v in bits(side0):
            adj[v] |= side1
        for v in bits(side1):
            adj[v] |= side0
    return SparsifiedGraph(h, seed, tuple(labels), Graph(h.n, adj))


@dataclass(frozen=True)
class CliqueMultiset:
    """Cliques given by their vertex sets; repeated entries are allowed."""

    cliques: tuple[frozenset, ...]

    @property
    def size(self) -> int:
        return len(self.cliques)

    @property
    def v(self) -> int:
        return sum(len(c) for c in self.cliques)

    @property
    def e(self) -> int:
        return len({(x, y) for c in self.cliques for x in c for y in c if x < y})

    def edge_disjoint(self) -> bool:
        return self.e == sum(len(c) * (len(c) - 1) // 2 for c in self.cliques)


@dataclass(frozen=True)
class Lemma1Result:
    bound: float
    e: int
    holds: bool
    precondition: bool


def lemma1_bound(s: CliqueMultiset) -> Lemma1Result:
    """``e(S) >= v(S)^2 / (4|S|)``; ``precondition`` is ``v(S) >= 2|S|``.

    ``holds`` compares exactly in integers (``4|S| e >= v^2``). The inequality
    is only claimed when the precondition holds.
    """
    if s.size == 0:
        return Lemma1Result(0.0, 0, True, True)
    v, e = s.v, s.e
    return Lemma1Result(v * v / (4 * s.size), e, 4 * s.size * e >= v * v, v >= 2 * s.size)


def random_clique_multiset(seed: int, trial: int, n: int, max_cliques: int, max_size: int) -> CliqueMultiset:
    """Edge-disjoint cliques on ``n`` vertices grown greedily from a substream.

    Candidates that would reuse an edge are skipped, so the result is always
    edge-disjoint; repeated single vertices are allowed.
    """
    rs = substream(seed, "lemma1", trial)
    used: set[tuple[int, int]] = set()
    out = []
    for _ in range(1 + rs.randbelow(max_cliques)):
        size = 1 + rs.randbelow(min(max_size, n))
        c = sorted(rs.sample(n, size))
        pairs = {(x, y) for i, x in enumerate(c) for y in c[i + 1 :]}
        if pairs & used:
            continue
        used |= pairs
        out.append(frozenset(c))
    return CliqueMultiset(tuple(out))


def dyadic_class(k: int, a: float) -> int:
    """Class 0 for ``1 <= k <= a``, class ``i`` for ``2^(i-1) a < k <= 2^i a``."""
    if k <= a:
        return 0
    i = 1
    while k > (2**i) * a:
        i += 1
    return i


@dataclass
class AuditReport:
    set_size: int
    trials: int
    distinct_sets: int
    min_ratio: float
    max_ratio: float
    mean_ratio: float
    histogram: dict
    s_threshold: float
    half_delta_threshold: float
    fraction_meeting_s: float
    fraction_meeting_half_delta: float
    dyadic_classes: dict
    paper_constants: dict = field(default_factory=dict)
    note: str = "empirical minimum over sampled sets; not a proof"
    ratios: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("ratios")
        return d


def _hist(values: list[float], bins: int = 20) -> dict:
    lo, hi = min(values), max(values)
    if hi == lo:
        return {"edges": [lo, hi], "counts": [len(values)]}
    width = (hi - lo) / bins
    counts = [0] * bins
    for x in values:
        counts[min(bins - 1, int((x - lo) / width))] += 1
    return {"edges": [lo + i * width for i in range(bins + 1)], "counts": counts}


def distribution_audit(hs: SparsifiedGraph, set_size: int, trials: int, params: PipelineParams | None = None) -> AuditReport:
    """Sample uniform ``set_size``-subsets X of the points and record ``e(H*[X]) / |X|^2``.

    Set ``i`` is drawn from ``substream(seed, "audit", set_size, i)``. Also
    tallies how the base cliques meet X in the dyadic size classes, with the
    martingale tail bound of each class evaluated at the asymptotic constants.
    """
    params = params or PipelineParams()
    h = hs.base
    n = h.n
    if not 1 <= set_size <= n:
        raise ValueError(f"set_size must be in 1..{n}")
    if trials < 1:
        raise ValueError("trials must be positive")
    a = max(len(x) for x in h.membership) if n else 0
    adj = hs.graph.adj
    ratios = []
    seen = set()
    class_totals: dict[int, dict] = {}
    clique_masks = [sum(1 << v for v in c) for c in h.cliques]
    for i in range(trials):
        X = substream(hs.seed, "audit", set_size, i).sample(n, set_size)
        xmask = 0
        for v in X:
            xmask |= 1 << v
        seen.add(xmask)
        e = sum((adj[v] & xmask).bit_count() for v in X) // 2
        ratios.append(e / (set_size * set_size))
        per_class: dict[int, list[int]] = {}
        for cm in clique_masks:
            k = (cm & xmask).bit_count()
            if k >= 1:
                c = dyadic_class(k, a)
                slot = per_class.setdefault(c, [0, 0, 0])
                slot[0] += 1
                slot[1] += k
                slot[2] += k * (k - 1) // 2
        for c, (cnt, v, eh) in per_class.items():
            tot = class_totals.setdefault(c, {"cliques": 0, "v": 0, "e_base": 0, "min_e_base": None})
            tot["cliques"] += cnt
            tot["v"] += v
            tot["e_base"] += eh
            if tot["min_e_base"] is None or eh < tot["min_e_base"]:
                tot["min_e_base"] = eh
    classes = {}
    for c in sorted(class_totals):
        tot = class_totals[c]
        denom = 64 * a if c == 0 else 2 ** (c + 6) * a
        classes[str(c)] = {
            "mean_cliques": tot["cliques"] / trials,
            "mean_v": tot["v"] / trials,
            "mean_e_base": tot["e_base"] / trials,
            "theoretical_tail_at_paper_constants": math.exp(-tot["min_e_base"] / denom) if a else 1.0,
        }
    m = h.m
    s_thr = params.c_S * a * a / m if m else 0.0
    half_delta = params.c_S * a * a / (2 * m) if m else 0.0
    paper = PipelineParams()
    return AuditReport(
        set_size=set_size,
        trials=trials,
        distinct_sets=len(seen),
        min_ratio=min(ratios),
        max_ratio=max(ratios),
        mean_ratio=sum(ratios) / trials,
        histogram=_hist(ratios),
        s_threshold=s_thr,
        half_delta_threshold=half_delta,
        fraction_meeting_s=sum(r >= s_thr for r in ratios) / trials,
        fraction_meeting_half_delta=sum(r >= half_delta for r in ratios) / trials,
        dyadic_classes=classes,
        paper_constants={
            "s_threshold": paper.c_S * a * a / m if m else 0.0,
            "half_delta_threshold": paper.c_S * a * a / (2 * m) if m else 0.0,
        },
        ratios=ratios,
    )


def is_odd_cycle(f: Graph) -> int | None:
    """``l`` when ``f`` is the cycle ``C_{2l+1}``, else ``None``."""
    if f.n < 3 or f.n % 2 == 0 or any(d != 2 for d in f.degrees()):
        return None
    # connected 2-regular means a single cycle
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= f.adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return (f.n - 1) // 2 if seen == (1 << f.n) - 1 else None


@dataclass
class WitnessReport:
    F: Graph
    F_name: str
    witness: Graph
    vertices: tuple[int, ...]
    alpha: int
    alpha_status: str
    alpha_upper: int
    alpha_set: tuple[int, ...]
    f_free: bool
    ramsey_statement: str | None
    provenance: dict

    @property
    def order(self) -> int:
        return self.witness.n

    def to_json(self) -> dict:
        return {
            "F": {"name": self.F_name, "graph6": to_graph6(self.F)},
            "witness": {"graph6": to_graph6(self.witness), "order": self.order, "edges": self.witness.edge_count},
            "sampled_vertices": list(self.vertices),
            "alpha": {
                "value": self.alpha,
                "status": self.alpha_status,
                "upper_bound": self.alpha_upper,
                "independent_set": list(self.alpha_set),
            },
            "f_free": self.f_free,
            "certified": self.ramsey_statement is not None,
            "ramsey_statement": self.ramsey_statement,
            "provenance": self.provenance,
        }


def sample_vertices(n: int, p: float, seed: int) -> list[int]:
    """Keep vertex ``v`` when ``substream(seed, "sample", v)`` draws below ``p``."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    return [v for v in range(n) if substream(seed, "sample", v).random() < p]


def sample_and_certify(
    hs: SparsifiedGraph,
    F: Graph,
    p: float,
    params: PipelineParams | None = None,
    seed: int | None = None,
    budget: Budget | None = None,
    F_name: str | None = None,
) -> WitnessReport:
    """Induce H* on a ``p``-sample, verify it is F-free and bound its independence number.

    With an exact alpha the report states ``r(F, alpha+1) > order``. If the
    budget ran out, the statement uses the clique-cover upper bound on alpha
    instead, which is still a valid (weaker) certificate.
    """
    params = params or PipelineParams()
    seed = hs.seed if seed is None else seed
    V = sample_vertices(hs.graph.n, p, seed)
    W = hs.graph.induced(V)
    copy = find_subgraph(F, W)
    f_free = copy is None
    mis = independence_number(W, "exact", budget)
    upper = mis.value if mis.status == EXACT else max(mis.value, alpha_upper_bound(W))
    name = F_name or to_graph6(F)
    statement = None
    if f_free:
        statement = f"r({name}, {upper + 1}) > {W.n}"
    prov = {
        "seed": seed,
        "p": p,
        "params": params.to_json(),
        "rng": RNG_NAME,
        "mis_nodes": mis.nodes,
    }
    if not f_free:
        assert verify_subgraph_map(F, W, copy)
        prov["F_copy"] = [V[x] for x in copy]
    return WitnessReport(F, name, W, tuple(V), mis.value, mis.status, upper, tuple(V[x] for x in mis.vertices), f_free, statement, prov)


def check_lfree(g: IncidenceStructure, F: Graph) -> dict:
    """Decide L(F)-freeness, trying the girth shortcut first for odd cycles."""
    l = is_odd_cycle(F)
    if l is not None and girth_shortcut_lfree(g.incidence, l):
        return {"free": True, "method": "girth", "girth": g.girth, "threshold": 4 * l + 2}
    fam = lfamily(F)
    res = is_lfree(g.incidence, fam)
    out = {"free": res.free, "method": "embedding", "family_size": len(fam), "family_status": fam.status}
    out.update(res.to_json())
    return out


def end_to_end(
    geometry: IncidenceStructure,
    F: Graph,
    params: PipelineParams | None = None,
    seed: int = 0,
    p: float | None = None,
    budget: Budget | None = None,
    audit_set_size: int | None = None,
    F_name: str | None = None,
) -> tuple[WitnessReport, AuditReport | None]:
    """Run every stage and return the witness report (and the audit, if requested).

    Aborts with :class:`PipelineError` when the geometry is not L(F)-free.
    """
    params = params or PipelineParams()
    free = check_lfree(geometry, F)
    if not free["free"]:
        raise PipelineError("incidence structure is not L(F)-free", free)
    h = clique_graph(geometry)
    hs = sparsify(h, seed)
    m, n, a, b = geometry.params
    configured = params.derived(m, n, a, b)
    if p is None:
        p = configured["p"]
    audit = None
    if audit_set_size:
        audit = distribution_audit(hs, audit_set_size, params.audit_trials, params)
    report = sample_and_certify(hs, F, p, params, seed, budget, F_name)
    paper = PipelineParams.paper()
    report.provenance.update(
        {
            "geometry": {
                "params": list(geometry.params),
                "girth": geometry.girth if isinstance(geometry.girth, int) else "infinity",
                "provenance": geometry.provenance,
            },
            "lfree": free,
            "clique_graph": {"n": h.n, "cliques": h.m, "edges": h.graph.edge_count},
            "sparsified": hs.to_json(),
            "theorem1": {
                "paper_constants": {
                    **theorem1_values(m, n, a, b, paper.c_t, paper.c_a).to_json(),
                    **{k: v for k, v in paper.derived(m, n, a, b).items()},
                },
                "configured": configured,
            },
        }
    )
    if audit is not None:
        report.provenance["audit"] = audit.to_json()
    return report, audit


DENSITY_MAX_N = 24


def density_profile(g: Graph) -> list[float]:
    """``d[R] = min 2 e(X) / |X|^2`` over every vertex set with ``|X| >= R``.

    Exhaustive over all ``2^n`` subsets, so limited to ``n <= 24``. ``d[R]`` is
    the largest ``delta`` for which the density hypothesis of the container
    count holds at threshold ``R``; ``d[0]`` covers the empty set as 0.
    """
    n = g.n
    if n > DENSITY_MAX_N:
        raise ValueError(f"exhaustive density profile limited to n <= {DENSITY_MAX_N}")
    best = [math.inf] * (n + 1)
    adj = g.adj
    # e(X) by adding vertices one at a time: e(X + v) = e(X) + |N(v) & X|
    edges = [0] * (1 << n)
    for x in range(1, 1 << n):
        low = x & -x
        v = low.bit_length() - 1
        rest = x ^ low
        edges[x] = edges[rest] + (adj[v] & rest).bit_count()
        k = x.bit_count()
        ratio = 2 * edges[x] / (k * k)
        if ratio < best[k]:
            best[k] = ratio
    out = [0.0] * (n + 1)
    running = math.inf
    for k in range(n, 0, -1):
        running = min(running, best[k])
        out[k] = running
    out[0] = 0.0
    return out


def container_audit(g: Graph, budget: Budget | None = None) -> dict:
    """Compare exact independent-set counts with the container count bound.

    For every threshold ``R`` the density ``delta`` is the exact minimum from
    :func:`density_profile`, ``r`` the least integer with
    ``exp(-delta r) n <= R``, and every ``t`` from ``r`` up to the
    independence number is checked with exact integers.
    """
    n = g.n
    prof = density_profile(g)
    mis = independence_number(g, "exact", budget)
    if mis.status != EXACT:
        raise PipelineError("independence number not certified within budget")
    counts = {}
    for t in range(mis.value + 2):
        c, status = count_independent_sets(g, t, budget)
        if status != EXACT:
            raise PipelineError("independent-set count not exact within budget")
        counts[t] = c
    rows = []
    for R in range(1, n + 1):
        delta = min(1.0, prof[R])
        r = 0
        while not container_precondition(n, r, R, delta):
            r += 1
            if r > n:
                break
        if r > n:
            continue
        for t in range(r, mis.value + 2):
            if R < t - r:
                continue
            bound = container_count_bound(n, r, R, t)
            rows.append({"R": R, "delta": delta, "r": r, "t": t, "count": counts[t], "bound": str(bound), "holds": counts[t] <= bound})
    return {
        "n": n,
        "alpha": mis.value,
        "counts": {str(k): v for k, v in counts.items()},
        "checks": rows,
        "violations": sum(not row["holds"] for row in rows),
    }
