"""Quick oracle suite behind ``ramsey-lb selftest`` (a few seconds)."""

from __future__ import annotations

import logging
import time
from fractions import Fraction

from .bounds import conjecture_limit_check, theorem3_exponents
from .budget import Budget
from .embed import contains_subgraph
from .formats import from_graph6, to_graph6
from .geometry import build
from .graphs import Graph, girth, named_graph
from .lfamily import C4, lfamily, make_family
from .mis import independence_number
from .oracles import alpha_bruteforce, lfamily_bruteforce, matrix_class
from .pipeline import clique_graph, sparsify
from .rng import substream
from .zarankiewicz import ZarankiewiczInstance, z_bruteforce, z_exact

log = logging.getLogger(__name__)


def _exponents():
    a = theorem3_exponents(2, 3, Fraction(3, 5))
    b = theorem3_exponents(3, 2, Fraction(4, 7))
    return (a.t_exponent, a.log_exponent, b.t_exponent, b.log_exponent) == (
        Fraction(10, 7),
        Fraction(13, 7),
        Fraction(5, 4),
        Fraction(3, 2),
    )


def _c3_corollary():
    return all(
        (r.t_exponent, r.log_exponent) == (2, 3)
        for r in (theorem3_exponents(1, a, Fraction(2, 3)) for a in range(1, 11))
    )


def _limit():
    return all(
        c["nondecreasing"] and c["bounded_by_limit"]
        for c in (conjecture_limit_check(l, 10**4) for l in range(1, 6))
    )


def _geometries():
    want = {
        ("plane", 2): ((7, 7, 3, 3), 6),
        ("quadrangle", 2): ((15, 15, 3, 3), 8),
        ("hexagon", 2): ((63, 63, 3, 3), 12),
        ("hermitian", 2): ((9, 12, 3, 4), 6),
    }
    return all(tuple(build(f, q).params) == p and build(f, q).girth == g for (f, q), (p, g) in want.items())


def _lfamily():
    for name in ("K2", "P3", "C3", "C5"):
        f = named_graph(name)
        if {matrix_class(p.matrix()) for p in lfamily(f)} != lfamily_bruteforce(f):
            return False
    return True


def _mis():
    for i in range(40):
        s = substream(7, "selftest-mis", i)
        n = 4 + s.randbelow(9)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if s.random() < 0.35]
        g = Graph.from_edges(n, edges)
        if independence_number(g).value != alpha_bruteforce(g):
            return False
    return True


def _zarankiewicz():
    for fam in (make_family([C4]), lfamily(named_graph("P3"))):
        for m in range(1, 4):
            for n in range(1, 4):
                inst = ZarankiewiczInstance(m, n, fam, Budget())
                if z_exact(inst).value != z_bruteforce(inst):
                    return False
    return True


def _graph6():
    return all(from_graph6(to_graph6(g)) == g for g in (Graph.empty(0), Graph.complete(1), named_graph("C5"), named_graph("K4")))


def _girth():
    return girth(named_graph("C5")) == 5 and girth(build("plane", 2).incidence) == 6


def _transfer():
    h = clique_graph(build("quadrangle", 2))
    c3 = named_graph("C3")
    return not any(contains_subgraph(c3, sparsify(h, seed).graph) for seed in range(10))


CHECKS = [
    ("theorem-3 exponents", _exponents),
    ("triangle corollary exponents", _c3_corollary),
    ("conjecture limit monotone", _limit),
    ("geometry certificates q=2", _geometries),
    ("L(F) vs partition oracle", _lfamily),
    ("exact MIS vs brute force", _mis),
    ("z_exact vs brute force (3x3)", _zarankiewicz),
    ("graph6 round trip", _graph6),
    ("girth", _girth),
    ("triangle-freeness transfer W(3,2)", _transfer),
]


def run_selftest() -> dict:
    results = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            ok = bool(fn())
            err = None
        except Exception as exc:  # a crashing check is a failing check
            ok, err = False, f"{type(exc).__name__}: {exc}"
        # timings go to the log only, so the report stays reproducible
        log.info("%s: %s in %.3fs", name, "ok" if ok else "FAILED", time.perf_counter() - t0)
        entry = {"name": name, "ok": ok}
        if err:
            entry["error"] = err
        results.append(entry)
    passed = sum(r["ok"] for r in results)
    return {"checks": results, "passed": passed, "failed": len(results) - passed}
