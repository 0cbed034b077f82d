import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramsey_lb.bounds import (
    CONSTANT_FREE,
    as_fraction,
    conjecture_exponent,
    conjecture_limit_check,
    conjecture_matches_theorem3,
    container_count_bound,
    container_precondition,
    proof_chain_bound,
    theorem1_values,
    theorem3_exponents,
)
from ramsey_lb.geometry import build
from ramsey_lb.mis import count_independent_sets
from ramsey_lb.pipeline import clique_graph, sparsify


def test_theorem1_hermitian_q2():
    v = theorem1_values(9, 12, 3, 4)
    assert v.t == pytest.approx(256 * 12 * math.log2(12) ** 2 / 12)
    assert v.t == pytest.approx(3290.1, abs=0.05)
    assert not v.a_large_enough
    assert v.label == CONSTANT_FREE


def test_theorem1_n2():
    assert theorem1_values(2, 2, 1, 1).t == 512
    assert theorem1_values(1, 2, 1, 1).t == 512


def test_theorem1_mv_ratio_q4():
    q = 4
    m, n, a, b = q**3 + 1, q**4 - q**3 + q**2, q + 1, q**2
    v = theorem1_values(m, n, a, b)
    assert v.t / (256 * math.log2(n) ** 2) == pytest.approx(208 / 80)


@given(st.integers(2, 10**6), st.integers(1, 1000), st.integers(1, 1000))
def test_theorem1_lower_bound_identity(n, a, b):
    # bt / log n = 2^8 n log n / a, independent of b
    v = theorem1_values(1, n, a, b)
    assert v.lower_bound == pytest.approx(256 * n * math.log2(n) / a, rel=1e-9)


def test_theorem1_domain():
    with pytest.raises(ValueError):
        theorem1_values(0, 5, 1, 1)
    with pytest.raises(ValueError):
        theorem1_values(1, 1, 1, 1)


def test_theorem3_reference_values():
    r = theorem3_exponents(2, 3, Fraction(3, 5))
    assert (r.t_exponent, r.log_exponent) == (Fraction(10, 7), Fraction(13, 7))
    r = theorem3_exponents(3, 2, Fraction(4, 7))
    assert (r.t_exponent, r.log_exponent) == (Fraction(5, 4), Fraction(3, 2))


@pytest.mark.parametrize("alpha", [1, 2, 5, 10])
def test_theorem3_triangle_case(alpha):
    r = theorem3_exponents(1, alpha, Fraction(2, 3))
    assert r.valid
    assert (r.t_exponent, r.log_exponent) == (2, 3)


def test_theorem3_intermediates_are_consistent():
    a, b = Fraction(3), Fraction(3, 5)
    r = theorem3_exponents(2, a, b)
    assert r.m_exponent == (a + b - a * b) / (a * b - b + 1)
    assert r.t_in_n_exponent == (a - 3 * b - a * b + 2) / (a * b - b + 1)
    # t = n^x implies n = t^(1/x); the bound b t / log n has t-exponent (alpha*beta... ) consistent with X
    assert r.t_exponent == (a * b - 3 * b + 2) / (a - 3 * b - a * b + 2)


def test_theorem3_flags_invalid():
    r = theorem3_exponents(2, 3, Fraction(4, 5))
    assert not r.valid and not r.flags["beta_at_most_hoory"]
    assert r.t_exponent is None
    r = theorem3_exponents(1, Fraction(1, 2), Fraction(2, 3))
    assert not r.flags["alpha_at_least_1"]


def test_theorem3_exact_rationals_in_json():
    d = theorem3_exponents(2, 3, "3/5").to_json()
    assert d["t_exponent"] == "10/7" and d["log_exponent"] == "13/7"
    assert d["constants"] == CONSTANT_FREE


def test_as_fraction():
    assert as_fraction("3/5") == Fraction(3, 5)
    assert as_fraction(0.6) == Fraction(3, 5)
    assert as_fraction(2) == 2


def test_conjecture_values():
    assert conjecture_exponent(2, 3) == Fraction(10, 7)
    assert conjecture_exponent(1, 1) == 2
    assert conjecture_exponent(2, 10**9) < Fraction(3, 2)
    assert Fraction(3, 2) - conjecture_exponent(2, 10**9) < Fraction(1, 10**8)
    with pytest.raises(ValueError):
        conjecture_exponent(0, 1)


def test_conjecture_consistent_with_theorem3():
    for l in range(1, 11):
        for a in range(1, 11):
            assert conjecture_matches_theorem3(l, a)


def test_theorem3_increasing_in_alpha():
    for l in range(1, 6):
        beta = Fraction(l + 1, 2 * l + 1)
        vals = [theorem3_exponents(l, Fraction(a, 2), beta).t_exponent for a in range(2, 60)]
        assert all(x <= y for x, y in zip(vals, vals[1:]))
        if l > 1:
            assert all(x < y for x, y in zip(vals, vals[1:]))


def test_limit_check():
    for l in range(1, 6):
        c = conjecture_limit_check(l, 10**6)
        assert c["nondecreasing"] and c["bounded_by_limit"]
        assert Fraction(c["limit"]) == Fraction(l + 1, l)
    with pytest.raises(ValueError):
        conjecture_limit_check(1, 10**10)


def test_container_count():
    assert container_count_bound(10, 1, 4, 3) == 60
    for n, t in [(10, 3), (30, 7)]:
        assert container_count_bound(n, t, 5, t) == math.comb(n, t)
    with pytest.raises(ValueError):
        container_count_bound(10, 4, 4, 3)
    with pytest.raises(ValueError):
        container_count_bound(10, 1, 1, 3)
    assert container_precondition(100, 10, 40, 0.1)
    assert not container_precondition(100, 1, 40, 0.1)


def test_container_bound_dominates_count_on_w32():
    # with R = n the density hypothesis holds for delta = 0, so any r works
    g = sparsify(clique_graph(build("quadrangle", 2)), 0).graph
    n = g.n
    for t in range(0, 9):
        count = count_independent_sets(g, t)[0]
        for r in range(0, t + 1):
            assert count <= container_count_bound(n, r, n, t)


def test_proof_chain_examples():
    c = proof_chain_bound(63, 4, 40, 12, 63, 3)
    assert c.holds
    z = proof_chain_bound(10, 0, 5, 0, 10, 2)
    assert z.log2_count_bound == 0 and z.log2_middle == 0 and z.log2_final == 0 and z.holds


def test_proof_chain_random_tuples():
    # valid tuples: r <= t / log n and R <= 2^10 m log n / a, the regime of the argument
    rnd = random.Random(2024)
    for _ in range(1000):
        n = rnd.randint(4, 10**5)
        m = rnd.randint(1, n)
        a = rnd.randint(1, 50)
        t = rnd.randint(1, 200)
        L = math.log2(n)
        r = rnd.randint(0, math.floor(t / L))
        R_max = math.floor(2**10 * m * L / a)
        if R_max < t - r:
            continue
        R = rnd.randint(max(1, t - r), R_max)
        c = proof_chain_bound(n, r, R, t, m, a)
        assert c.holds, (n, r, R, t, m, a)


def test_proof_chain_first_link_unconditional():
    rnd = random.Random(7)
    for _ in range(1000):
        n = rnd.randint(1, 400)
        t = rnd.randint(1, 60)
        r = rnd.randint(0, min(t, n))
        R = rnd.randint(max(1, t - r), 2 * n + t)
        assert proof_chain_bound(n, r, R, t, rnd.randint(1, 400), rnd.randint(1, 20)).first_link


def test_proof_chain_with_proof_parameters():
    # R = 2^10 m log n / a and r = t / log n as in the argument
    for n, m, a in [(63, 63, 3), (364, 364, 4), (1000, 500, 10)]:
        L = math.log2(n)
        for t in (20, 50, 100):
            R = math.ceil(2**10 * m * L / a)
            r = max(0, math.floor(t / L))
            assert proof_chain_bound(n, r, R, t, m, a).holds
