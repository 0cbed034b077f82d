import itertools

import pytest

from ramsey_lb.fields import MAX_Q, FieldError, FiniteField, gf, prime_power

SMALL = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(13) == (13, 1)
    for bad in (0, 1, 6, 10, 12, 15, 100):
        assert prime_power(bad) is None


def test_rejects_non_prime_powers_and_large_q():
    with pytest.raises(FieldError):
        FiniteField(6)
    with pytest.raises(FieldError):
        FiniteField(1024)
    assert MAX_Q == 512


@pytest.mark.parametrize("q", SMALL)
def test_field_axioms_exhaustive(q):
    F = gf(q)
    E = range(q)
    for a in E:
        assert F.add(a, 0) == a and F.mul(a, 1) == a and F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b in itertools.product(E, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a
    for a, b, c in itertools.product(E, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q", [32, 49, 64])
def test_inverses_exhaustive_up_to_64(q):
    F = gf(q)
    assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, q))


@pytest.mark.parametrize("q", [4, 9, 27, 256, 343, 512])
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(q):
    F = gf(q)
    # some element has order exactly q-1 (the table generator)
    seen = set()
    x = 1
    g = next(a for a in range(2, q) if all(F.pow(a, (q - 1) // r) != 1 for r in _prime_factors(q - 1)))
    for _ in range(q - 1):
        seen.add(x)
        x = F.mul(x, g)
    assert len(seen) == q - 1 and x == 1


def _prime_factors(n):
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_frobenius_is_additive_and_fixes_prime_field(q):
    F = gf(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    fixed = [a for a in range(q) if F.frobenius(a) == a]
    assert len(fixed) == F.p


def test_normalize_projective_vector():
    F = gf(5)
    assert F.normalize((0, 2, 4)) == (0, 1, 2)
    assert F.normalize((3, 0, 1))[0] == 1
