"""Finite fields GF(q), q = p^k <= 512, via log/antilog tables.

Element ``x`` in ``0..q-1`` is the polynomial whose base-``p`` digits are its
coefficients (least significant digit = constant term). The modulus is the
first primitive monic polynomial of degree ``k`` in that same integer order,
so tables are reproducible without any external database.
"""

from __future__ import annotations

import functools

MAX_Q = 512


class FieldError(ValueError):
    pass


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``q = p**k`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # mod is monic
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return (prod + [0] * k)[:k]


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds: list[int], p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _primitive_modulus(p: int, k: int) -> list[int]:
    """Coefficients (constant first, leading 1 last) of the first primitive polynomial."""
    order = p**k - 1
    for low in range(1, p**k):
        mod = _digits(low, p, k) + [1]
        # powers of x must run through all nonzero residues before returning to 1
        cur = [0] * k
        cur[0] = 1
        x = [0] * k
        if k > 1:
            x[1] = 1
        else:
            x[0] = (-mod[0]) % p
        seen = set()
        ok = True
        for e in range(1, order + 1):
            cur = _poly_mulmod(cur, x, mod, p)
            key = tuple(cur)
            if key == tuple([1] + [0] * (k - 1)):
                ok = e == order
                break
            if key in seen or not any(cur):
                ok = False
                break
            seen.add(key)
        if ok:
            return mod
    raise FieldError(f"no primitive polynomial found for GF({p}^{k})")


class FiniteField:
    """GF(q) with integer elements ``0..q-1``; ``0`` and ``1`` are the field's zero and one."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise FieldError(f"{q} is not a prime power")
        if q > MAX_Q:
            raise FieldError(f"q={q} exceeds the supported maximum {MAX_Q}")
        self.q = q
        self.p, self.k = pk
        p, k = pk
        self.modulus = _primitive_modulus(p, k)
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        cur = [1] + [0] * (k - 1)
        gen = [0] * k
        if k > 1:
            gen[1] = 1
        else:
            gen[0] = (-self.modulus[0]) % p
        for e in range(q - 1):
            v = _undigits(cur, p)
            exp[e] = v
            log[v] = e
            cur = _poly_mulmod(cur, gen, self.modulus, p)
        for e in range(q - 1, 2 * (q - 1)):
            exp[e] = exp[e - (q - 1)]
        self.exp = exp
        self.log = log
        self.generator = exp[1] if q > 2 else 1
        if k == 1:
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
        else:
            dig = [_digits(x, p, k) for x in range(q)]
            self._add = [[_undigits([(x + y) % p for x, y in zip(dig[a], dig[b])], p) for b in range(q)] for a in range(q)]
        self._neg = [row.index(0) for row in self._add]

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(q)")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def dot(self, u, v) -> int:
        s = 0
        add, mul = self._add, self.mul
        for x, y in zip(u, v):
            if x and y:
                s = add[s][mul(x, y)]
        return s

    def scale(self, c: int, v) -> tuple[int, ...]:
        return tuple(self.mul(c, x) for x in v)

    def vadd(self, u, v) -> tuple[int, ...]:
        add = self._add
        return tuple(add[x][y] for x, y in zip(u, v))

    def normalize(self, v) -> tuple[int, ...]:
        """Projective representative: first nonzero coordinate scaled to 1."""
        for x in v:
            if x:
                return self.scale(self.inv(x), v)
        raise ValueError("zero vector has no projective point")

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    def __repr__(self):
        return f"GF({self.q})"


@functools.lru_cache(maxsize=None)
def gf(q: int) -> FiniteField:
    return FiniteField(q)
