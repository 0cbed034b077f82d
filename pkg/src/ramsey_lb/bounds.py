"""Closed-form bounds and exponents, evaluated without their Omega/O constants.

Exponents are exact :class:`~fractions.Fraction` values. Magnitudes are floats,
except binomial products, which are exact integers. Logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Union

import numpy as np

Rational = Union[Fraction, int, str]

CONSTANT_FREE = "constant-free: unspecified positive constants omitted"


def as_fraction(x: Rational | float) -> Fraction:
    """Exact rational from an int, a Fraction, or a string like ``"3/5"`` or ``"0.6"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


@dataclass(frozen=True)
class Theorem1Values:
    t: float
    lower_bound: float
    a_large_enough: bool
    a_threshold: float
    label: str = CONSTANT_FREE

    def to_json(self) -> dict:
        return asdict(self)


def theorem1_values(m: int, n: int, a: float, b: float, c_t: float = 2.0**8, c_a: float = 2.0**12) -> Theorem1Values:
    """``t = c_t n (log n)^2 / (ab)``, the bound ``bt / log n`` and the degree precondition.

    The precondition is ``a >= c_a (log n)^3``; it is reported, never enforced.
    """
    if min(m, n, a, b) < 1:
        raise ValueError("m, n, a, b must all be at least 1")
    if n < 2:
        raise ValueError("n must be at least 2 so that log n > 0")
    L = math.log2(n)
    t = c_t * n * L * L / (a * b)
    threshold = c_a * L**3
    return Theorem1Values(t=t, lower_bound=b * t / L, a_large_enough=a >= threshold, a_threshold=threshold)


@dataclass(frozen=True)
class ExponentReport:
    l: int
    alpha: Fraction
    beta: Fraction
    valid: bool
    flags: dict
    t_exponent: Fraction | None = None
    log_exponent: Fraction | None = None
    m_exponent: Fraction | None = None
    t_in_n_exponent: Fraction | None = None

    def to_json(self) -> dict:
        def s(x):
            return None if x is None else str(x)

        return {
            "l": self.l,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "valid": self.valid,
            "flags": self.flags,
            "t_exponent": s(self.t_exponent),
            "log_exponent": s(self.log_exponent),
            "m_exponent_in_n": s(self.m_exponent),
            "t_exponent_in_n": s(self.t_in_n_exponent),
            "constants": CONSTANT_FREE,
        }


def theorem3_exponents(l: int, alpha: Rational, beta: Rational) -> ExponentReport:
    """Exponents of ``t`` and of ``1/log t`` in the odd-cycle bound.

    The bound reads ``t^X / (log t)^Y`` with
    ``X = (ab - 3b + 2) / (a - 3b - ab + 2)`` and
    ``Y = (3ab - a - 3b + 2) / (a - 3b - ab + 2)`` for ``a = alpha``, ``b = beta``.
    Also returns the n-exponents of ``m`` and ``t`` used along the way.
    """
    a = as_fraction(alpha)
    b = as_fraction(beta)
    den = a - 3 * b - a * b + 2
    den_n = a * b - b + 1
    flags = {
        "l_at_least_1": l >= 1,
        "alpha_at_least_1": a >= 1,
        "beta_positive": b > 0,
        "beta_at_most_hoory": b <= Fraction(l + 1, 2 * l + 1),
        "denominator_positive": den > 0,
        "n_denominator_positive": den_n > 0,
    }
    valid = all(flags.values())
    if not valid:
        return ExponentReport(l, a, b, False, flags)
    return ExponentReport(
        l,
        a,
        b,
        True,
        flags,
        t_exponent=(a * b - 3 * b + 2) / den,
        log_exponent=(3 * a * b - a - 3 * b + 2) / den,
        m_exponent=(a + b - a * b) / den_n,
        t_in_n_exponent=den / den_n,
    )


def conjecture_exponent(l: int, alpha: Rational) -> Fraction:
    """``(alpha (l+1) + l - 1) / (alpha l + l - 1)``, the exponent under the cycle conjecture."""
    if l < 1:
        raise ValueError("l must be at least 1")
    a = as_fraction(alpha)
    if a < 1:
        raise ValueError("alpha must be at least 1")
    return (a * (l + 1) + l - 1) / (a * l + l - 1)


def conjecture_matches_theorem3(l: int, alpha: Rational) -> bool:
    rep = theorem3_exponents(l, alpha, Fraction(l + 1, 2 * l + 1))
    return rep.valid and rep.t_exponent == conjecture_exponent(l, alpha)


def conjecture_limit_check(l: int, alpha_max: int) -> dict:
    """Exact check, over integer ``alpha`` in ``1..alpha_max``, that the exponent
    never decreases and stays at most ``(l+1)/l``.

    Values are compared as integer cross-products, vectorised with int64
    (safe while ``(alpha_max (l+1) + l)^2`` fits).
    """
    if (alpha_max * (l + 1) + l) ** 2 >= 2**62:
        raise ValueError("alpha_max too large for exact int64 comparison")
    alpha = np.arange(1, alpha_max + 1, dtype=np.int64)
    num = alpha * (l + 1) + l - 1
    den = alpha * l + l - 1
    # num[i]/den[i] <= num[i+1]/den[i+1]
    nondecreasing = bool(np.all(num[:-1] * den[1:] <= num[1:] * den[:-1]))
    # num/den <= (l+1)/l
    bounded = bool(np.all(num * l <= (l + 1) * den))
    limit = Fraction(l + 1, l)
    last_gap = limit - Fraction(int(num[-1]), int(den[-1]))
    return {
        "l": l,
        "alpha_max": alpha_max,
        "nondecreasing": nondecreasing,
        "bounded_by_limit": bounded,
        "limit": str(limit),
        "gap_at_alpha_max": str(last_gap),
    }


def container_count_bound(n: int, r: int, R: int, t: int) -> int:
    """``C(n, r) * C(R, t - r)``, exact."""
    if not (0 <= r <= t):
        raise ValueError("need 0 <= r <= t")
    if R < t - r:
        raise ValueError("need R >= t - r")
    if n < 0:
        raise ValueError("n must be non-negative")
    return math.comb(n, r) * math.comb(R, t - r)


def container_precondition(n: int, r: int, R: int, delta: float) -> bool:
    """``exp(-delta r) n <= R``."""
    return math.exp(-delta * r) * n <= R


@dataclass(frozen=True)
class ProofChain:
    log2_count_bound: float
    log2_middle: float
    log2_final: float
    first_link: bool
    second_link: bool

    @property
    def holds(self) -> bool:
        return self.first_link and self.second_link

    def to_json(self) -> dict:
        d = asdict(self)
        d["holds"] = self.holds
        return d


CHAIN_TOLERANCE = 1e-9


def proof_chain_bound(n: int, r: int, R: int, t: int, m: int, a: float) -> ProofChain:
    """Compare ``C(n,r) C(R,t-r) <= n^r (eR/t)^t <= (2^10 e^2 m log n / (a t))^t``.

    All three are compared as base-2 logarithms with relative tolerance 1e-9.
    ``t = 0`` makes every power equal 1.
    """
    exact = container_count_bound(n, r, R, t)
    log_count = math.log2(exact) if exact > 0 else -math.inf
    e = math.e
    middle = r * math.log2(n) if r else 0.0
    final = 0.0
    if t:
        middle += t * math.log2(e * R / t)
        final = t * math.log2(2**10 * e * e * m * math.log2(n) / (a * t))

    def le(x, y):
        return x <= y + CHAIN_TOLERANCE * max(1.0, abs(y))

    return ProofChain(log_count, middle, final, le(log_count, middle), le(middle, final))
