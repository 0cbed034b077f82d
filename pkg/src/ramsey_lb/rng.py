"""Counter-mode random substreams keyed by a master seed and a path.

``substream(seed, "cut", 17)`` always yields the same bits, regardless of how
many other streams were drawn before it or in which process. Block ``i`` of a
stream is ``BLAKE2b(i, key=H(version, seed, path))``, so the output is pinned
by the algorithm name below and not by any library's generator internals.
"""

from __future__ import annotations

import hashlib

RNG_NAME = "blake2b-ctr/v1"


def _encode(seed: int, path: tuple) -> bytes:
    parts = [RNG_NAME, str(int(seed) & (2**64 - 1))]
    parts += [f"{type(p).__name__}:{p}" for p in path]
    return "|".join(parts).encode("utf-8")


class Substream:
    __slots__ = ("_key", "_counter", "_buf", "_nbits")

    def __init__(self, seed: int, *path):
        self._key = hashlib.blake2b(_encode(seed, path), digest_size=32).digest()
        self._counter = 0
        self._buf = 0
        self._nbits = 0

    def _refill(self) -> None:
        block = hashlib.blake2b(self._counter.to_bytes(8, "little"), key=self._key, digest_size=64).digest()
        self._counter += 1
        self._buf |= int.from_bytes(block, "little") << self._nbits
        self._nbits += 512

    def bits(self, k: int) -> int:
        """``k`` fresh uniform bits as a non-negative integer."""
        while self._nbits < k:
            self._refill()
        out = self._buf & ((1 << k) - 1)
        self._buf >>= k
        self._nbits -= k
        return out

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` with 53 bits of precision."""
        return self.bits(53) / 9007199254740992.0

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        k = (n - 1).bit_length()
        while True:
            x = self.bits(k)
            if x < n:
                return x

    def sample(self, n: int, k: int) -> list[int]:
        """``k`` distinct elements of ``range(n)`` by a partial Fisher-Yates shuffle."""
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        pool = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def substream(seed: int, *path) -> Substream:
    return Substream(seed, *path)
