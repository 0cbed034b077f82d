"""Wall-clock plus node-count search budgets."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

EXACT = "exact"
LOWER_BOUND = "lower_bound"
INCOMPLETE = "incomplete"


class BudgetExhausted(Exception):
    """Raised inside a search when its budget runs out; never escapes a public op."""


@dataclass
class Budget:
    """Limit a search by seconds and/or explored nodes (``None`` means unlimited).

    A budget is consumed by one search at a time. Call :meth:`start` before use;
    public operations do this themselves.
    """

    seconds: float | None = None
    nodes: int | None = None
    nodes_used: int = field(default=0, init=False)
    _deadline: float | None = field(default=None, init=False, repr=False)

    def start(self) -> "Budget":
        self.nodes_used = 0
        self._deadline = None if self.seconds is None else time.monotonic() + self.seconds
        return self

    def tick(self, k: int = 1) -> None:
        self.nodes_used += k
        if self.nodes is not None and self.nodes_used > self.nodes:
            raise BudgetExhausted
        # checking the clock is comparatively slow, so only every 1024 nodes
        if self._deadline is not None and (self.nodes_used & 1023) == 0:
            if time.monotonic() > self._deadline:
                raise BudgetExhausted

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls()

    @classmethod
    def parse(cls, text: str | None) -> "Budget":
        """Parse CLI budgets like ``60s``, ``2m``, ``100000n`` or ``60s,1000000n``."""
        if not text:
            return cls()
        seconds = nodes = None
        for piece in text.split(","):
            piece = piece.strip().lower()
            if piece.endswith("ms"):
                seconds = float(piece[:-2]) / 1000
            elif piece.endswith("s"):
                seconds = float(piece[:-1])
            elif piece.endswith("m"):
                seconds = 60 * float(piece[:-1])
            elif piece.endswith("n"):
                nodes = int(piece[:-1])
            else:
                seconds = float(piece)
        return cls(seconds=seconds, nodes=nodes)

    def describe(self) -> dict:
        return {"seconds": self.seconds, "nodes": self.nodes}
