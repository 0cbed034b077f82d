"""graph6 for simple graphs and the JSON incidence format for bipartite graphs.

JSON incidence format (UTF-8)::

    {"m": 3, "n": 4, "edges": [[0, 1], [0, 2], ...], "labels": {...}}

``edges`` are ``[left, right]`` pairs, written sorted lexicographically.
``labels`` is optional free-form metadata and is carried through untouched.
Geometry files add a ``provenance`` block (see :mod:`ramsey_lb.geometry`).
"""

from __future__ import annotations

import json
import re
from typing import Any

from .graphs import BipartiteGraph, Graph

GRAPH6_HEADER = ">>graph6<<"


class ParseError(ValueError):
    """Malformed input; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _size_bytes(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    out = bytearray(b">>graph6<<" if header else b"")
    out += _size_bytes(g.n)
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def from_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    pos = 0
    if data.startswith(GRAPH6_HEADER.encode()):
        pos = len(GRAPH6_HEADER)
    if pos >= len(data):
        raise ParseError("missing graph6 size field", pos)

    def take(count: int) -> list[int]:
        nonlocal pos
        if pos + count > len(data):
            raise ParseError("truncated graph6 size field", len(data))
        vals = []
        for k in range(count):
            b = data[pos + k]
            if not 63 <= b <= 126:
                raise ParseError(f"invalid graph6 byte {b!r}", pos + k)
            vals.append(b - 63)
        pos += count
        return vals

    if data[pos] == 126:
        pos += 1
        if pos < len(data) and data[pos] == 126:
            pos += 1
            digits = take(6)
        else:
            digits = take(3)
        n = 0
        for d in digits:
            n = (n << 6) | d
    else:
        n = take(1)[0]

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise ParseError(f"expected {nbytes} adjacency bytes for n={n}, found {len(data) - pos}", pos)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte_index = pos + k // 6
            b = data[byte_index]
            if not 63 <= b <= 126:
                raise ParseError(f"invalid graph6 byte {b!r}", byte_index)
            if (b - 63) >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    last = pos + nbytes - 1
    if nbytes and not 63 <= data[last] <= 126:
        raise ParseError(f"invalid graph6 byte {data[last]!r}", last)
    return Graph(n, adj)


def incidence_to_dict(g: BipartiteGraph, labels: dict | None = None, **extra: Any) -> dict:
    d: dict[str, Any] = {"m": g.m, "n": g.n, "edges": [list(e) for e in sorted(g.edges())]}
    if labels:
        d["labels"] = labels
    d.update(extra)
    return d


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, 2-space indent, short numeric lists on one line."""
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return re.sub(
        r"\[\s*(-?[\d.eE+-]+(?:,\s*-?[\d.eE+-]+)*)\s*\]",
        lambda mo: "[" + ", ".join(x.strip() for x in mo.group(1).split(",")) + "]",
        text,
    ) + "\n"


def incidence_to_json(g: BipartiteGraph, labels: dict | None = None, **extra: Any) -> str:
    return dumps(incidence_to_dict(g, labels, **extra))


def _locate(text: str, needle: str) -> int:
    i = text.find(needle)
    return len(text[:i].encode("utf-8")) if i >= 0 else 0


def incidence_from_dict(d: Any, text: str = "") -> tuple[BipartiteGraph, dict]:
    """Parse a decoded JSON incidence object; ``text`` is only used for error offsets."""
    if not isinstance(d, dict):
        raise ParseError("top-level JSON value must be an object", 0)
    for key in ("m", "n", "edges"):
        if key not in d:
            raise ParseError(f"missing key {key!r}", 0)
    m, n, edges = d["m"], d["n"], d["edges"]
    for key, val in (("m", m), ("n", n)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 0:
            raise ParseError(f"{key!r} must be a non-negative integer", _locate(text, f'"{key}"'))
    if not isinstance(edges, list):
        raise ParseError("'edges' must be a list", _locate(text, '"edges"'))
    rows = [0] * m
    for idx, e in enumerate(edges):
        ok = (
            isinstance(e, list)
            and len(e) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) for x in e)
            and 0 <= e[0] < m
            and 0 <= e[1] < n
        )
        if not ok:
            raise ParseError(f"edge #{idx} {e!r} is not a [left, right] pair inside {m}x{n}", _locate(text, '"edges"'))
        rows[e[0]] |= 1 << e[1]
    extra = {k: v for k, v in d.items() if k not in ("m", "n", "edges")}
    return BipartiteGraph(m, n, rows), extra


def incidence_from_json(text: str | bytes) -> tuple[BipartiteGraph, dict]:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not UTF-8", exc.start) from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, len(text[: exc.pos].encode("utf-8"))) from None
    return incidence_from_dict(d, text)
