"""Biregular high-girth incidence structures over finite fields.

Built in: the projective plane PG(2,q), the symplectic quadrangle W(3,q), the
split Cayley hexagon H(q) (all of order (q,q)) and the Hermitian
curve-versus-secant incidence. Anything else, e.g. hexagons of order (q,q^3)
or octagons, can be loaded from the JSON incidence format.

Every structure is normalised so the left part is the smaller one (``m <= n``,
hence ``a <= b``): left vertices are called lines and have degree ``b``, right
vertices are points with degree ``a``. Builders certify their own output
(biregularity, parameters and girth) and raise :class:`GeometryError` if the
certificate fails.
"""

from __future__ import annotations

import json

import itertools
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Sequence

from .fields import FieldError, FiniteField, gf, prime_power
from .formats import ParseError, dumps, incidence_from_json, incidence_to_dict
from .graphs import INFINITY, BipartiteGraph, girth

Q_LIMITS = {"plane": 512, "quadrangle": 64, "hexagon": 16, "hermitian": 8}


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class IncidenceStructure:
    incidence: BipartiteGraph
    params: tuple  # (m, n, a, b); b is the mean line degree for relaxed loads
    girth: Any
    provenance: dict = field(default_factory=dict)
    lines: tuple = ()
    points: tuple = ()

    @property
    def m(self) -> int:
        return self.params[0]

    @property
    def n(self) -> int:
        return self.params[1]

    @property
    def a(self):
        return self.params[2]

    @property
    def b(self):
        return self.params[3]

    def to_dict(self) -> dict:
        labels = {}
        if self.lines:
            labels["lines"] = [_label(x) for x in self.lines]
        if self.points:
            labels["points"] = [_label(x) for x in self.points]
        prov = dict(self.provenance)
        prov["params"] = list(self.params)
        prov["girth"] = _girth_json(self.girth)
        return incidence_to_dict(self.incidence, labels or None, provenance=prov)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def dual(self) -> "IncidenceStructure":
        m, n, a, b = self.params
        return replace(
            self,
            incidence=self.incidence.transpose(),
            params=(n, m, b, a),
            lines=self.points,
            points=self.lines,
        )


def _label(x) -> str:
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(str(v) for v in x) + ")"
    return str(x)


def _girth_json(g):
    return "infinity" if g is INFINITY else g


def _check_q(q: int, family: str) -> FiniteField:
    if prime_power(q) is None:
        raise GeometryError(f"q={q} is not a prime power")
    limit = Q_LIMITS[family]
    if q > limit:
        raise GeometryError(f"q={q} exceeds the supported maximum {limit} for {family}")
    try:
        return gf(q)
    except FieldError as exc:
        raise GeometryError(str(exc)) from None


def projective_points(F: FiniteField, dim: int) -> list[tuple[int, ...]]:
    """Normalised representatives of the points of PG(dim-1, q), in a fixed order."""
    q = F.q
    pts = []
    for lead in range(dim):
        for tail in itertools.product(range(q), repeat=dim - lead - 1):
            pts.append((0,) * lead + (1,) + tail)
    return pts


def _line_through(F: FiniteField, p, r) -> list[tuple[int, ...]]:
    pts = [p]
    for lam in range(F.q):
        pts.append(F.normalize(F.vadd(r, F.scale(lam, p))))
    return pts


def _certify(
    lines_pts: Sequence[Iterable[int]],
    n_points: int,
    builder: str,
    q: int,
    expected: tuple[int, int, int, int],
    expected_girth: int,
    line_labels=(),
    point_labels=(),
) -> IncidenceStructure:
    rows = []
    for pts in lines_pts:
        r = 0
        for x in pts:
            r |= 1 << x
        rows.append(r)
    inc = BipartiteGraph(len(rows), n_points, rows)
    s = _from_graph(inc, builder=builder, q=q, lines=tuple(line_labels), points=tuple(point_labels))
    cert = {"params_ok": s.params == expected, "girth_ok": s.girth == expected_girth}
    if not all(cert.values()):
        raise GeometryError(
            f"{builder}(q={q}) failed its certificate: params {s.params} (expected {expected}), "
            f"girth {s.girth} (expected {expected_girth})"
        )
    prov = dict(s.provenance, certificate=dict(cert, expected_params=list(expected), expected_girth=expected_girth))
    return replace(s, provenance=prov)


def _from_graph(inc: BipartiteGraph, relaxed: bool = False, **prov) -> IncidenceStructure:
    """Validate degrees, normalise orientation and measure girth."""
    prof = inc.degree_profile()
    zero_left = [i for i, d in enumerate(prof.left_degrees) if d == 0]
    zero_right = [j for j, d in enumerate(prof.right_degrees) if d == 0]
    if zero_left or zero_right:
        raise GeometryError(f"isolated vertices: left {zero_left[:10]}, right {zero_right[:10]}")
    lines, points = prov.pop("lines", ()), prov.pop("points", ())
    if inc.m > inc.n or (inc.m == inc.n and prof.biregular() and prof.biregular()[0] < prof.biregular()[1]):
        inc = inc.transpose()
        lines, points = points, lines
        prof = inc.degree_profile()
        prov["dualized"] = True
    bireg = prof.biregular()
    if bireg is not None:
        b, a = bireg
        params = (inc.m, inc.n, a, b)
    elif relaxed:
        a = max(prof.right_degrees)
        bad = [j for j, d in enumerate(prof.right_degrees) if not (a / 2 < d <= a)]
        if bad:
            raise GeometryError(f"relaxed load: point degrees outside ({a / 2}, {a}] at {bad[:10]}")
        b = prof.edge_count / inc.m
        params = (inc.m, inc.n, a, b)
        prov["relaxed"] = True
    else:
        left = _degree_report(prof.left_degrees)
        right = _degree_report(prof.right_degrees)
        raise GeometryError(f"not biregular: line degrees {left}; point degrees {right}")
    return IncidenceStructure(inc, params, girth(inc), prov, tuple(lines), tuple(points))


def _degree_report(degs: Sequence[int]) -> dict:
    out: dict[int, list[int]] = {}
    for v, d in enumerate(degs):
        out.setdefault(d, []).append(v)
    return {d: (vs if len(vs) <= 8 else vs[:8] + ["..."]) for d, vs in sorted(out.items())}


def projective_plane(q: int) -> IncidenceStructure:
    """PG(2,q): ``(q^2+q+1, q^2+q+1, q+1, q+1)``, girth 6."""
    F = _check_q(q, "plane")
    pts = projective_points(F, 3)
    lines = [[j for j, x in enumerate(pts) if F.dot(l, x) == 0] for l in pts]
    N = q * q + q + 1
    return _certify(lines, len(pts), "projective_plane", q, (N, N, q + 1, q + 1), 6, pts, pts)


def _symplectic(F: FiniteField, x, y) -> int:
    a = F.sub(F.mul(x[0], y[1]), F.mul(x[1], y[0]))
    b = F.sub(F.mul(x[2], y[3]), F.mul(x[3], y[2]))
    return F.add(a, b)


def _lines_from_relation(F, pts, related) -> list[list[int]]:
    """Lines spanned by pairs of related points whose full span stays related.

    ``related(i, j)`` must hold for every pair on a wanted line and be linear
    in the sense that checking the generating pair suffices.
    """
    index = {x: i for i, x in enumerate(pts)}
    lines: dict[frozenset, list[int]] = {}
    for i, p in enumerate(pts):
        covered = {i}
        for j, r in enumerate(pts):
            if j in covered or not related(i, j):
                continue
            line = sorted({index[x] for x in _line_through(F, p, r)})
            covered.update(line)
            key = frozenset(line)
            if key not in lines:
                lines[key] = line
    return sorted(lines.values())


def symplectic_quadrangle(q: int) -> IncidenceStructure:
    """W(3,q): points of PG(3,q) and totally isotropic lines; girth 8."""
    F = _check_q(q, "quadrangle")
    pts = projective_points(F, 4)
    lines = _lines_from_relation(F, pts, lambda i, j: _symplectic(F, pts[i], pts[j]) == 0)
    N = (q + 1) * (q * q + 1)
    return _certify(lines, len(pts), "symplectic_quadrangle", q, (N, N, q + 1, q + 1), 8, [(i,) for i in range(len(lines))], pts)


def _zorn_cross(F: FiniteField, u, v) -> tuple[int, int, int]:
    return (
        F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
        F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
        F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])),
    )


def _octonion_product(F: FiniteField, x, y) -> tuple[int, ...]:
    """Zorn vector-matrix product of trace-zero split octonions.

    ``x = (a, u, v)`` stands for the matrix ``[[a, u], [v, -a]]`` with
    ``u, v`` in GF(q)^3.
    """
    a, u, v, b = x[0], x[1:4], x[4:7], F.neg(x[0])
    a2, u2, v2, b2 = y[0], y[1:4], y[4:7], F.neg(y[0])
    vv = _zorn_cross(F, v, v2)
    uu = _zorn_cross(F, u, u2)
    top_left = F.add(F.mul(a, a2), F.dot(u, v2))
    top_right = tuple(F.sub(F.add(F.mul(a, s), F.mul(b2, t)), w) for s, t, w in zip(u2, u, vv))
    bottom_left = tuple(F.add(F.add(F.mul(a2, s), F.mul(b, t)), w) for s, t, w in zip(v, v2, uu))
    bottom_right = F.add(F.mul(b, b2), F.dot(v, u2))
    return (top_left,) + top_right + bottom_left + (bottom_right,)


def _octonion_norm_zero(F: FiniteField, x) -> bool:
    # norm of [[a, u], [v, -a]] is -(a^2 + u.v)
    return F.add(F.mul(x[0], x[0]), F.dot(x[1:4], x[4:7])) == 0


def split_cayley_hexagon(q: int) -> IncidenceStructure:
    """H(q) realised inside the split octonions; girth 12.

    Points are the null trace-zero octonions up to scalars (a parabolic quadric
    in PG(6,q)); two points are collinear when their product vanishes, and the
    line is their span.
    """
    F = _check_q(q, "hexagon")
    pts = [x for x in projective_points(F, 7) if _octonion_norm_zero(F, x)]
    lines = _lines_from_relation(F, pts, lambda i, j: not any(_octonion_product(F, pts[i], pts[j])))
    N = (q + 1) * (q**4 + q * q + 1)
    return _certify(lines, len(pts), "split_cayley_hexagon", q, (N, N, q + 1, q + 1), 12, [(i,) for i in range(len(lines))], pts)


def _cross(F: FiniteField, u, v) -> tuple[int, int, int]:
    return (
        F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
        F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
        F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])),
    )


def hermitian_secant_graph(q: int) -> IncidenceStructure:
    """Hermitian curve points of PG(2,q^2) against its secant lines.

    Parameters ``(q^3+1, q^4-q^3+q^2, q+1, q^2)``: curve points form the small
    side with degree ``q^2``, secants the large side with degree ``q+1``.
    """
    if prime_power(q) is None:
        raise GeometryError(f"q={q} is not a prime power")
    if q > Q_LIMITS["hermitian"]:
        raise GeometryError(f"q={q} exceeds the supported maximum {Q_LIMITS['hermitian']} for hermitian")
    F = gf(q * q)
    curve = [
        x for x in projective_points(F, 3)
        if F.add(F.add(F.pow(x[0], q + 1), F.pow(x[1], q + 1)), F.pow(x[2], q + 1)) == 0
    ]
    secants: dict[tuple, set[int]] = {}
    for i, j in itertools.combinations(range(len(curve)), 2):
        line = F.normalize(_cross(F, curve[i], curve[j]))
        secants.setdefault(line, set()).update((i, j))
    secant_list = sorted(secants)
    point_rows = [[] for _ in curve]
    for s, line in enumerate(secant_list):
        for i in secants[line]:
            point_rows[i].append(s)
    expected = (q**3 + 1, q**4 - q**3 + q * q, q + 1, q * q)
    return _certify(point_rows, len(secant_list), "hermitian_secant_graph", q, expected, 6, curve, secant_list)


BUILDERS = {
    "plane": projective_plane,
    "quadrangle": symplectic_quadrangle,
    "hexagon": split_cayley_hexagon,
    "hermitian": hermitian_secant_graph,
}


def build(family: str, q: int) -> IncidenceStructure:
    try:
        builder = BUILDERS[family]
    except KeyError:
        raise GeometryError(f"unknown geometry family {family!r}; choose from {sorted(BUILDERS)}") from None
    return builder(q)


def parse_geometry_spec(spec: str) -> IncidenceStructure:
    """``hexagon:q=2``, ``plane:3``, ``file:path.json`` or a bare ``.json`` path."""
    if spec.startswith("file:"):
        return load_incidence(spec[5:])
    if spec.endswith(".json"):
        return load_incidence(spec)
    family, _, rest = spec.partition(":")
    rest = rest.strip()
    if rest.startswith("q="):
        rest = rest[2:]
    if not rest.isdigit():
        raise GeometryError(f"bad geometry spec {spec!r}; expected e.g. hexagon:q=2")
    return build(family.strip(), int(rest))


def _unwrap_report(text: bytes) -> bytes:
    """Accept a ``geometry`` report as written by the CLI, not just the bare incidence."""
    try:
        data = json.loads(text)
    except ValueError:
        return text
    if isinstance(data, dict) and isinstance(data.get("result"), dict) and "incidence" in data["result"]:
        return json.dumps(data["result"]["incidence"]).encode("utf-8")
    return text


def load_incidence(path: str | Path, relaxed: bool = False) -> IncidenceStructure:
    """Load a JSON incidence file, validate biregularity and normalise orientation.

    With ``relaxed`` the point degrees may lie anywhere in ``(a/2, a]`` and ``b``
    becomes the mean line degree.
    """
    text = Path(path).read_bytes()
    text = _unwrap_report(text)
    try:
        inc, extra = incidence_from_json(text)
    except ParseError as exc:
        raise GeometryError(f"{path}: {exc}") from None
    labels = extra.get("labels") or {}
    prov_in = extra.get("provenance") or {}
    s = _from_graph(
        inc,
        relaxed=relaxed,
        builder="file",
        path=str(path),
        source_provenance=prov_in,
        lines=tuple(labels.get("lines", ())),
        points=tuple(labels.get("points", ())),
    )
    return s


def save_incidence(s: IncidenceStructure, path: str | Path) -> None:
    Path(path).write_text(s.to_json(), encoding="utf-8")
