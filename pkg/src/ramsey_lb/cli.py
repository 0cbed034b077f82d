"""Command-line front door: ``ramsey-lb <command> [flags]``.

Exit codes: 0 success, 1 domain error (bad geometry, not L(F)-free, ...),
2 usage error. Reports go to ``--out`` (or stdout with ``--json``), a short
human summary to stdout, logs to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    conjecture_exponent,
    conjecture_limit_check,
    container_count_bound,
    container_precondition,
    proof_chain_bound,
    theorem1_values,
    theorem3_exponents,
)
from .budget import Budget
from .fields import FieldError
from .formats import ParseError, from_graph6
from .geometry import GeometryError, build, parse_geometry_spec
from .graphs import BipartiteGraph, Graph, named_graph
from .lfamily import C4, PatternFamily, enumerate_decompositions, lfamily, make_family
from .pipeline import (
    PipelineError,
    PipelineParams,
    check_lfree,
    clique_graph,
    container_audit,
    distribution_audit,
    end_to_end,
    sparsify,
)
from .reports import envelope, render
from .zarankiewicz import ZarankiewiczInstance, z_exact

log = logging.getLogger("ramsey_lb")

THREADS_ENV = "RAMSEY_LB_THREADS"


class DomainError(Exception):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", THREADS_ENV, env)
    return os.cpu_count() or 1


def parse_forbidden(spec: str) -> tuple[Graph, str]:
    """A graph name (``C5``, ``K4``), a ``.g6`` file, or a raw graph6 string."""
    path = Path(spec)
    if path.is_file():
        text = path.read_text(encoding="ascii").split()
        if not text:
            raise DomainError(f"{spec}: empty graph6 file")
        return from_graph6(text[0]), path.stem
    name = spec[:-3] if spec.endswith(".g6") else spec
    try:
        return named_graph(name), name
    except ValueError:
        pass
    try:
        return from_graph6(spec), spec
    except ParseError:
        raise DomainError(f"cannot read forbidden graph {spec!r}: not a name like C5, a .g6 file or graph6") from None


def parse_family(spec: str, budget: Budget) -> PatternFamily:
    """``c4``, ``lfamily:<F>`` or ``file:<patterns.json>``.

    The file holds either a list of 0/1 matrices or an object with a
    ``patterns`` key, as written by ``lfamily --out``.
    """
    import json

    if spec.lower() == "c4":
        return make_family([C4])
    if spec.startswith("lfamily:"):
        f, _ = parse_forbidden(spec[len("lfamily:") :])
        return lfamily(f, budget)
    if spec.startswith("file:"):
        data = json.loads(Path(spec[5:]).read_text(encoding="utf-8"))
        if isinstance(data, dict):
            data = data.get("result", data).get("patterns")
        if not isinstance(data, list) or not data:
            raise DomainError(f"{spec}: no pattern list found")
        return make_family([BipartiteGraph.from_matrix(mtx) for mtx in data])
    raise DomainError(f"unknown family {spec!r}; expected c4, lfamily:<F> or file:<path>")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _probability(text: str) -> float:
    p = float(text)
    if not 0 < p <= 1:
        raise argparse.ArgumentTypeError("p must lie in (0, 1]")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--threads", type=int, default=None, help=f"worker cap (default ${THREADS_ENV} or CPU count)")
    common.add_argument("--budget", default=None, help="search budget such as 60s, 2m or 1000000n")
    common.add_argument("--out", type=Path, default=None, help="write the JSON report here")
    common.add_argument("--json", action="store_true", help="print the JSON report to stdout")
    common.add_argument("--figures", action="store_true", help="render PNG figures next to --out")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="ramsey-lb", description="Ramsey lower-bound witnesses from incidence geometries.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    g = sub.add_parser("geometry", parents=[common], help="build a certified incidence structure")
    g.add_argument("--family", required=True, choices=["plane", "quadrangle", "hexagon", "hermitian"])
    g.add_argument("--q", type=int, required=True)

    lf = sub.add_parser("lfamily", parents=[common], help="enumerate the pattern family L(F)")
    lf.add_argument("--forbid", required=True, help="F as a name (C5), .g6 file or graph6 string")

    cf = sub.add_parser("checkfree", parents=[common], help="decide whether a geometry is L(F)-free")
    cf.add_argument("--geometry", required=True, help="e.g. hexagon:q=2 or file:g.json")
    cf.add_argument("--forbid", required=True)

    w = sub.add_parser("witness", parents=[common], help="build and certify an F-free witness graph")
    w.add_argument("--geometry", required=True)
    w.add_argument("--forbid", required=True)
    w.add_argument("--p", type=_probability, default=None, help="vertex sampling probability (default from params)")
    w.add_argument("--params", choices=["paper", "desk"], default="paper")
    w.add_argument("--audit-size", type=int, default=None, help="also audit uniform sets of this size")
    w.add_argument("--audit-trials", type=int, default=1000)

    z = sub.add_parser("zarankiewicz", parents=[common], help="exact z(m, n, family)")
    z.add_argument("--m", type=int, required=True)
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--family", required=True, help="c4, lfamily:<F> or file:<patterns.json>")
    z.add_argument("--both-orientations", action="store_true")
    z.add_argument("--emit-witness", type=Path, default=None, help="write the extremal matrix as incidence JSON")

    pr = sub.add_parser("predict", parents=[common], help="evaluate closed-form bounds and exponents")
    pr.add_argument("--theorem", required=True, choices=["1", "3", "5", "count"])
    pr.add_argument("--l", type=int, default=None)
    pr.add_argument("--alpha", type=_fraction, default=None)
    pr.add_argument("--beta", type=_fraction, default=None)
    pr.add_argument("--alpha-max", type=int, default=None, help="theorem 5: check the limit on 1..alpha-max")
    for name in ("m", "n", "a", "b", "r", "R", "t"):
        pr.add_argument(f"--{name}", type=float if name in "ab" else int, default=None)
    pr.add_argument("--delta", type=float, default=None)
    pr.add_argument("--geometry", default=None, help="theorem 1: take (m, n, a, b) from a geometry")

    a = sub.add_parser("audit", parents=[common], help="edge-distribution and container audits of H*")
    a.add_argument("--geometry", required=True)
    a.add_argument("--set-size", type=int, required=True)
    a.add_argument("--trials", type=int, default=1000)
    a.add_argument("--params", choices=["paper", "desk"], default="paper")
    a.add_argument("--container", action="store_true", help="exhaustive container-count audit (n <= 24)")

    sub.add_parser("selftest", parents=[common], help="run the embedded oracle suite")
    return p


def _geometry(spec: str):
    try:
        return parse_geometry_spec(spec)
    except (GeometryError, FieldError, FileNotFoundError) as exc:
        raise DomainError(str(exc)) from None


def cmd_geometry(args, budget):
    try:
        s = build(args.family, args.q)
    except (GeometryError, FieldError) as exc:
        raise DomainError(str(exc)) from None
    girth = s.girth if isinstance(s.girth, int) else "infinity"
    result = {"params": list(s.params), "girth": girth, "incidence": s.to_dict()}
    summary = f"{args.family} q={args.q}: (m, n, a, b) = {tuple(s.params)}, girth {girth}"
    return "geometry", result, summary, []


def cmd_lfamily(args, budget):
    f, name = parse_forbidden(args.forbid)
    if f.edge_count > 12:
        raise DomainError(f"{name} has {f.edge_count} edges; L(F) enumeration is limited to 12")
    decomps, status = enumerate_decompositions(f, budget)
    fam = lfamily(f, budget)
    result = fam.to_json()
    result["size"] = len(fam)
    result["decompositions"] = len(decomps)
    summary = f"L({name}): {len(fam)} patterns from {len(decomps)} decompositions ({fam.status})"
    return "lfamily", result, summary, []


def cmd_checkfree(args, budget):
    s = _geometry(args.geometry)
    f, name = parse_forbidden(args.forbid)
    result = check_lfree(s, f)
    verdict = "L(F)-free" if result["free"] else "NOT L(F)-free"
    return "checkfree", result, f"{args.geometry} is {verdict} for F = {name} (method: {result['method']})", []


def cmd_witness(args, budget):
    s = _geometry(args.geometry)
    f, name = parse_forbidden(args.forbid)
    params = PipelineParams.named(args.params)
    if args.audit_size:
        params = PipelineParams(**{**params.to_json(), "audit_trials": args.audit_trials})
    try:
        report, audit = end_to_end(s, f, params, args.seed, args.p, budget, args.audit_size, name)
    except PipelineError as exc:
        raise DomainError(str(exc), exc.witness) from None
    result = report.to_json()
    figs = []
    if args.figures:
        figs.append(("witness", "adjacency", (report.witness, report.alpha_set, report.vertices)))
        if audit is not None:
            figs.append(("audit", "audit", audit.to_json()))
    stmt = report.ramsey_statement or "no certificate (witness contains F)"
    summary = f"order {report.order}, alpha {report.alpha} ({report.alpha_status}); {stmt}"
    return "witness", result, summary, figs


def cmd_zarankiewicz(args, budget):
    from .formats import incidence_to_json

    fam = parse_family(args.family, budget)
    try:
        inst = ZarankiewiczInstance(args.m, args.n, fam, budget, args.both_orientations)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    res = z_exact(inst, workers=args.threads if args.threads > 1 else 1)
    result = {"m": args.m, "n": args.n, "family": args.family, "family_size": len(fam), **res.to_json()}
    if args.emit_witness:
        args.emit_witness.write_text(
            incidence_to_json(res.extremal_matrix, provenance={"z": res.value, "status": res.status, "family": args.family}),
            encoding="utf-8",
        )
    figs = [("zmatrix", "matrix", res.extremal_matrix.matrix())] if args.figures else []
    return "zarankiewicz", result, f"z({args.m}, {args.n}) = {res.value} ({res.status}, {res.nodes_explored} nodes)", figs


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"predict --theorem {args.theorem} needs {' '.join(missing)}")


class UsageError(Exception):
    pass


def cmd_predict(args, budget):
    th = args.theorem
    figs = []
    if th == "3":
        _need(args, "l", "alpha")
        beta = args.beta if args.beta is not None else Fraction(args.l + 1, 2 * args.l + 1)
        rep = theorem3_exponents(args.l, args.alpha, beta)
        result = {"theorem": "3", **rep.to_json()}
        if rep.valid:
            summary = f"t-exponent {rep.t_exponent}, log-exponent {rep.log_exponent}"
        else:
            bad = [k for k, v in rep.flags.items() if not v]
            summary = "invalid parameters: " + ", ".join(bad)
        if args.figures and rep.valid:
            figs.append(("exponents", "curve", (args.l, beta, args.alpha, rep.t_exponent)))
        return "predict", result, summary, figs
    if th == "5":
        _need(args, "l")
        alpha = args.alpha if args.alpha is not None else Fraction(1)
        e = conjecture_exponent(args.l, alpha)
        result = {
            "theorem": "5",
            "l": args.l,
            "alpha": str(alpha),
            "t_exponent": str(e),
            "limit": str(Fraction(args.l + 1, args.l)),
            "matches_theorem3": theorem3_exponents(args.l, alpha, Fraction(args.l + 1, 2 * args.l + 1)).t_exponent == e,
            "constants": "constant-free: unspecified positive constants omitted",
        }
        if args.alpha_max:
            result["limit_check"] = conjecture_limit_check(args.l, args.alpha_max)
        if args.figures:
            figs.append(("exponents", "curve", (args.l, Fraction(args.l + 1, 2 * args.l + 1), alpha, e)))
        return "predict", result, f"exponent {e} (limit {result['limit']})", figs
    if th == "1":
        if args.geometry:
            s = _geometry(args.geometry)
            args.m, args.n, args.a, args.b = s.params
        _need(args, "m", "n", "a", "b")
        try:
            vals = theorem1_values(args.m, args.n, args.a, args.b)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        result = {"theorem": "1", "m": args.m, "n": args.n, "a": args.a, "b": args.b, **vals.to_json()}
        return "predict", result, f"t = {vals.t:.6g}, bt/log n = {vals.lower_bound:.6g}, a large enough: {vals.a_large_enough}", figs
    _need(args, "n", "r", "R", "t")
    try:
        bound = container_count_bound(args.n, args.r, args.R, args.t)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    result = {"theorem": "count", "n": args.n, "r": args.r, "R": args.R, "t": args.t, "bound": str(bound)}
    if args.delta is not None:
        result["precondition"] = container_precondition(args.n, args.r, args.R, args.delta)
    if args.m is not None and args.a is not None:
        result["chain"] = proof_chain_bound(args.n, args.r, args.R, args.t, args.m, args.a).to_json()
    return "predict", result, f"count bound {bound}", figs


def cmd_audit(args, budget):
    s = _geometry(args.geometry)
    params = PipelineParams.named(args.params)
    try:
        h = clique_graph(s)
        hs = sparsify(h, args.seed)
        dist = distribution_audit(hs, args.set_size, args.trials, params)
    except ValueError as exc:
        raise DomainError(str(exc), getattr(exc, "witness", None)) from None
    result = {"sparsified": hs.to_json(), "distribution": dist.to_json()}
    summary = f"min ratio {dist.min_ratio:.4g} over {dist.distinct_sets} distinct sets of size {args.set_size}"
    if args.container:
        try:
            cont = container_audit(hs.graph, budget)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        result["container"] = cont
        summary += f"; container bound: {len(cont['checks'])} checks, {cont['violations']} violations"
    figs = [("audit", "audit", dist.to_json())] if args.figures else []
    return "audit", result, summary, figs


def cmd_selftest(args, budget):
    from .selftest import run_selftest

    result = run_selftest()
    summary = f"selftest: {result['passed']} passed, {result['failed']} failed"
    if result["failed"]:
        raise DomainError(summary, result)
    return "selftest", result, summary, []


COMMANDS = {
    "geometry": cmd_geometry,
    "lfamily": cmd_lfamily,
    "checkfree": cmd_checkfree,
    "witness": cmd_witness,
    "zarankiewicz": cmd_zarankiewicz,
    "predict": cmd_predict,
    "audit": cmd_audit,
    "selftest": cmd_selftest,
}


def _render_figures(figs, out: Path | None) -> list[str]:
    from . import plotting

    base = out if out is not None else Path("ramsey-lb.json")
    written = []
    for suffix, kind, data in figs:
        path = base.with_name(f"{base.stem}_{suffix}.png")
        if kind == "audit":
            plotting.audit_histogram(data, path)
        elif kind == "adjacency":
            g, alpha_set, vertices = data
            pos = {v: i for i, v in enumerate(vertices)}
            plotting.adjacency_plot(
                g.adj, g.n, path, f"witness: {g.n} vertices, shaded = max independent set", [pos[v] for v in alpha_set]
            )
        elif kind == "matrix":
            plotting.matrix_plot(data, path, "extremal matrix")
        elif kind == "curve":
            l, beta, alpha, e = data
            grid = sorted({Fraction(1)} | {Fraction(x) for x in (2, 3, 5, 10, 20, 50, 100, 1000)} | {Fraction(alpha)})
            vals = [theorem3_exponents(l, x, beta).t_exponent for x in grid]
            plotting.exponent_curve(l, grid, vals, path, (alpha, e))
        written.append(str(path))
    return written


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.threads is None:
        args.threads = default_threads()
    if args.threads < 1:
        parser.print_usage(sys.stderr)
        print("ramsey-lb: error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        budget = Budget.parse(args.budget)
    except ValueError:
        parser.print_usage(sys.stderr)
        print(f"ramsey-lb: error: bad --budget {args.budget!r}", file=sys.stderr)
        return 2
    run_config = {
        "command": args.command,
        "argv": argv,
        "seed": args.seed,
        "threads": args.threads,
        "budget": budget.describe(),
        "params": getattr(args, "params", None),
        "out": str(args.out) if args.out else None,
    }
    log.info("running %s", args.command)
    try:
        kind, result, summary, figs = COMMANDS[args.command](args, budget)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ramsey-lb: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        err = {"error": str(exc)}
        if exc.witness:
            err["witness"] = exc.witness
        print(f"ramsey-lb: {exc}", file=sys.stderr)
        print(render(envelope("error", run_config, err)), file=sys.stderr, end="")
        return 1
    report = envelope(kind, run_config, result)
    text = render(report)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
        log.info("wrote %s", args.out)
    if figs:
        for path in _render_figures(figs, args.out):
            log.info("wrote %s", path)
    if args.json:
        sys.stdout.write(text)
    else:
        print(summary)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
