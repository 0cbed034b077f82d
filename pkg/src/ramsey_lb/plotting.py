"""Report figures, rendered headless with the Agg backend.

Each function takes the result dict that also goes into the JSON report and
writes one PNG. PNG metadata is stripped so reruns give identical bytes.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_META = {"Software": None}

plt.rcParams.update(
    {
        "figure.figsize": (5.0, 3.4),
        "figure.dpi": 110,
        "axes.spines.top": False,
        "axes.spines.right": False,
        "font.size": 9,
        "svg.hashsalt": "ramsey-lb",
    }
)


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, metadata=_META)
    plt.close(fig)
    return path


def audit_histogram(audit: dict, path: Path) -> Path:
    """Histogram of e(H*[X]) / |X|^2 over the sampled sets, with both thresholds."""
    fig, ax = plt.subplots()
    h = audit["histogram"]
    edges, counts = h["edges"], h["counts"]
    if len(counts) == 1:
        ax.bar([edges[0]], counts, width=0.01, color="0.35")
    else:
        widths = [b - a for a, b in zip(edges, edges[1:])]
        ax.bar(edges[:-1], counts, width=widths, align="edge", color="0.35", edgecolor="white", linewidth=0.4)
    ax.axvline(audit["half_delta_threshold"], color="tab:blue", ls="--", lw=1, label="delta/2 (configured)")
    ax.axvline(audit["s_threshold"], color="tab:red", ls=":", lw=1, label="c_S a^2/m (configured)")
    ax.set_xlabel("e(H*[X]) / |X|^2")
    ax.set_ylabel("sets")
    ax.set_title(f"|X| = {audit['set_size']}, {audit['trials']} samples, min {audit['min_ratio']:.4g}")
    ax.legend(frameon=False, fontsize=7)
    return _save(fig, path)


def exponent_curve(l: int, alphas, exponents, path: Path, highlight: tuple | None = None) -> Path:
    """t-exponent against alpha, with the (l+1)/l ceiling."""
    fig, ax = plt.subplots()
    ax.plot([float(a) for a in alphas], [float(e) for e in exponents], color="0.2", lw=1.2)
    ax.axhline(float(Fraction(l + 1, l)), color="tab:red", ls=":", lw=1, label=f"(l+1)/l = {Fraction(l + 1, l)}")
    if highlight is not None:
        a, e = highlight
        ax.plot([float(a)], [float(e)], "o", color="tab:blue", ms=5, label=f"alpha={a}: {e}")
    ax.set_xscale("log")
    ax.set_xlabel("alpha")
    ax.set_ylabel("t-exponent")
    ax.set_title(f"l = {l}")
    ax.legend(frameon=False, fontsize=7)
    return _save(fig, path)


def adjacency_plot(adj: list[int], n: int, path: Path, title: str = "", marked=()) -> Path:
    """Adjacency matrix as a spy plot; ``marked`` rows/columns are shaded."""
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    xs, ys = [], []
    for u in range(n):
        row = adj[u]
        for v in range(n):
            if row >> v & 1:
                xs.append(v)
                ys.append(u)
    for v in marked:
        ax.axhspan(v - 0.5, v + 0.5, color="tab:blue", alpha=0.12, lw=0)
        ax.axvspan(v - 0.5, v + 0.5, color="tab:blue", alpha=0.12, lw=0)
    ax.scatter(xs, ys, s=max(0.5, 600 / max(n, 1) ** 1.3), marker="s", color="0.1", lw=0)
    ax.set_xlim(-0.5, n - 0.5)
    ax.set_ylim(n - 0.5, -0.5)
    ax.set_aspect("equal")
    ax.set_title(title)
    return _save(fig, path)


def matrix_plot(matrix: list[list[int]], path: Path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(3.6, 3.6))
    ax.imshow(matrix, cmap="Greys", vmin=0, vmax=1, interpolation="nearest")
    ax.set_xticks(range(len(matrix[0]) if matrix else 0))
    ax.set_yticks(range(len(matrix)))
    ax.set_title(title)
    return _save(fig, path)
