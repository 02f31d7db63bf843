"""Figures for the CLI report: the n = 8 bracket scan and the n = 6 log fits."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .suite import LogFitGroup, ScanResult, poly_at  # noqa: E402

# fixed metadata keeps the files byte-stable between runs
_PNG_META = {"Software": None}


def _finish(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path


def plot_scan_b(res: ScanResult, path: Path) -> Path:
    """Exact bracket against b, with grid points, roots and vertex marked."""
    lo = min([float(b) for b, _, _ in res.rows] + list(res.roots) + [float(res.vertex)]) - 0.5
    hi = max([float(b) for b, _, _ in res.rows] + list(res.roots) + [float(res.vertex)]) + 0.5
    xs = np.linspace(lo, hi, 400)
    c = [float(x) for x in res.coeffs]
    ys = c[0] + c[1] * xs + c[2] * xs ** 2
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.plot(xs, ys, color="C0", lw=1.6, label="exact bracket")
    gx = [float(b) for b, _, _ in res.rows]
    gy = [float(v) for _, v, _ in res.rows]
    ax.plot(gx, gy, "o", color="C1", label="grid")
    for r in res.roots:
        ax.axvline(r, color="C3", ls="--", lw=0.8)
    ax.plot([float(res.vertex)], [float(res.vertex_value)], "s", color="C2",
            label=f"vertex b = {res.vertex}")
    ax.plot([-2.0], [float(poly_at(res.coeffs, -2))], "^", color="k", label="b = -2")
    ax.set_xlabel("b")
    ax.set_ylabel("bracket / I(8,10)")
    ax.set_title("n = 8: sign of the Pohozaev bracket")
    ax.legend(fontsize=8, frameon=False)
    return _finish(fig, Path(path))


def plot_log_fit(groups: Sequence[LogFitGroup], path: Path) -> Path:
    """Truncated integrals against log(1/delta) with fitted and exact slopes."""
    fig, axes = plt.subplots(1, len(groups), figsize=(3.2 * len(groups), 3.4), squeeze=False)
    for ax, g in zip(axes[0], groups):
        x = np.log(1.0 / np.asarray(g.deltas))
        y = np.asarray(g.values)
        xs = np.linspace(x.min() - 0.3, x.max() + 0.3, 50)
        ax.plot(x, y, "o", color="C0")
        ax.plot(xs, g.model(np.exp(-xs)), color="C0", lw=1.2, label=f"fit slope {g.slope:.5g}")
        ax.plot(xs, g.intercept + g.exact_slope * xs, color="C3", ls="--", lw=1.0,
                label=f"exact {g.exact_coeff} w4 I(6,6)")
        ax.set_xlabel("log(1/delta)")
        ax.set_title(g.name, fontsize=9)
        ax.legend(fontsize=7, frameon=False)
    axes[0][0].set_ylabel("truncated integral")
    fig.suptitle("n = 6: log(1/delta) coefficients", fontsize=10)
    return _finish(fig, Path(path))
