"""Reproduction of the distortion figures: CSV data plus rendered plots.

Each figure id maps to the exact parameter set reported with the original
plot.  ``make_figure`` writes one CSV per curve set, renders a PNG next to
it, and drops a small generic plotting script so the PNGs can be rebuilt
from the CSVs alone.

Figure ids
----------
fig3   two-point sweeps over the free instant, (M, N1, N) = (2, 3, 2) and
       (2, 2, 4), T = 1, p = sigma = 1
fig4   same sweep for (M, N1, N) = (2, 2, 1)
fig7   distortion vs sample count for (N1, N, p, sigma) = (7, 8, 1, 1)
fig8   same for (9, 9, 1, 1)
fig10  relative uniform-vs-optimal gap for (4, 7, 1, 1), M <= N
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bounds import lemma1_bounds
from .errors import ValidationError
from .reports import write_csv
from .search import sweep_M, sweep_t2
from .signal import SignalSpec

_SWEEP_GRID = 1000

_PLOT_SCRIPT = '''\
"""Regenerate the figure PNGs from the CSV files in this directory.

Usage: python plot_figures.py [directory]
"""
import csv
import glob
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    header = rows[0]
    data = [[float(v) if v else float("nan") for v in r] for r in rows[1:]]
    cols = list(zip(*data))
    return header, cols


def main(directory):
    for path in sorted(glob.glob(os.path.join(directory, "*.csv"))):
        header, cols = load(path)
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for name, col in zip(header[1:], cols[1:]):
            ax.plot(cols[0], col, marker=".", label=name)
        ax.set_xlabel(header[0])
        ax.legend()
        ax.grid(True, alpha=0.3)
        out = os.path.splitext(path)[0] + ".png"
        fig.savefig(out, dpi=150, bbox_inches="tight")
        plt.close(fig)
        print("wrote", out)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
'''


def _t2_spec(n1: int, n: int) -> SignalSpec:
    return SignalSpec.uniform(1.0, n1, n1 + n - 1, 1.0, 1.0)


def _write_t2_sweep(out_dir, name, n1, n, grid_points):
    spec = _t2_spec(n1, n)
    rows = sweep_t2(spec, 0.0, grid_points)
    config = {
        "figure": name,
        "signal": spec.to_json(),
        "M": 2,
        "t1": 0.0,
        "grid_points": grid_points,
    }
    path = os.path.join(out_dir, f"{name}.csv")
    write_csv(path, ["t2", "D", "V"], rows, config)
    return rows, path


def _render_t2(out_dir, name, panels):
    fig, axes = plt.subplots(
        len(panels), 1, figsize=(7, 3.2 * len(panels)), squeeze=False
    )
    for ax, (label, rows) in zip(axes[:, 0], panels):
        ax.plot(rows[:, 0], rows[:, 1], label="average distortion")
        ax.plot(rows[:, 0], rows[:, 2], label="variance of distortion")
        ax.set_xlabel("t2")
        ax.set_title(label)
        ax.legend()
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out = os.path.join(out_dir, f"{name}.png")
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def _make_t2_figure(out_dir, name, bands):
    written = []
    panels = []
    for idx, (n1, n) in enumerate(bands):
        suffix = chr(ord("a") + idx) if len(bands) > 1 else ""
        rows, path = _write_t2_sweep(out_dir, f"{name}{suffix}", n1, n, _SWEEP_GRID)
        written.append(path)
        panels.append((f"M=2, N1={n1}, N={n}", rows))
    written.append(_render_t2(out_dir, name, panels))
    return written


def _make_rate_sweep_figure(out_dir, name, n1, n):
    spec = SignalSpec.uniform(1.0, n1, n1 + n - 1, 1.0, 1.0)
    m_max = 4 * n
    columns, rows = sweep_M(spec, m_max)
    config = {"figure": name, "signal": spec.to_json(), "M_max": m_max}
    path = os.path.join(out_dir, f"{name}.csv")
    write_csv(path, columns, rows, config)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    labels = {
        "D_uniform": "uniform sampling",
        "D_lemma1": "first lower bound",
        "D_lemma2": "second lower bound",
        "D_thm6_upper": "explicit upper bound",
    }
    for j, col in enumerate(columns[1:], start=1):
        ax.plot(rows[:, 0], rows[:, j], marker=".", label=labels.get(col, col))
    ax.set_xlabel("number of samples M")
    ax.set_ylabel("average distortion")
    ax.set_title(f"N1={n1}, N={n}, p=1, sigma=1")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    png = os.path.join(out_dir, f"{name}.png")
    fig.savefig(png, dpi=150)
    plt.close(fig)
    return [path, png]


def _make_gap_figure(out_dir, name, n1, n):
    spec = SignalSpec.uniform(1.0, n1, n1 + n - 1, 1.0, 1.0)
    columns, table = sweep_M(spec, n, strategies={"uniform", "bounds"})
    d_uniform = table[:, columns.index("D_uniform")]
    d_optimal = np.array([lemma1_bounds(spec, m)[0] for m in range(1, n + 1)])
    gap = (d_uniform - d_optimal) / d_optimal
    rows = np.column_stack([table[:, 0], d_uniform, d_optimal, gap])
    config = {"figure": name, "signal": spec.to_json(), "M_max": n}
    path = os.path.join(out_dir, f"{name}.csv")
    write_csv(path, ["M", "D_uniform", "D_optimal", "relative_gap"], rows, config)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(rows[:, 0], 100 * rows[:, 3], marker="o")
    ax.set_xlabel("number of samples M")
    ax.set_ylabel("uniform-vs-optimal gap (%)")
    ax.set_title(f"N1={n1}, N={n}, p=1, sigma=1")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    png = os.path.join(out_dir, f"{name}.png")
    fig.savefig(png, dpi=150)
    plt.close(fig)
    return [path, png]


FIGURE_IDS = ("fig3", "fig4", "fig7", "fig8", "fig10")


def make_figure(figure_id: str, out_dir: str) -> list[str]:
    """Write the CSVs, PNG and plotting script for one figure id.

    Returns the list of files written.
    """
    os.makedirs(out_dir, exist_ok=True)
    if figure_id == "fig3":
        written = _make_t2_figure(out_dir, "fig3", [(3, 2), (2, 4)])
    elif figure_id == "fig4":
        written = _make_t2_figure(out_dir, "fig4", [(2, 1)])
    elif figure_id == "fig7":
        written = _make_rate_sweep_figure(out_dir, "fig7", 7, 8)
    elif figure_id == "fig8":
        written = _make_rate_sweep_figure(out_dir, "fig8", 9, 9)
    elif figure_id == "fig10":
        written = _make_gap_figure(out_dir, "fig10", 4, 7)
    else:
        raise ValidationError(
            f"unknown figure id {figure_id!r}; choose from {FIGURE_IDS}"
        )
    script = os.path.join(out_dir, "plot_figures.py")
    with open(script, "w", newline="\n") as fh:
        fh.write(_PLOT_SCRIPT)
    written.append(script)
    return written
