"""Figure rendering for orbits, cycles, Lyapunov traces and sweeps.

Every report path can drop a PNG next to its CSV/JSON output.  Rendering is
headless (Agg) and file-based only.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_VERDICT_COLORS = {
    "ConvergentToEquilibrium": "#1f77b4",
    "Periodic": "#2ca02c",
    "Chaotic": "#d62728",
    "Unbounded": "#9467bd",
    "Undefined": "#8c564b",
    "Inconclusive": "#7f7f7f",
}


def _save(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return str(path)


def plot_trajectory(points, path, title: str = "", last: int | None = None) -> str:
    """Orbit in the complex plane; optionally only the trailing `last` points."""
    pts = np.asarray(points, dtype=complex)
    if last is not None and len(pts) > last:
        pts = pts[-last:]
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot(pts.real, pts.imag, "-", lw=0.5, color="0.6", zorder=1)
    ax.scatter(pts.real, pts.imag, s=8, c=np.arange(len(pts)), cmap="viridis", zorder=2)
    ax.scatter([pts.real[0]], [pts.imag[0]], s=40, marker="s", color="k", zorder=3, label="start")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_cycle(points, path, title: str = "") -> str:
    """Closed polygon through the representative cycle points."""
    pts = np.asarray(list(points) + [points[0]], dtype=complex)
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot(pts.real, pts.imag, "o-", ms=5, lw=1.0, color="#2ca02c")
    for k, z in enumerate(pts[:-1]):
        ax.annotate(str(k), (z.real, z.imag), fontsize=7, xytext=(3, 3), textcoords="offset points")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(title)
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_lyapunov_trace(estimates, renorm_interval: int, path, title: str = "") -> str:
    est = np.asarray(estimates, dtype=float)
    ks = np.minimum((np.arange(len(est)) + 1) * renorm_interval, len(est) * renorm_interval)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ks, est, lw=0.8)
    ax.axhline(0.0, color="k", lw=0.5)
    ax.set_xlabel("iteration")
    ax.set_ylabel("running estimate (nats/iter)")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_sweep(result, path, title: str = "") -> str:
    """Classification map over the sweep grid (one colored pixel per cell)."""
    grid = result.grid
    img = np.zeros((grid.im_steps, grid.re_steps, 3))
    for index, cell in enumerate(result.cells):
        i, j = divmod(index, grid.im_steps)
        color = _VERDICT_COLORS.get(cell.verdict, "#000000")
        img[j, i] = matplotlib.colors.to_rgb(color)
    fig, ax = plt.subplots(figsize=(7, 6))
    ax.imshow(
        img,
        origin="lower",
        extent=(grid.re_min, grid.re_max, grid.im_min, grid.im_max),
        aspect="auto",
        interpolation="nearest",
    )
    handles = [
        plt.Line2D([0], [0], marker="s", ls="", color=c, label=v)
        for v, c in _VERDICT_COLORS.items()
    ]
    ax.legend(handles=handles, fontsize=7, loc="upper right", framealpha=0.8)
    ax.set_xlabel(f"Re {result.grid.target}")
    ax.set_ylabel(f"Im {result.grid.target}")
    ax.set_title(title)
    return _save(fig, path)
