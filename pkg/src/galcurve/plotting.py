"""Figures for CLI runs, written straight to files.

Uses :class:`matplotlib.figure.Figure` directly so no pyplot state or GUI
backend is involved.
"""

from __future__ import annotations

from typing import Sequence

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

__all__ = ["plot_rows", "plot_report"]


def _new_figure(ncols: int = 1, width: float = 5.0, height: float = 3.8):
    fig = Figure(figsize=(width * ncols, height))
    FigureCanvasAgg(fig)
    axes = [fig.add_subplot(1, ncols, k + 1) for k in range(ncols)]
    return fig, axes


def _col(rows: Sequence[dict], key: str) -> list[float]:
    return [float("nan") if r.get(key) is None else r[key] for r in rows]


def _save(fig: Figure, path: str) -> None:
    fig.tight_layout()
    # fixed metadata keeps PNG output byte-stable across runs
    fig.savefig(path, dpi=120, metadata={"Software": None})


def plot_rows(subcommand: str, rows: Sequence[dict], path: str) -> None:
    s = _col(rows, "s")
    if subcommand == "frenet":
        fig, (ax,) = _new_figure()
        ax.plot(s, _col(rows, "kappa"), label="curvature")
        ax.plot(s, _col(rows, "tau"), label="torsion", linestyle="--")
        ax.set_xlabel("s")
        ax.legend()
    elif subcommand == "involute":
        fig, (ax0, ax1) = _new_figure(2)
        ax0.plot(_col(rows, "base_y"), _col(rows, "base_z"), label="base (y, z)")
        ax0.plot(_col(rows, "involute_y"), _col(rows, "involute_z"), label="involute (y, z)")
        ax0.set_aspect("equal", adjustable="datalim")
        ax0.set_xlabel("y")
        ax0.set_ylabel("z")
        ax0.legend()
        ax1.plot(s, _col(rows, "distance"), label="distance")
        ax1.plot(s, _col(rows, "kappa_star"), label="involute curvature")
        ax1.plot(s, _col(rows, "dsstar_ds"), label="ds*/ds", linestyle=":")
        ax1.set_xlabel("s")
        ax1.legend()
    elif subcommand == "evolute":
        fig, (ax0, ax1) = _new_figure(2)
        ax0.plot(_col(rows, "y"), _col(rows, "z"))
        ax0.set_xlabel("y")
        ax0.set_ylabel("z")
        ax0.set_title("evolute projected on x = const")
        ax1.plot(s, _col(rows, "dy"), label="y'")
        ax1.plot(s, _col(rows, "dz"), label="z'")
        ax1.set_xlabel("s")
        ax1.legend()
    else:
        raise ValueError(f"no plot for {subcommand!r}")
    _save(fig, path)


def plot_report(report: dict, path: str) -> None:
    """Per-sample deviation on a log axis against the tolerance line."""
    fig, (ax,) = _new_figure()
    samples = report["samples"]
    xs = [smp["s"] for smp in samples]
    # zeros would vanish on a log scale
    ys = [max(smp["deviation"], 1e-18) for smp in samples]
    ax.semilogy(xs, ys, marker=".", linestyle="none", label="deviation")
    ax.axhline(report["tolerance"], color="k", linestyle="--", label="tolerance")
    ax.set_xlabel("s")
    ax.set_title(f"check {report['theorem']}: {'pass' if report['pass'] else 'FAIL'}")
    ax.legend()
    _save(fig, path)
