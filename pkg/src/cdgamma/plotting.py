"""Figures written next to CLI reports (PNG, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIG_WIDTH = 5.5


def _new_axes(title: str, xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=(FIG_WIDTH, FIG_WIDTH * 0.62))
    ax.set_title(title, fontsize=10)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, which="both", alpha=0.3)
    return fig, ax


def save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_sweep(records: list[dict], kind: str, path: str | Path) -> Path:
    xs = [r["parameter"] for r in records]
    ys = [max(r["residual"], 1e-300) for r in records]
    labels = {
        "stirling": ("Stirling truncation error", "terms kept", "|Ln Gamma - series|"),
        "magnitude": ("|Gamma(x+My)| / asymptote - 1", "y", "|ratio - 1|"),
        "limit": ("limit-form error", "n", "relative error"),
    }
    title, xl, yl = labels.get(kind, (kind, "parameter", "residual"))
    fig, ax = _new_axes(title, xl, yl)
    ax.semilogy(xs, ys, "o-", ms=4)
    if kind == "limit":
        ax.set_xscale("log")
    return save(fig, path)


def plot_residuals(records: list[dict], path: str | Path) -> Path:
    """Residual of every record, grouped by suite; tolerance drawn where asserted."""
    fig, ax = _new_axes("verification residuals", "record", "residual")
    suites = sorted({r["suite"] for r in records})
    for s in suites:
        pts = [(i, r["residual"]) for i, r in enumerate(records)
               if r["suite"] == s and r["residual"] is not None]
        if pts:
            ax.semilogy([p[0] for p in pts], [max(p[1], 1e-18) for p in pts], ".", label=s)
    tol = [(i, r["tolerance"]) for i, r in enumerate(records) if r["tolerance"]]
    if tol:
        ax.semilogy([t[0] for t in tol], [t[1] for t in tol], "k_", ms=4, label="tolerance")
    ax.legend(fontsize=7, ncol=2)
    return save(fig, path)


def plot_convergence(ns: list[int], errors: dict[str, list[float]], path: str | Path) -> Path:
    fig, ax = _new_axes("convergence of limit and product forms", "n", "|value - slice| / |slice|")
    for name, errs in errors.items():
        ax.loglog(ns, errs, "o-", ms=4, label=name)
    ax.legend(fontsize=8)
    return save(fig, path)
