"""Figures for the growth report, rendered off-screen to files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .growth import AsymptoticsReport  # noqa: E402


def plot_counts(report: AsymptoticsReport, path: Path) -> Path:
    ns = list(range(report.n_max + 1))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ns, report.s, "o-", label="s(n) elements")
    ax.semilogy(ns, [max(v, 1) for v in report.c], "s-", label="c(n) classes")
    ax.set_xlabel("n")
    ax.set_ylabel("count")
    ax.set_title(f"G({report.m}): sphere sizes")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_ratios(report: AsymptoticsReport, path: Path) -> Path:
    lo, hi = report.window
    ns = list(range(1, report.n_max + 1))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [report.ratio[n] for n in ns], "o-", label="c(n)/s(n)")
    ax.plot(ns, [report.paired_ratio[n] for n in ns], "^-", label="paired c/s")
    ax.plot(ns, [report.n_ratio[n] for n in ns], "s-", label="n c(n)/s(n)")
    ax.axvspan(lo, hi, color="0.9", zorder=0)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_title(f"G({report.m}): regime {report.regime} (expected {report.predicted})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_report(report: AsymptoticsReport, directory: Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    return [
        plot_counts(report, directory / f"growth_m{report.m}_counts.png"),
        plot_ratios(report, directory / f"growth_m{report.m}_ratios.png"),
    ]
