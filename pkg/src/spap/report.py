"""CSV and SVG emission for experiment reports."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .pipeline import ExperimentReport

CSV_HEADER = (
    "function,N,m,theta,weights,mode,trials,avg_rel_err,median_rel_err,"
    "std_rel_err,success_rate,master_seed,wall_ms"
)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def report_row(report: ExperimentReport) -> str:
    cfg = report.config
    fields = [
        cfg.fn,
        str(cfg.N),
        str(cfg.m),
        _fmt(cfg.theta),
        cfg.weights,
        cfg.mode,
        str(report.trials),
        _fmt(report.avg_rel_err),
        _fmt(report.median_rel_err),
        _fmt(report.std_rel_err),
        _fmt(report.success_rate),
        str(cfg.master_seed),
        str(report.wall_ms),
    ]
    return ",".join(fields)


def emit_csv(reports: Sequence[ExperimentReport], path: str) -> None:
    """Write one row per report in grid order, 17-significant-digit floats."""
    lines = [CSV_HEADER] + [report_row(r) for r in reports]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass
class Series:
    label: str
    x: Sequence[float]
    y: Sequence[float]


@dataclass
class AxesSpec:
    xlabel: str
    ylabel: str
    title: str = ""
    log_x: bool = False


def emit_svg(series: Sequence[Series], axes: AxesSpec, path: str) -> None:
    """Render a log-y line chart with one legend entry per series."""
    if not series:
        raise ValueError("at least one series is required")
    fig, ax = plt.subplots(figsize=(8, 5))
    for s in series:
        ax.plot(s.x, s.y, marker="o", label=s.label)
    ax.set_yscale("log")
    if axes.log_x:
        ax.set_xscale("symlog" if min(min(s.x) for s in series) <= 0 else "log")
    ax.set_xlabel(axes.xlabel)
    ax.set_ylabel(axes.ylabel)
    if axes.title:
        ax.set_title(axes.title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
