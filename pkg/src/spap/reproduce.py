"""Parameter grids reproducing the reference figures and tables.

The figure experiments never name their function panels explicitly; the
three-function figures use runge, sqrt105 and logsin, recorded in the
emitted metadata as an assumption.
"""

from __future__ import annotations

from typing import List, Optional

from .pipeline import ErrorScaleCache, ExperimentReport, PipelineConfig, run_experiment
from .report import AxesSpec, Series, emit_csv, emit_svg

THETA_SWEEP = [0.0, 1.0, 1e3, 1e5, 1e7, 1e9, 1e11]
M_SWEEP = list(range(150, 451, 50))
ALL_FUNCS = ["runge", "sqrt105", "logsin", "cos36"]
THREE_FUNCS = ["runge", "sqrt105", "logsin"]
WEIGHT_GRID = ["none", "sqrt_index", "linear_index"]

TARGETS = ("fig3", "fig4", "fig5", "fig6", "tab3", "tab4", "tab5")

DEFAULT_TRIALS = 500


def target_configs(target: str, master_seed: int = 0) -> List[PipelineConfig]:
    """Grid of pipeline configurations for one figure or table, in row order."""
    cfgs = []
    if target == "fig3":
        for fn in ALL_FUNCS:
            for theta in THETA_SWEEP:
                cfgs.append(PipelineConfig(fn, 999, 400, theta, mode="uniform",
                                           master_seed=master_seed))
    elif target == "fig4":
        for fn in THREE_FUNCS:
            for theta in (0.0, 1e5):
                for m in M_SWEEP:
                    cfgs.append(PipelineConfig(fn, 599, m, theta, mode="uniform",
                                               master_seed=master_seed))
    elif target == "fig5":
        for N, m in ((599, 300), (799, 400)):
            for fn in THREE_FUNCS:
                for theta in THETA_SWEEP:
                    cfgs.append(PipelineConfig(fn, N, m, theta, mode="l2",
                                               master_seed=master_seed))
    elif target == "fig6":
        for N in (399, 599):
            for fn in THREE_FUNCS:
                for theta in (0.0, 1e4):
                    for m in M_SWEEP:
                        cfgs.append(PipelineConfig(fn, N, m, theta, mode="l2",
                                                   master_seed=master_seed))
    elif target in ("tab3", "tab4", "tab5"):
        if target == "tab3":
            funcs, N, m, mode = ["sqrt105", "logsin"], 599, 300, "uniform"
        elif target == "tab4":
            funcs, N, m, mode = ["runge", "cos36"], 799, 400, "uniform"
        else:
            funcs, N, m, mode = ALL_FUNCS, 799, 400, "l2"
        for fn in funcs:
            for weights in WEIGHT_GRID:
                for theta in (1.0, 1e5):
                    cfgs.append(PipelineConfig(fn, N, m, theta, mode=mode,
                                               weights=weights,
                                               master_seed=master_seed))
    else:
        raise ValueError(f"unknown target: {target!r}")
    return cfgs


def _figure_series(target: str, reports: List[ExperimentReport]) -> List[Series]:
    series = {}
    for r in reports:
        cfg = r.config
        if target in ("fig3", "fig5"):
            label = cfg.fn if target == "fig3" else f"{cfg.fn} N={cfg.N} m={cfg.m}"
            x = cfg.theta
        else:
            label = f"{cfg.fn} N={cfg.N} theta={cfg.theta:g}"
            x = cfg.m
        series.setdefault(label, ([], []))
        series[label][0].append(x)
        series[label][1].append(r.avg_rel_err)
    return [Series(label, xs, ys) for label, (xs, ys) in series.items()]


def reproduce(
    target: str,
    out_csv: str,
    trials: int = DEFAULT_TRIALS,
    svg_path: Optional[str] = None,
    master_seed: int = 0,
) -> List[ExperimentReport]:
    """Run one reproduction grid and write its CSV (and optional SVG chart)."""
    if target not in TARGETS:
        raise ValueError(f"unknown target: {target!r}")
    if svg_path is not None and target.startswith("tab"):
        raise ValueError("SVG output is only available for figure targets")
    cache = ErrorScaleCache()
    reports = [
        run_experiment(cfg, trials, cache)
        for cfg in target_configs(target, master_seed)
    ]
    emit_csv(reports, out_csv)
    if svg_path is not None:
        xlabel = "theta" if target in ("fig3", "fig5") else "m"
        axes = AxesSpec(
            xlabel=xlabel,
            ylabel="average relative error",
            title=target,
            log_x=target in ("fig3", "fig5"),
        )
        emit_svg(_figure_series(target, reports), axes, svg_path)
    return reports
