"""End-to-end approximation pipeline and the Monte Carlo experiment runner.

A trial samples the target function at arcsine-distributed points, sets
the constraint radius eps = theta * sqrt(m) * E_hat from the cached
best-approximation error scalar, solves the (weighted) constrained l1
problem, and measures the relative error of the recovered polynomial.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import funcexpr
from .basis import (
    BasisSpec,
    CoefficientVector,
    build_matrix,
    derive_trial_seed,
    gauss_chebyshev,
    sample_arcsine,
)
from .bestapprox import GridSpec, estimate_EN, l2_projection, sup_norm_on_grid
from .solver import (
    ConstrainedL1Problem,
    SolverOptions,
    solve_bpdn,
    solve_weighted_bpdn,
)

SUCCESS_THRESHOLD = 5e-4

WEIGHT_KINDS = ("none", "sqrt_index", "linear_index", "custom")
MODES = ("uniform", "l2")


@dataclass(frozen=True)
class PipelineConfig:
    fn: str
    N: int
    m: int
    theta: float
    mode: str = "uniform"
    weights: str = "none"
    custom_weights: Optional[tuple] = None
    master_seed: int = 0
    grid: GridSpec = field(default_factory=GridSpec)
    en_method: str = "cheb_tail"

    def __post_init__(self):
        if self.N < 0 or self.m < 1:
            raise ValueError("require N >= 0 and m >= 1")
        if self.theta < 0:
            raise ValueError("theta must be nonnegative")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode: {self.mode!r}")
        if self.weights not in WEIGHT_KINDS:
            raise ValueError(f"unknown weight kind: {self.weights!r}")
        if self.weights == "custom" and self.custom_weights is None:
            raise ValueError("custom weights require a vector")
        if self.en_method not in ("remez", "cheb_tail"):
            raise ValueError(f"unknown en_method: {self.en_method!r}")


@dataclass
class TrialResult:
    rel_err: float
    success: bool
    solver_iterations: int
    converged: bool
    trial_seed: int


@dataclass
class ExperimentReport:
    config: PipelineConfig
    trials: int
    avg_rel_err: float
    median_rel_err: float
    std_rel_err: float
    success_rate: float
    wall_ms: int


def weight_vector(cfg: PipelineConfig) -> Optional[np.ndarray]:
    """Weight vector over basis indices 1..N+1, or None when unweighted."""
    if cfg.weights == "none":
        return None
    i = np.arange(1, cfg.N + 2, dtype=float)
    if cfg.weights == "sqrt_index":
        return np.sqrt(i)
    if cfg.weights == "linear_index":
        return (i + 1.0) / 2.0
    w = np.asarray(cfg.custom_weights, dtype=float)
    if w.shape != (cfg.N + 1,):
        raise ValueError("custom weight vector must have length N + 1")
    return w


class ErrorScaleCache:
    """Caches the trial-independent error scalar and reference norms."""

    def __init__(self):
        self._store = {}

    def _key(self, cfg: PipelineConfig):
        # non-string targets (callables) are keyed by identity
        fn = cfg.fn if isinstance(cfg.fn, str) else id(cfg.fn)
        return (fn, cfg.N, cfg.mode, cfg.en_method, cfg.grid)

    def error_scale(self, cfg: PipelineConfig) -> float:
        key = ("scale",) + self._key(cfg)
        if key not in self._store:
            f = funcexpr.resolve(cfg.fn)
            if cfg.mode == "uniform":
                value = estimate_EN(f, cfg.N, cfg.en_method, cfg.grid)
            else:
                value = l2_projection(f, cfg.N, grid=cfg.grid).t_inf
            self._store[key] = value
        return self._store[key]

    def reference(self, cfg: PipelineConfig):
        """Grid / quadrature values of f and its norm for the error metric."""
        key = ("ref",) + self._key(cfg)
        if key not in self._store:
            f = funcexpr.resolve(cfg.fn)
            if cfg.mode == "uniform":
                x = cfg.grid.points()
                fv = np.asarray(f(x), dtype=float)
                norm = float(np.max(np.abs(fv)))
            else:
                x = gauss_chebyshev(4 * (cfg.N + 1)).nodes
                fv = np.asarray(f(x), dtype=float)
                norm = float(np.sqrt(np.dot(fv, fv) / x.size))
            self._store[key] = (x, fv, norm)
        return self._store[key]


_default_cache = ErrorScaleCache()


def run_trial(
    cfg: PipelineConfig,
    trial_index: int,
    cache: Optional[ErrorScaleCache] = None,
    opts: Optional[SolverOptions] = None,
    return_details: bool = False,
):
    """One sample-solve-measure pass; deterministic in (cfg, trial_index)."""
    cache = cache or _default_cache
    f = funcexpr.resolve(cfg.fn)
    seed = derive_trial_seed(cfg.master_seed, trial_index)
    try:
        points = sample_arcsine(seed, cfg.m)
        y = np.asarray(f(points), dtype=float)
        scale = 0.0 if cfg.theta == 0.0 else cache.error_scale(cfg)
        eps = cfg.theta * np.sqrt(cfg.m) * scale
        A = build_matrix(points, BasisSpec(cfg.N))
        w = weight_vector(cfg)
        problem = ConstrainedL1Problem(A, y, eps, w)
        if w is None:
            sol = solve_bpdn(problem, opts)
        else:
            sol = solve_weighted_bpdn(problem, opts)
        coeffs = CoefficientVector(sol.z, BasisSpec(cfg.N))
        x, fv, norm = cache.reference(cfg)
        diff = fv - coeffs(x)
        if cfg.mode == "uniform":
            rel_err = float(np.max(np.abs(diff))) / norm
        else:
            rel_err = float(np.sqrt(np.dot(diff, diff) / x.size)) / norm
        result = TrialResult(
            rel_err=rel_err,
            success=rel_err < SUCCESS_THRESHOLD,
            solver_iterations=sol.iterations,
            converged=sol.converged,
            trial_seed=seed,
        )
    except Exception:
        if return_details:
            raise
        return TrialResult(
            rel_err=float("inf"),
            success=False,
            solver_iterations=0,
            converged=False,
            trial_seed=seed,
        )
    if return_details:
        return result, {"coeffs": coeffs, "epsilon": eps, "error_scale": scale,
                        "solver": sol, "points": points}
    return result


def run_experiment(
    cfg: PipelineConfig,
    trials: int,
    cache: Optional[ErrorScaleCache] = None,
    opts: Optional[SolverOptions] = None,
) -> ExperimentReport:
    """Aggregate run_trial over trial indices 0..trials-1."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    cache = cache or ErrorScaleCache()
    start = time.perf_counter()
    results = [run_trial(cfg, i, cache, opts) for i in range(trials)]
    wall_ms = int(round((time.perf_counter() - start) * 1000.0))
    errs = np.array([r.rel_err for r in results])
    finite = errs[np.isfinite(errs)]
    avg = float(np.mean(errs)) if finite.size == errs.size else float("inf")
    std = float(np.std(errs)) if finite.size == errs.size else float("inf")
    return ExperimentReport(
        config=cfg,
        trials=trials,
        avg_rel_err=avg,
        median_rel_err=float(np.median(errs)),
        std_rel_err=std,
        success_rate=sum(r.success for r in results) / trials,
        wall_ms=wall_ms,
    )
