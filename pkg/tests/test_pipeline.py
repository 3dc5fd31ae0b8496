"""Tests for the end-to-end trial pipeline and experiment runner."""

import numpy as np
import pytest

from spap.basis import BasisSpec, CoefficientVector
from spap.bestapprox import GridSpec, estimate_EN
from spap.funcexpr import parse
from spap.pipeline import (
    ErrorScaleCache,
    PipelineConfig,
    SUCCESS_THRESHOLD,
    run_experiment,
    run_trial,
    weight_vector,
)


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig("runge", -1, 10, 0.0)
    with pytest.raises(ValueError):
        PipelineConfig("runge", 10, 0, 0.0)
    with pytest.raises(ValueError):
        PipelineConfig("runge", 10, 10, -1.0)
    with pytest.raises(ValueError):
        PipelineConfig("runge", 10, 10, 0.0, mode="huber")
    with pytest.raises(ValueError):
        PipelineConfig("runge", 10, 10, 0.0, weights="geometric")
    with pytest.raises(ValueError):
        PipelineConfig("runge", 10, 10, 0.0, weights="custom")
    with pytest.raises(ValueError):
        PipelineConfig("runge", 10, 10, 0.0, en_method="pade")


def test_weight_vectors():
    cfg = PipelineConfig("runge", 3, 10, 0.0, weights="none")
    assert weight_vector(cfg) is None
    cfg = PipelineConfig("runge", 3, 10, 0.0, weights="sqrt_index")
    np.testing.assert_allclose(weight_vector(cfg), np.sqrt([1.0, 2.0, 3.0, 4.0]))
    cfg = PipelineConfig("runge", 3, 10, 0.0, weights="linear_index")
    np.testing.assert_allclose(weight_vector(cfg), [1.0, 1.5, 2.0, 2.5])
    cfg = PipelineConfig("runge", 2, 10, 0.0, weights="custom",
                         custom_weights=(1.0, 2.0, 4.0))
    np.testing.assert_allclose(weight_vector(cfg), [1.0, 2.0, 4.0])


def test_trial_determinism():
    cfg = PipelineConfig("runge", 30, 40, 1.0, master_seed=5)
    cache = ErrorScaleCache()
    a = run_trial(cfg, 3, cache)
    b = run_trial(cfg, 3, cache)
    assert a == b
    c = run_trial(cfg, 4, cache)
    assert c.trial_seed != a.trial_seed


def test_sparse_polynomial_exact_reconstruction():
    # f in Pi_N, 4-sparse; theta = 0 interpolation recovers it exactly
    N = 60
    c = np.zeros(N + 1)
    c[[0, 7, 23, 51]] = [1.0, -2.0, 0.5, 1.5]
    poly = CoefficientVector(c, BasisSpec(N))
    cfg = PipelineConfig(poly, N, 60, 0.0, master_seed=1)
    result = run_trial(cfg, 0)
    assert result.rel_err <= 1e-8
    assert result.success


def test_theta_zero_skips_error_scale():
    class Boom(ErrorScaleCache):
        def error_scale(self, cfg):
            raise AssertionError("error scale must not be computed for theta=0")

    cfg = PipelineConfig("runge", 20, 15, 0.0, master_seed=2)
    result = run_trial(cfg, 0, Boom())
    assert np.isfinite(result.rel_err)


def test_epsilon_passed_exactly():
    cfg = PipelineConfig("runge", 30, 40, 2.5, master_seed=0)
    cache = ErrorScaleCache()
    _, details = run_trial(cfg, 0, cache, return_details=True)
    e_hat = cache.error_scale(cfg)
    assert details["epsilon"] == cfg.theta * np.sqrt(cfg.m) * e_hat
    assert details["error_scale"] == e_hat


def test_error_scale_modes():
    cache = ErrorScaleCache()
    uni = PipelineConfig("runge", 25, 30, 1.0, mode="uniform")
    l2 = PipelineConfig("runge", 25, 30, 1.0, mode="l2")
    assert cache.error_scale(uni) == pytest.approx(
        estimate_EN(parse("1/(1+25*x^2)"), 25, "cheb_tail", GridSpec())
    )
    # the l2 anchor is the sup norm of the projection residual, which is
    # at least the best uniform deviation
    assert cache.error_scale(l2) >= cache.error_scale(uni) - 1e-15


def test_metric_consistency():
    # same polynomial, both metrics: l2 ratio <= inf ratio * (sup/l2 of f)
    cache = ErrorScaleCache()
    uni = PipelineConfig("logsin", 40, 30, 0.0, master_seed=9, mode="uniform")
    l2 = PipelineConfig("logsin", 40, 30, 0.0, master_seed=9, mode="l2")
    r_uni = run_trial(uni, 0, cache)
    r_l2 = run_trial(l2, 0, cache)
    _, _, norm_inf = cache.reference(uni)
    _, _, norm_l2 = cache.reference(l2)
    assert r_l2.rel_err <= r_uni.rel_err * (norm_inf / norm_l2) * (1.0 + 1e-9)


def test_failed_trial_counts_as_failure():
    # log(x) is undefined on half of [-1, 1]; the trial fails, not raises
    cfg = PipelineConfig("log(x)", 5, 10, 0.0, master_seed=0)
    result = run_trial(cfg, 0)
    assert result.rel_err == np.inf
    assert not result.success


def test_run_experiment_single_trial():
    cfg = PipelineConfig("sqrt105", 25, 35, 1.0, master_seed=4)
    cache = ErrorScaleCache()
    trial = run_trial(cfg, 0, cache)
    report = run_experiment(cfg, 1, cache)
    assert report.trials == 1
    assert report.avg_rel_err == pytest.approx(trial.rel_err)
    assert report.median_rel_err == pytest.approx(trial.rel_err)
    assert report.std_rel_err == 0.0
    assert report.success_rate in (0.0, 1.0)
    assert report.wall_ms >= 0


def test_run_experiment_statistics():
    cfg = PipelineConfig("runge", 25, 20, 0.0, master_seed=11)
    cache = ErrorScaleCache()
    report = run_experiment(cfg, 5, cache)
    errs = [run_trial(cfg, i, cache).rel_err for i in range(5)]
    assert report.avg_rel_err == pytest.approx(np.mean(errs))
    assert report.median_rel_err == pytest.approx(np.median(errs))
    assert report.std_rel_err == pytest.approx(np.std(errs))
    assert 0.0 <= report.success_rate <= 1.0
    assert report.success_rate == np.mean(
        [e < SUCCESS_THRESHOLD for e in errs]
    )
    with pytest.raises(ValueError):
        run_experiment(cfg, 0)
