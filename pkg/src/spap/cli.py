"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 runtime/solver error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bounds_mod
from .bestapprox import GridSpec
from .pipeline import PipelineConfig, run_experiment, run_trial
from .report import emit_csv
from .reproduce import DEFAULT_TRIALS, TARGETS, reproduce

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="spap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="one pipeline run, JSON output")
    p.add_argument("--fn", required=True, help="builtin name or expression in x")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--mode", choices=["uniform", "l2"], default="uniform")
    p.add_argument("--weights", choices=["none", "sqrt-index", "linear-index"],
                   default="none")
    p.add_argument("--en-method", choices=["remez", "cheb-tail"],
                   default="cheb-tail")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=10001)
    p.add_argument("--out", required=True)

    p = sub.add_parser("experiment", help="Monte Carlo run from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--out", required=True)

    p = sub.add_parser("reproduce", help="reference figure/table grids")
    p.add_argument("target", choices=list(TARGETS))
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--out", required=True)
    p.add_argument("--svg")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bounds", help="evaluate one bound calculator")
    p.add_argument("name", choices=[
        "jackson", "lipschitz", "derivative", "smooth", "sample-count",
        "rhs31", "rhs41", "rhs-weighted", "degree-for-budget",
    ])
    p.add_argument("--params", required=True, help="comma-separated k=v pairs")
    return parser


def _dash(s: str) -> str:
    return s.replace("-", "_")


def _parse_params(text: str) -> dict:
    params = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"bad parameter {part!r}, expected k=v")
        k, v = part.split("=", 1)
        try:
            params[k.strip()] = float(v)
        except ValueError:
            params[k.strip()] = v.strip()
    return params


def _run_bounds(name: str, params: dict) -> float:
    g = params.get
    if name == "jackson":
        return bounds_mod.jackson_bound(g("modulus", 0.0))
    if name == "lipschitz":
        return bounds_mod.lipschitz_jackson(
            g("M", 1.0), g("alpha", 1.0), g("a", -1.0), g("b", 1.0), int(g("n", 1)))
    if name == "derivative":
        return bounds_mod.derivative_jackson(
            g("M1", 1.0), g("a", -1.0), g("b", 1.0), int(g("n", 1)))
    if name == "smooth":
        return bounds_mod.smooth_jackson(
            g("Mp1", 1.0), g("p", 1.0), g("a", -1.0), g("b", 1.0),
            int(g("n", 1)), g("Cp", 1.0))
    if name == "sample-count":
        return bounds_mod.sample_count_bound(
            int(g("s", 2)), int(g("N", 1)), g("K", bounds_mod.SQRT2), g("C", 1.0))
    constants = {k: float(v) for k, v in params.items()
                 if k in bounds_mod._DEFAULT_CONSTANTS}
    bp = bounds_mod.BoundParams(
        a=g("a", -1.0), b=g("b", 1.0), K=g("K", bounds_mod.SQRT2),
        theta=g("theta", 1.0), s=int(g("s", 1)), N=int(g("N", 1)),
        q=g("q", 0.5), constants=constants)
    if name == "rhs31":
        return bounds_mod.rhs_thm31(bp, g("sigma_s", 0.0), g("E_N", 0.0))
    if name == "rhs41":
        return bounds_mod.rhs_thm41(
            bp, g("sigma_s", 0.0), g("t_inf", 0.0), g("t_l2", 0.0))
    if name == "rhs-weighted":
        return bounds_mod.rhs_weighted(
            bp, g("sigma_s_w", 0.0), g("anchor", 0.0), g("tail", 0.0))
    # degree-for-budget
    return bounds_mod.degree_for_budget(
        int(g("s", 1)), g("q", 0.5), _dash(str(g("smoothness", "derivative"))),
        g("order", 1.0))


def _cmd_approx(args) -> int:
    cfg = PipelineConfig(
        fn=args.fn, N=args.N, m=args.m, theta=args.theta, mode=args.mode,
        weights=_dash(args.weights), master_seed=args.seed,
        grid=GridSpec(size=args.grid), en_method=_dash(args.en_method))
    result, details = run_trial(cfg, 0, return_details=True)
    sol = details["solver"]
    payload = {
        "function": cfg.fn,
        "N": cfg.N,
        "m": cfg.m,
        "theta": cfg.theta,
        "mode": cfg.mode,
        "weights": cfg.weights,
        "master_seed": cfg.master_seed,
        "trial_seed": result.trial_seed,
        "error_scale": details["error_scale"],
        "epsilon": details["epsilon"],
        "rel_err": result.rel_err,
        "success": result.success,
        "coefficients": details["coeffs"].coeffs.tolist(),
        "solver": {
            "iterations": sol.iterations,
            "converged": sol.converged,
            "residual_l2": sol.residual_l2,
            "objective": sol.objective,
        },
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def config_from_dict(data: dict) -> PipelineConfig:
    """PipelineConfig from JSON with field names as snake_case keys."""
    kwargs = dict(data)
    grid = kwargs.pop("grid", None)
    if grid is not None:
        kwargs["grid"] = GridSpec(**grid)
    custom = kwargs.pop("custom_weights", None)
    if custom is not None:
        kwargs["custom_weights"] = tuple(custom)
    return PipelineConfig(**kwargs)


def _cmd_experiment(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        cfg = config_from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad config: {exc}")
    report = run_experiment(cfg, args.trials)
    emit_csv([report], args.out)
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    reproduce(args.target, args.out, trials=args.trials, svg_path=args.svg,
              master_seed=args.seed)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"spap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "approx":
            return _cmd_approx(args)
        if args.command == "experiment":
            return _cmd_experiment(args)
        if args.command == "reproduce":
            return _cmd_reproduce(args)
        # bounds
        value = _run_bounds(args.name, _parse_params(args.params))
        print(f"{value:.17g}")
        return EXIT_OK
    except UsageError as exc:
        print(f"spap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"spap: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:
        print(f"spap: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
