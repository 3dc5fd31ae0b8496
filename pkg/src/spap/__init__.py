"""Sparse Chebyshev polynomial approximation via constrained l1 minimization."""

from .basis import (
    BasisSpec,
    CoefficientVector,
    QuadratureRule,
    SampleSet,
    build_matrix,
    eval_basis,
    eval_polynomial,
    gauss_chebyshev,
    inner_product,
    sample_arcsine,
)
from .bestapprox import (
    BestApproxResult,
    GridSpec,
    chebyshev_coeffs,
    estimate_EN,
    l2_projection,
    modulus_estimate,
    remez,
    sup_norm_on_grid,
)
from .funcexpr import BUILTINS, FunctionExpr, parse
from .pipeline import (
    ExperimentReport,
    PipelineConfig,
    TrialResult,
    run_experiment,
    run_trial,
)
from .solver import (
    ConstrainedL1Problem,
    SolverOptions,
    SolverResult,
    quasi_norm_Aq,
    sigma_s,
    sigma_s_weighted,
    solve_bpdn,
    solve_weighted_bpdn,
    weighted_card,
    weighted_norm,
)

__version__ = "0.1.0"
