"""Normalized first-kind Chebyshev orthonormal system on [-1, 1].

The system is C_0(x) = 1 and C_k(x) = sqrt(2) * cos(k * arccos(x)) for
k >= 1, orthonormal with respect to the arcsine probability measure
1 / (pi * sqrt(1 - x^2)).  All basis functions share the uniform bound
sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SQRT2 = float(np.sqrt(2.0))

#: Uniform sup-norm bound shared by every basis function.
UNIFORM_BOUND = SQRT2


class DomainError(ValueError):
    """An evaluation point fell outside [-1, 1]."""


def _check_points(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise DomainError("point outside [-1, 1]")
    return x


@dataclass(frozen=True)
class BasisSpec:
    """Degrees 0..max_degree of the normalized Chebyshev system."""

    max_degree: int
    uniform_bound: float = SQRT2

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        if self.uniform_bound <= 0:
            raise ValueError("uniform_bound must be positive")

    @property
    def size(self) -> int:
        return self.max_degree + 1


@dataclass
class CoefficientVector:
    """Coordinates of a polynomial in the normalized Chebyshev basis."""

    coeffs: np.ndarray
    basis: BasisSpec

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.ndim != 1 or self.coeffs.size != self.basis.size:
            raise ValueError(
                f"expected {self.basis.size} coefficients, got {self.coeffs.size}"
            )
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("coefficients must be finite")

    def __call__(self, x):
        return eval_polynomial(self, x)


@dataclass(frozen=True)
class SampleSet:
    """Random sampling points in [-1, 1] with values and the seed used."""

    points: np.ndarray
    values: np.ndarray
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.points.shape != self.values.shape:
            raise ValueError("points and values must have equal length")
        _check_points(self.points)


@dataclass(frozen=True)
class QuadratureRule:
    """Equal-weight Gauss-Chebyshev rule under the arcsine probability measure."""

    nodes: np.ndarray
    weight: float


def eval_basis(k: int, x):
    """Evaluate C_k at x (scalar or array)."""
    if k < 0:
        raise ValueError("degree index must be nonnegative")
    x = _check_points(x)
    if k == 0:
        return np.ones_like(x) if x.ndim else 1.0
    val = SQRT2 * np.cos(k * np.arccos(x))
    return val if x.ndim else float(val)


def eval_polynomial(c: CoefficientVector, x):
    """Evaluate sum_k c_k C_k(x) by the Clenshaw recurrence."""
    x = _check_points(x)
    # Rescale into the classical T_k basis; chebval runs Clenshaw.
    t_coeffs = c.coeffs.copy()
    t_coeffs[1:] *= SQRT2
    val = np.polynomial.chebyshev.chebval(x, t_coeffs)
    return val if x.ndim else float(val)


def eval_coeffs(coeffs: np.ndarray, x):
    """Clenshaw evaluation from a bare coefficient array."""
    coeffs = np.asarray(coeffs, dtype=float)
    return eval_polynomial(CoefficientVector(coeffs, BasisSpec(coeffs.size - 1)), x)


_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(state: int) -> int:
    z = (state + _GOLDEN) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """Per-trial seed from (master_seed, trial_index), order-independent."""
    mixed = _splitmix64(master_seed & 0xFFFFFFFFFFFFFFFF)
    return _splitmix64(mixed ^ ((trial_index & 0xFFFFFFFFFFFFFFFF) * _GOLDEN))


def sample_arcsine(seed: int, m: int) -> np.ndarray:
    """Draw m i.i.d. arcsine-distributed points via the map cos(pi * U)."""
    if m < 1:
        raise ValueError("sample count must be positive")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    return np.cos(np.pi * rng.random(m))


def sample_function(f, seed: int, m: int) -> SampleSet:
    """Sample f at m arcsine-distributed points."""
    points = sample_arcsine(seed, m)
    return SampleSet(points, np.asarray(f(points), dtype=float), seed)


def build_matrix(points, basis: BasisSpec) -> np.ndarray:
    """Sampling matrix with entries A[j, k] = C_k(points[j])."""
    points = _check_points(np.atleast_1d(points))
    theta = np.arccos(points)
    A = np.cos(np.outer(theta, np.arange(basis.size)))
    A[:, 1:] *= SQRT2
    return A


def gauss_chebyshev(M: int) -> QuadratureRule:
    """M-point Gauss-Chebyshev rule; exact through degree 2M-1."""
    if M < 1:
        raise ValueError("node count must be positive")
    i = np.arange(1, M + 1)
    nodes = np.cos((2 * i - 1) * np.pi / (2 * M))
    return QuadratureRule(nodes, 1.0 / M)


def inner_product(f, g, M: int) -> float:
    """Quadrature approximation of the arcsine-measure inner product."""
    rule = gauss_chebyshev(M)
    fv = np.asarray(f(rule.nodes), dtype=float)
    gv = np.asarray(g(rule.nodes), dtype=float)
    return float(np.dot(fv, gv) * rule.weight)
