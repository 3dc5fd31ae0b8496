"""Best uniform (Remez) and best square (L2 projection) approximation.

Produces the error scalars that anchor the l1 constraint radius: the
best uniform deviation E_N over degree-N polynomials, and the sup / L2
norms of the best-square residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.fft

from .basis import (
    BasisSpec,
    CoefficientVector,
    SQRT2,
    build_matrix,
    eval_polynomial,
    gauss_chebyshev,
)

REMEZ_DEGREE_CAP = 50


class ConvergenceError(RuntimeError):
    """Remez iteration failed to level within the iteration budget."""


class DegreeCapError(ValueError):
    """Remez requested above the double-precision practicality cap."""


@dataclass(frozen=True)
class GridSpec:
    """Dense evaluation grid for discretized sup norms."""

    size: int = 10001
    layout: str = "uniform"

    def __post_init__(self):
        if self.size < 2:
            raise ValueError("grid size must be at least 2")
        if self.layout not in ("uniform", "chebyshev-extrema"):
            raise ValueError(f"unknown grid layout: {self.layout!r}")

    def points(self) -> np.ndarray:
        if self.layout == "uniform":
            return np.linspace(-1.0, 1.0, self.size)
        j = np.arange(self.size)
        return -np.cos(np.pi * j / (self.size - 1))


@dataclass
class BestApproxResult:
    coeffs: CoefficientVector
    method: str
    e_uniform: Optional[float] = None
    t_inf: Optional[float] = None
    t_l2: Optional[float] = None
    extrema: Optional[np.ndarray] = None


def sup_norm_on_grid(g: Callable, grid: GridSpec = GridSpec()) -> float:
    """Max of |g| over the grid; endpoints are always included."""
    return float(np.max(np.abs(np.asarray(g(grid.points()), dtype=float))))


def modulus_estimate(f: Callable, delta: float, grid: GridSpec = GridSpec()) -> float:
    """Grid estimate (lower bound) of the modulus of continuity at delta."""
    if not 0.0 < delta <= 2.0:
        raise ValueError("delta must lie in (0, 2]")
    x = grid.points()
    fv = np.asarray(f(x), dtype=float)
    # max |f(x)-f(y)| over |x-y| <= delta equals the largest spread of f
    # over a sliding window of width delta.
    best = 0.0
    lo = 0
    for hi in range(x.size):
        while x[hi] - x[lo] > delta:
            lo += 1
        window = fv[lo : hi + 1]
        best = max(best, float(window.max() - window.min()))
    return best


def chebyshev_coeffs(f: Callable, M: int) -> np.ndarray:
    """First M expansion coefficients of f via the M-node quadrature rule.

    Entry k equals inner_product(f, C_k, M); computed with a DCT-II,
    which is algebraically the same sum over the Chebyshev roots.
    """
    if M < 1:
        raise ValueError("quadrature size must be positive")
    rule = gauss_chebyshev(M)
    vals = np.asarray(f(rule.nodes), dtype=float)
    c = scipy.fft.dct(vals, type=2) / (2.0 * M)
    c[1:] *= SQRT2
    return c


def l2_projection(
    f: Callable,
    N: int,
    M: Optional[int] = None,
    grid: GridSpec = GridSpec(),
) -> BestApproxResult:
    """Best square approximation of f in the degree-N space.

    Returns the projection coefficients together with the residual sup
    norm (on the dense grid) and quadrature L2 norm.
    """
    if M is None:
        M = 4 * (N + 1)
    if M < N + 1:
        raise ValueError("quadrature size must be at least N + 1")
    rule = gauss_chebyshev(M)
    vals = np.asarray(f(rule.nodes), dtype=float)
    B = build_matrix(rule.nodes, BasisSpec(N))
    c = B.T @ vals / M
    resid = vals - B @ c
    t_l2 = float(np.sqrt(np.dot(resid, resid) / M))
    coeffs = CoefficientVector(c, BasisSpec(N))
    t_inf = sup_norm_on_grid(lambda x: np.asarray(f(x)) - coeffs(x), grid)
    return BestApproxResult(
        coeffs, method="l2_projection", t_inf=t_inf, t_l2=t_l2
    )


def _remez_refine(f, coeffs, a, b, sign, iters=30):
    """Golden-section maximization of sign*(f - p) on [a, b]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0

    def err(x):
        return sign * (float(f(x)) - eval_polynomial(coeffs, x))

    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = err(c), err(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = err(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = err(d)
    x = (a + b) / 2.0
    return x, err(x)


def remez(
    f: Callable,
    n: int,
    tol: float = 1e-10,
    max_iter: int = 100,
    grid_size: int = 8192,
) -> BestApproxResult:
    """Best uniform approximation of degree n by the exchange algorithm.

    Uses the multi-point (second) Remez exchange with the reference
    initialized at the n+2 Chebyshev extrema.  The linear system per
    iteration is solved in the Chebyshev basis.
    """
    if n > REMEZ_DEGREE_CAP:
        raise DegreeCapError(f"Remez degree capped at {REMEZ_DEGREE_CAP}")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    ref = -np.cos(np.pi * np.arange(n + 2) / (n + 1))
    fine = GridSpec(max(grid_size, 40 * (n + 2)), "chebyshev-extrema").points()
    f_fine = np.asarray(f(fine), dtype=float)
    signs = (-1.0) ** np.arange(n + 2)
    # Cancellation in f - p caps the attainable leveling accuracy.
    noise_floor = 64.0 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(f_fine))))

    coeffs = None
    h = 0.0
    for _ in range(max_iter):
        V = np.column_stack([build_matrix(ref, BasisSpec(n)), signs])
        sol = np.linalg.solve(V, np.asarray(f(ref), dtype=float))
        coeffs = CoefficientVector(sol[:-1], BasisSpec(n))
        h = float(sol[-1])

        err = f_fine - eval_polynomial(coeffs, fine)
        max_err = float(np.max(np.abs(err)))
        gap = max_err - abs(h)
        if max_err == 0.0 or gap / max_err <= tol or gap <= noise_floor:
            return BestApproxResult(
                coeffs, method="remez", e_uniform=abs(h), extrema=ref
            )

        # Candidate extrema: signed local maxima of the error, refined
        # off-grid by golden section.
        s = np.where(err >= 0.0, 1.0, -1.0)
        se = s * err
        peak = np.abs(err) > 0
        peak[1:] &= s[1:] * err[:-1] <= se[1:]
        peak[:-1] &= s[:-1] * err[1:] <= se[:-1]
        cand = []
        for i in np.flatnonzero(peak):
            a = fine[i - 1] if i > 0 else fine[i]
            b = fine[i + 1] if i < fine.size - 1 else fine[i]
            if a < b:
                x, e = _remez_refine(f, coeffs, a, b, s[i])
            else:
                x, e = fine[i], se[i]
            cand.append((x, s[i] * max(e, se[i])))
        cand.sort(key=lambda t: t[0])

        # Collapse runs of equal sign, keeping the largest magnitude.
        merged = []
        for x, e in cand:
            if merged and np.sign(e) == np.sign(merged[-1][1]):
                if abs(e) > abs(merged[-1][1]):
                    merged[-1] = (x, e)
            else:
                merged.append((x, e))

        # Trim to n+2 alternating points, preserving the global maximum.
        while len(merged) > n + 2:
            mags = [abs(e) for _, e in merged]
            if len(merged) == n + 3:
                drop = 0 if mags[0] <= mags[-1] else len(merged) - 1
                merged.pop(drop)
            else:
                drop = int(np.argmin(mags))
                if drop in (0, len(merged) - 1):
                    merged.pop(drop)
                else:
                    keep = merged[drop - 1] \
                        if abs(merged[drop - 1][1]) >= abs(merged[drop + 1][1]) \
                        else merged[drop + 1]
                    merged[drop - 1 : drop + 2] = [keep]
        if len(merged) < n + 2:
            raise ConvergenceError(
                f"reference degenerated to {len(merged)} points"
            )
        ref = np.array([x for x, _ in merged])
        signs = np.sign([e for _, e in merged])

    raise ConvergenceError(f"no leveling after {max_iter} iterations")


def estimate_EN(
    f: Callable,
    N: int,
    method: str = "cheb_tail",
    grid: GridSpec = GridSpec(),
) -> float:
    """Best-uniform-error scalar for the constraint radius.

    The remez path returns E_N itself (degrees up to 50).  The cheb_tail
    path returns the dense-grid deviation of the degree-N truncation of a
    length-4(N+1) Chebyshev expansion, an upper bound for E_N.
    """
    if N < 0:
        raise ValueError("degree must be nonnegative")
    if method == "remez":
        return remez(f, N).e_uniform
    if method != "cheb_tail":
        raise ValueError(f"unknown method: {method!r}")
    c = chebyshev_coeffs(f, 4 * (N + 1))
    trunc = CoefficientVector(c[: N + 1], BasisSpec(N))
    return sup_norm_on_grid(lambda x: np.asarray(f(x)) - trunc(x), grid)
