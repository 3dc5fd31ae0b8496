"""Constrained (weighted) l1 minimization and sparse-vector utilities.

Solves min ||z||_{w,1} subject to ||Az - y||_2 <= eps with an ADMM
operator-splitting scheme: an l1 proximal step alternates with projection
of the residual onto the eps-ball (the affine set Az = y when eps = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


class InfeasibleError(RuntimeError):
    """eps = 0 requested but y is not in the range of A."""


@dataclass
class SolverOptions:
    feas_tol: float = 1e-9
    rel_gap_tol: float = 1e-8
    max_iter: int = 50000

    def __post_init__(self):
        if self.feas_tol <= 0 or self.rel_gap_tol <= 0 or self.max_iter <= 0:
            raise ValueError("solver tolerances must be positive")


@dataclass
class ConstrainedL1Problem:
    A: np.ndarray
    y: np.ndarray
    epsilon: float
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.A.ndim != 2 or self.y.ndim != 1 or self.A.shape[0] != self.y.size:
            raise ValueError("inconsistent problem dimensions")
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=float)
            if self.weights.shape != (self.A.shape[1],):
                raise ValueError("weight vector length must match columns of A")
            if np.any(self.weights < 1.0):
                raise ValueError("weights must all be >= 1")


@dataclass
class SolverResult:
    z: np.ndarray
    residual_l2: float
    objective: float
    iterations: int
    converged: bool


def _soft(v, t):
    return np.sign(v) * np.maximum(np.abs(v) - t, 0.0)


def _admm(A, y, eps, w, opts):
    m, n = A.shape
    # Normalize by ||y||: the problem is positively homogeneous, so this
    # makes the returned solution scale exactly with (y, eps).  Weights
    # are folded into the matrix by column scaling, which reduces the
    # weighted problem to the plain one.
    scale = float(np.linalg.norm(y))
    if scale == 0.0:
        return SolverResult(np.zeros(n), 0.0, 0.0, 0, True)
    yn = y / scale
    epsn = eps / scale
    B = A / w[None, :]

    # (I + B B^T)^-1 applied via the eigendecomposition of B B^T
    # (Woodbury) when the system is underdetermined.
    under = m <= n
    if under:
        G = B @ B.T
        lam, Q = np.linalg.eigh(G)
    else:
        import scipy.linalg

        cho = scipy.linalg.cho_factor(np.eye(n) + B.T @ B)

    def range_project(r):
        # Least-norm d with B d = r (up to rank deficiency).  Only used
        # outside the iteration loop, so a fresh lstsq is affordable and
        # avoids the squared conditioning of B B^T.
        d, *_ = np.linalg.lstsq(B, r, rcond=None)
        return d

    if epsn == 0.0:
        d0 = range_project(yn)
        if np.linalg.norm(B @ d0 - yn) > 1e-8:
            raise InfeasibleError("y is not in the range of A")

    rho = 1.0
    alpha = 1.8
    z = np.zeros(n)
    Bz = np.zeros(m)
    u = np.zeros(n)
    v = np.zeros(m)
    du = np.zeros(n)
    dv = np.zeros(m)
    converged = False
    it = 0
    for it in range(1, opts.max_iter + 1):
        check = it % 5 == 0
        u_in = u - du
        v_in = v - dv
        b = u_in + B.T @ v_in
        if under:
            Bb = B @ u_in + G @ v_in
            wk = Q @ ((Q.T @ Bb) / (1.0 + lam))
            z = b - B.T @ wk
            Bz = Bb - G @ wk
        else:
            z = scipy.linalg.cho_solve(cho, b)
            Bz = B @ z
        zr = alpha * z + (1.0 - alpha) * u
        Bzr = alpha * Bz + (1.0 - alpha) * v

        u_old, v_old = u, v
        u = _soft(zr + du, 1.0 / rho)
        t = Bzr + dv
        d = t - yn
        nd = np.linalg.norm(d)
        v = yn + d * (epsn / nd) if nd > epsn else t
        du = du + zr - u
        dv = dv + Bzr - v

        if check:
            r_pri = np.sqrt(
                np.linalg.norm(z - u) ** 2 + np.linalg.norm(Bz - v) ** 2
            )
            s_dual = rho * np.linalg.norm((u - u_old) + B.T @ (v - v_old))
            eps_pri = np.sqrt(n + m) * opts.feas_tol + opts.rel_gap_tol * max(
                np.sqrt(np.linalg.norm(z) ** 2 + np.linalg.norm(Bz) ** 2),
                np.sqrt(np.linalg.norm(u) ** 2 + np.linalg.norm(v) ** 2),
            )
            eps_dual = np.sqrt(n) * opts.feas_tol \
                + opts.rel_gap_tol * rho * np.linalg.norm(du + B.T @ dv)
            if r_pri <= eps_pri and s_dual <= eps_dual:
                converged = True
                break
            if r_pri > 10.0 * s_dual:
                rho *= 2.0
                du /= 2.0
                dv /= 2.0
            elif s_dual > 10.0 * r_pri:
                rho /= 2.0
                du *= 2.0
                dv *= 2.0

    def feasible(zc):
        r = yn - B @ zc
        nr = float(np.linalg.norm(r))
        if nr <= epsn:
            return zc
        # Shift along range(B) so the residual lands exactly on the
        # constraint boundary; the step is O(split residual), so the
        # objective increase is negligible.
        beta = 1.0 - epsn / nr if epsn > 0.0 else 1.0
        return zc + beta * range_project(r)

    z = feasible(z)

    # Support snap: u is exactly sparse after thresholding.  A least
    # squares fit on its support recovers vertex solutions to machine
    # precision; keep it only when feasible and no worse in objective.
    support = np.flatnonzero(u)
    if 0 < support.size <= m:
        zs = np.zeros(n)
        zs[support], *_ = np.linalg.lstsq(B[:, support], yn, rcond=None)
        zs = feasible(zs)
        if (
            np.linalg.norm(B @ zs - yn) <= epsn + opts.feas_tol
            and np.sum(np.abs(zs)) <= np.sum(np.abs(z))
        ):
            z = zs

    z_out = z / w * scale
    residual = float(np.linalg.norm(A @ z_out - y))
    if converged and residual > eps * (1.0 + 1e-6) + 1e-9:
        converged = False
    objective = float(np.dot(w, np.abs(z_out)))
    return SolverResult(z_out, residual, objective, it, converged)


def solve_bpdn(p: ConstrainedL1Problem, opts: Optional[SolverOptions] = None) -> SolverResult:
    """min ||z||_1 subject to ||Az - y||_2 <= eps."""
    if p.weights is not None:
        raise ValueError("use solve_weighted_bpdn for weighted problems")
    return _admm(p.A, p.y, p.epsilon, np.ones(p.A.shape[1]), opts or SolverOptions())


def solve_weighted_bpdn(
    p: ConstrainedL1Problem, opts: Optional[SolverOptions] = None
) -> SolverResult:
    """min sum_j w_j |z_j| subject to ||Az - y||_2 <= eps."""
    if p.weights is None:
        raise ValueError("weighted solve requires a weight vector")
    return _admm(p.A, p.y, p.epsilon, p.weights, opts or SolverOptions())


def weighted_norm(z, w, p: float) -> float:
    """(sum_j w_j^(2-p) |z_j|^p)^(1/p) for p in (0, 2]."""
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if z.shape != w.shape:
        raise ValueError("dimension mismatch")
    if not 0.0 < p <= 2.0:
        raise ValueError("exponent must lie in (0, 2]")
    return float(np.sum(w ** (2.0 - p) * np.abs(z) ** p) ** (1.0 / p))


def weighted_card(S, w) -> float:
    """Weighted cardinality sum_{j in S} w_j^2."""
    w = np.asarray(w, dtype=float)
    idx = np.fromiter(S, dtype=int) if len(S) else np.array([], dtype=int)
    if idx.size and (idx.min() < 0 or idx.max() >= w.size):
        raise ValueError("index set out of range")
    return float(np.sum(w[idx] ** 2))


def _largest_indices(z, s):
    # Stable: |z| descending, index ascending on ties.
    order = np.lexsort((np.arange(z.size), -np.abs(z)))
    return order[:s]


def sigma_s(z, s: int, p: float) -> float:
    """l_p norm of z with its s largest-magnitude entries removed."""
    z = np.asarray(z, dtype=float)
    if not 0 <= s <= z.size:
        raise ValueError("s must lie in [0, len(z)]")
    keep = np.ones(z.size, dtype=bool)
    keep[_largest_indices(z, s)] = False
    tail = np.abs(z[keep])
    if tail.size == 0:
        return 0.0
    return float(np.sum(tail**p) ** (1.0 / p))


def _half_subsets(costs, values):
    pairs = [(0.0, 0.0)]
    for c, v in zip(costs, values):
        pairs += [(pc + c, pv + v) for pc, pv in pairs]
    pairs.sort()
    # Pareto filter: nondecreasing cost with strictly increasing best value.
    best = []
    top = -1.0
    for c, v in pairs:
        if v > top:
            best.append((c, v))
            top = v
    return best


def sigma_s_weighted(z, s: float, w, mode: str = "greedy") -> float:
    """Weighted best s-term approximation error in the (w, 1) norm.

    Keeps a subset S with weighted cardinality at most s; the error is
    the weighted l1 mass of the dropped entries.  The exact mode solves
    the underlying knapsack by meet-in-the-middle enumeration and is
    intended as a test oracle (length capped at 25).
    """
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if z.shape != w.shape:
        raise ValueError("dimension mismatch")
    if s < 0:
        raise ValueError("budget must be nonnegative")
    costs = w**2
    values = w * np.abs(z)
    total = float(values.sum())
    if mode == "greedy":
        density = np.where(w > 0, np.abs(z) / w, 0.0)
        order = np.lexsort((np.arange(z.size), -density))
        budget = s
        kept = 0.0
        for j in order:
            if costs[j] <= budget:
                budget -= costs[j]
                kept += values[j]
        return max(total - kept, 0.0)
    if mode != "exact":
        raise ValueError(f"unknown mode: {mode!r}")
    if z.size > 25:
        raise ValueError("exact mode capped at 25 entries")
    half = z.size // 2
    left = _half_subsets(costs[:half], values[:half])
    right = _half_subsets(costs[half:], values[half:])
    right_costs = np.array([c for c, _ in right])
    best_kept = 0.0
    for c, v in left:
        if c > s:
            break
        i = int(np.searchsorted(right_costs, s - c, side="right")) - 1
        if i >= 0:
            best_kept = max(best_kept, v + right[i][1])
    return max(total - best_kept, 0.0)


def quasi_norm_Aq(c, q: float) -> float:
    """(sum |c_k|^q)^(1/q) for 0 < q < 1."""
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    c = np.asarray(getattr(c, "coeffs", c), dtype=float)
    total = float(np.sum(np.abs(c) ** q))
    return float(total ** (1.0 / q))
