"""Closed-form calculators for the approximation-error bounds.

The universal constants appearing in the recovery literature are never
pinned numerically; every calculator exposes them as parameters that
default to 1, so the outputs are advisory shapes rather than certified
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict

from .basis import SQRT2

_DEFAULT_CONSTANTS = ("C", "C1", "C2", "D1", "D2", "F2", "G2", "Cp")


@dataclass
class BoundParams:
    """Shared symbols for the right-hand-side calculators."""

    a: float = -1.0
    b: float = 1.0
    K: float = SQRT2
    theta: float = 1.0
    s: int = 1
    N: int = 1
    q: float = 0.5
    constants: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.b <= self.a:
            raise ValueError("interval endpoints must satisfy b > a")
        if self.s < 1:
            raise ValueError("sparsity must be at least 1")
        if not 0.0 < self.q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        if self.theta < 0:
            raise ValueError("theta must be nonnegative")
        for name in _DEFAULT_CONSTANTS:
            self.constants.setdefault(name, 1.0)
        if any(v <= 0 for v in self.constants.values()):
            raise ValueError("constants must be positive")

    def const(self, name: str) -> float:
        return self.constants[name]


def jackson_bound(modulus_value: float) -> float:
    """Continuity bound: 12 * omega((b - a) / (2n))."""
    if modulus_value < 0:
        raise ValueError("modulus value must be nonnegative")
    return 12.0 * modulus_value


def lipschitz_jackson(M: float, alpha: float, a: float, b: float, n: int) -> float:
    """Holder-class bound 12 ((b - a)/2)^alpha M / n^alpha."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    if M < 0 or n < 1:
        raise ValueError("require M >= 0 and n >= 1")
    return 12.0 * ((b - a) / 2.0) ** alpha * M / n**alpha


def derivative_jackson(M1: float, a: float, b: float, n: int) -> float:
    """Bounded-derivative bound 6 (b - a) M1 / n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return 6.0 * (b - a) * M1 / n


def smooth_jackson(
    Mp1: float, p: float, a: float, b: float, n: int, Cp: float = 1.0
) -> float:
    """Higher-smoothness bound Cp (b - a)^(p+1) M_(p+1) / n^(p+1)."""
    if p < 0 or n < 1:
        raise ValueError("require p >= 0 and n >= 1")
    return Cp * (b - a) ** (p + 1.0) * Mp1 / n ** (p + 1.0)


def sample_count_bound(s: int, N: int, K: float = SQRT2, C: float = 1.0) -> int:
    """Advisory sample count ceil(C K^2 s ln^3(s) ln(N + 1))."""
    if s < 2 or N < 1:
        raise ValueError("require s >= 2 and N >= 1")
    return math.ceil(C * K**2 * s * math.log(s) ** 3 * math.log(N + 1))


def rhs_thm31(params: BoundParams, sigma_s: float, E_N: float) -> float:
    """Uniform-mode error RHS: K D1 sigma_s + (K D2 theta sqrt(s) + 1) E_N."""
    if sigma_s < 0 or E_N < 0:
        raise ValueError("inputs must be nonnegative")
    K = params.K
    first = K * params.const("D1") * sigma_s
    second = (K * params.const("D2") * params.theta * math.sqrt(params.s) + 1.0) * E_N
    return first + second


def rhs_thm31_Aq(params: BoundParams, aq_norm: float, E_N: float) -> float:
    """Variant with sigma_s replaced by the A_q Stechkin surrogate."""
    return rhs_thm31(params, aq_norm * params.s ** (1.0 - 1.0 / params.q), E_N)


def rhs_thm41(params: BoundParams, sigma_s: float, t_inf: float, t_l2: float) -> float:
    """L2-mode error RHS: t_l2 + C1 sigma_s / sqrt(s) + C2 theta t_inf."""
    if min(sigma_s, t_inf, t_l2) < 0:
        raise ValueError("inputs must be nonnegative")
    return (
        t_l2
        + params.const("C1") * sigma_s / math.sqrt(params.s)
        + params.const("C2") * params.theta * t_inf
    )


def rhs_thm41_Aq(params: BoundParams, aq_norm: float, t_inf: float, t_l2: float) -> float:
    """Variant with sigma_s / sqrt(s) replaced by the A_q surrogate."""
    if min(aq_norm, t_inf, t_l2) < 0:
        raise ValueError("inputs must be nonnegative")
    return (
        t_l2
        + params.const("C1") * aq_norm * params.s ** (0.5 - 1.0 / params.q)
        + params.const("C2") * params.theta * t_inf
    )


def rhs_weighted(
    params: BoundParams, sigma_s_w: float, anchor: float, t_inf_or_EN: float
) -> float:
    """Weighted-mode RHS: anchor + F2 sigma_s_w / sqrt(s) + theta G2 tail."""
    if min(sigma_s_w, anchor, t_inf_or_EN) < 0:
        raise ValueError("inputs must be nonnegative")
    return (
        anchor
        + params.const("F2") * sigma_s_w / math.sqrt(params.s)
        + params.theta * params.const("G2") * t_inf_or_EN
    )


def degree_for_budget(s: int, q: float, smoothness: str, order: float = 1.0) -> int:
    """Degree N balancing the two error terms for a sparsity budget s.

    smoothness is one of "lipschitz" (order = alpha), "derivative", or
    "order_p" (order = p).
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    exponent = 1.0 / q - 0.5
    if smoothness == "lipschitz":
        if not 0.0 < order <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        exponent /= order
    elif smoothness == "derivative":
        pass
    elif smoothness == "order_p":
        if order <= 0:
            raise ValueError("p must be positive")
        exponent /= order
    else:
        raise ValueError(f"unknown smoothness class: {smoothness!r}")
    return math.ceil(s**exponent)
