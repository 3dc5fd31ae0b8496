"""Tests for the closed-form bound calculators."""

import math

import pytest

from spap.bounds import (
    BoundParams,
    degree_for_budget,
    derivative_jackson,
    jackson_bound,
    lipschitz_jackson,
    rhs_thm31,
    rhs_thm31_Aq,
    rhs_thm41,
    rhs_thm41_Aq,
    rhs_weighted,
    sample_count_bound,
    smooth_jackson,
)


def test_jackson_bound():
    assert jackson_bound(0.0) == 0.0
    assert jackson_bound(1.0) == 12.0
    assert jackson_bound(0.25) == 3.0


def test_lipschitz_jackson():
    assert lipschitz_jackson(1.0, 1.0, -1.0, 1.0, 12) == pytest.approx(1.0)
    assert lipschitz_jackson(0.0, 0.5, -1.0, 1.0, 3) == 0.0
    assert lipschitz_jackson(2.0, 0.5, -1.0, 1.0, 4) == pytest.approx(12.0)


def test_derivative_jackson():
    assert derivative_jackson(1.0, -1.0, 1.0, 12) == pytest.approx(1.0)
    assert derivative_jackson(0.0, -1.0, 1.0, 5) == 0.0
    assert derivative_jackson(3.0, 0.0, 1.0, 6) == pytest.approx(3.0)


def test_smooth_jackson():
    assert smooth_jackson(0.0, 2.0, -1.0, 1.0, 3) == 0.0
    assert smooth_jackson(1.0, 1.0, -1.0, 1.0, 2) == pytest.approx(1.0)
    # halving n multiplies the bound by 2^(p+1)
    p = 2.0
    hi = smooth_jackson(1.0, p, -1.0, 1.0, 4)
    lo = smooth_jackson(1.0, p, -1.0, 1.0, 2)
    assert lo / hi == pytest.approx(2.0 ** (p + 1.0))


def test_sample_count_bound():
    # independent arithmetic: ceil(C K^2 s ln^3 s ln(N+1))
    expected = math.ceil(2.0 * 8 * math.log(8) ** 3 * math.log(201))
    assert sample_count_bound(8, 200) == expected == 763
    assert sample_count_bound(2, 1) == math.ceil(
        2.0 * 2 * math.log(2) ** 3 * math.log(2)
    )


def test_sample_count_monotone():
    base = sample_count_bound(8, 200)
    assert sample_count_bound(9, 200) >= base
    assert sample_count_bound(8, 400) >= base
    assert sample_count_bound(8, 200, K=2.0) >= base
    assert sample_count_bound(8, 200, C=2.0) >= base


def test_rhs_thm31():
    p = BoundParams()
    assert rhs_thm31(p, 0.0, 0.0) == 0.0
    p1 = BoundParams(K=1.0, theta=1.0, s=1)
    assert rhs_thm31(p1, 1.0, 1.0) == pytest.approx(3.0)
    # linear in each error argument
    assert rhs_thm31(p, 2.0, 0.0) == pytest.approx(2.0 * rhs_thm31(p, 1.0, 0.0))
    assert rhs_thm31(p, 0.0, 2.0) == pytest.approx(2.0 * rhs_thm31(p, 0.0, 1.0))


def test_rhs_thm31_aq_matches_stechkin_substitution():
    p = BoundParams(s=4, q=0.5)
    direct = rhs_thm31(p, 3.0 * 4 ** (1.0 - 2.0), 0.5)
    assert rhs_thm31_Aq(p, 3.0, 0.5) == pytest.approx(direct)


def test_rhs_thm41():
    p = BoundParams(s=1, theta=0.0)
    assert rhs_thm41(p, 0.0, 0.0, 0.0) == 0.0
    assert rhs_thm41(p, 0.0, 5.0, 0.25) == pytest.approx(0.25)
    # doubling s divides the middle term by sqrt(2)
    a = rhs_thm41(BoundParams(s=2), 1.0, 0.0, 0.0)
    b = rhs_thm41(BoundParams(s=4), 1.0, 0.0, 0.0)
    assert a / b == pytest.approx(math.sqrt(2.0))


def test_rhs_thm41_aq():
    p = BoundParams(s=4, q=0.5)
    got = rhs_thm41_Aq(p, 2.0, 0.5, 0.25)
    assert got == pytest.approx(0.25 + 2.0 * 4 ** (0.5 - 2.0) + 1.0 * 0.5)


def test_rhs_weighted():
    p = BoundParams(s=1, theta=1.0)
    assert rhs_weighted(p, 0.0, 0.0, 0.0) == 0.0
    assert rhs_weighted(p, 1.0, 1.0, 1.0) == pytest.approx(3.0)
    # additive in the three contributions
    total = rhs_weighted(p, 1.0, 2.0, 3.0)
    parts = (
        rhs_weighted(p, 1.0, 0.0, 0.0)
        + rhs_weighted(p, 0.0, 2.0, 0.0)
        + rhs_weighted(p, 0.0, 0.0, 3.0)
    )
    assert total == pytest.approx(parts)


def test_degree_for_budget():
    assert degree_for_budget(4, 0.5, "derivative") == 8
    assert degree_for_budget(4, 0.5, "order_p", 3.0) == 2
    assert degree_for_budget(1, 0.5, "derivative") == 1
    assert degree_for_budget(1, 0.3, "lipschitz", 1.0) == 1


def test_degree_for_budget_monotone_in_smoothness():
    for s in range(2, 65):
        for q in (0.3, 0.5, 0.7):
            degs = [
                degree_for_budget(s, q, "order_p", p) for p in (1.0, 2.0, 3.0, 5.0)
            ]
            assert degs == sorted(degs, reverse=True)


def test_param_validation():
    with pytest.raises(ValueError):
        BoundParams(a=1.0, b=-1.0)
    with pytest.raises(ValueError):
        BoundParams(q=1.5)
    with pytest.raises(ValueError):
        BoundParams(s=0)
    with pytest.raises(ValueError):
        BoundParams(constants={"C1": -1.0})
    with pytest.raises(ValueError):
        rhs_thm31(BoundParams(), -1.0, 0.0)
    with pytest.raises(ValueError):
        degree_for_budget(4, 0.5, "cubic_spline")
