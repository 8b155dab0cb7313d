import math

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from genlambert.errors import BranchError, DomainError, SingularityError
from genlambert.oracle import highprec_residual
from genlambert.rlambert import (
    INV_E2,
    classify,
    f_r,
    log_identity_check,
    omega1_constant,
    w_r,
    w_r_all,
    w_r_antiderivative,
    w_r_asymptotic,
    w_r_derivative,
)

R_VALUES = [-3.0, -1.0, -0.5, -1e-3, 0.0, 1e-3, 0.05, 0.13, INV_E2, 0.14, 0.5, 2.0, 1e4]


def _oracle(r, x, y0):
    """Root of y e^y + r y = x near y0 in 50-digit arithmetic."""
    with mpmath.workdps(50):
        f = lambda y: y * mpmath.exp(y) + r * y - x
        return float(mpmath.findroot(f, mpmath.mpf(y0), tol=mpmath.mpf(10) ** -40))


def test_case_labels():
    assert classify(0.0).case == "classical"
    assert classify(1.0).case == "one-branch"
    assert classify(INV_E2).case == "degenerate"
    assert classify(INV_E2 + 1e-16).case == "degenerate"
    assert classify(0.1).case == "three-branch"
    assert classify(-1.0).case == "two-branch"


def test_degenerate_kink():
    lay = classify(0.1353352832366127)
    assert lay.kink == pytest.approx(-4.0 * math.exp(-2.0), rel=1e-15)
    assert len(lay.branches) == 1


def test_gamma_minus_one_is_zero():
    lay = classify(-1.0)
    assert lay.critical.gamma == 0.0
    assert lay.cuts == (0.0,)
    assert [b.id for b in lay.branches] == [0, -1]


@pytest.mark.parametrize("r", [0.001, 0.05, 0.1, 0.13])
def test_three_branch_layout(r):
    lay = classify(r)
    a, b = lay.critical.alpha, lay.critical.beta
    assert a < -2.0 < b < -1.0
    fa, fb = f_r(r, a), f_r(r, b)
    # local max at alpha lies above the local min at beta
    assert fb < fa
    assert lay.branch(-1).domain == (fb, fa)
    assert not lay.branch(-1).increasing


@pytest.mark.parametrize("r", R_VALUES)
def test_against_oracle(r):
    lay = classify(r)
    for b in lay.branches:
        lo, hi = b.domain
        lo = max(lo, -50.0)
        hi = min(hi, 50.0)
        for t in (0.01, 0.2, 0.5, 0.8, 0.99):
            x = lo + t * (hi - lo)
            res = w_r(r, b.id, x)
            expected = _oracle(r, x, res.value)
            assert b.in_range(expected)
            assert res.value == pytest.approx(expected, rel=1e-13, abs=1e-13)


# r so small that x / r overflows has no representable lower branch values
R_STRATEGY = st.floats(-5.0, 5.0).filter(lambda r: r == 0.0 or abs(r) > 1e-200)


@settings(max_examples=400, deadline=None)
@given(R_STRATEGY, st.floats(-1e6, 1e6))
def test_every_branch_solves_equation(r, x):
    for res in w_r_all(r, x):
        y = res.value
        scale = max(1.0, abs(x), abs(y * math.exp(y)) if y < 700 else 1.0, abs(r * y))
        assert highprec_residual("w_r", {"r": r}, x, y) <= 1e-13 * scale
        lo, hi = classify(r).branch(res.branch).range
        slack = 1e-12 * max(1.0, abs(y))
        assert lo - slack <= y <= hi + slack


@settings(max_examples=200, deadline=None)
@given(R_STRATEGY, st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_monotone_on_each_branch(r, u, v):
    lay = classify(r)
    for b in lay.branches:
        lo, hi = max(b.domain[0], -30.0), min(b.domain[1], 30.0)
        x1, x2 = sorted(min(max(lo + t * (hi - lo), lo), hi) for t in (u, v))
        y1, y2 = w_r(r, b.id, x1).value, w_r(r, b.id, x2).value
        if b.increasing:
            assert y1 <= y2
        else:
            assert y1 >= y2


def _adjacent(lay):
    """(cut abscissa, critical point, side of the cut, ids of the two branches)."""
    c = lay.critical
    r = lay.r
    if lay.case == "three-branch":
        return [(f_r(r, c.alpha), c.alpha, -1, (-1, -2)), (f_r(r, c.beta), c.beta, 1, (0, -1))]
    return [(f_r(r, c.gamma), c.gamma, 1, (0, -1))]


@pytest.mark.parametrize("r", [0.01, 0.05, 0.1, -0.5, -2.0])
def test_branches_meet_at_cuts(r):
    lay = classify(r)
    for x_c, c, side, ids in _adjacent(lay):
        curv = abs(math.exp(c) * (c + 2.0))
        for d in (1e-3, 1e-7, 1e-12):
            x = x_c + side * d
            vals = [w_r(r, b, x).value for b in ids]
            # f_r(c + u) - f_r(c) ~ f''(c) u^2 / 2
            bound = 1.5 * math.sqrt(2.0 * d / curv) + 1e-12
            assert all(abs(v - c) <= bound for v in vals)
            assert (vals[0] - c) * (vals[1] - c) < 0


def test_cut_values_exact():
    r = 0.05
    lay = classify(r)
    a, b = lay.critical.alpha, lay.critical.beta
    assert w_r(r, -1, f_r(r, a)).value == a
    assert w_r(r, -1, f_r(r, b)).value == b
    assert w_r(r, 0, f_r(r, b)).value == b
    assert w_r(r, -2, f_r(r, a)).value == a


def test_near_cut_offset_precision():
    # the offset from gamma is limited only by how well x_c is represented
    r = -0.5
    lay = classify(r)
    g = lay.critical.gamma
    x_c = f_r(r, g)
    curv = abs(math.exp(g) * (g + 2.0))
    for delta in (1e-6, 1e-8, 1e-10, 1e-12):
        x = x_c + delta
        for bid in (0, -1):
            y = w_r(r, bid, x).value
            expected = _oracle(r, x, y)
            u = abs(expected - g)
            assert abs(y - expected) <= 8 * 2.2e-16 * max(1.0, abs(x_c)) / (curv * u) + 4e-16 * abs(y)


def test_omega1():
    assert omega1_constant() == pytest.approx(0.401058137541547, abs=5e-16)
    assert w_r(1, 0, 1).value == pytest.approx(0.401058137541547, abs=5e-16)


def test_classical_delegation():
    assert w_r(0.0, 0, 1.0).value == pytest.approx(0.5671432904097838, abs=2e-16)
    assert w_r(0.0, -1, -0.1).value == pytest.approx(-3.577152063957297, rel=1e-15)


def test_errors():
    with pytest.raises(BranchError):
        w_r(1.0, -1, 0.0)
    with pytest.raises(BranchError):
        w_r(-1.0, -2, 1.0)
    with pytest.raises(DomainError):
        w_r(-2.0, 0, -5.0)
    with pytest.raises(DomainError):
        w_r(0.05, -1, 10.0)
    with pytest.raises(DomainError):
        w_r(1.0, 0, math.nan)
    with pytest.raises(ValueError):
        classify(math.inf)


@settings(max_examples=200, deadline=None)
@given(st.floats(-3.0, 3.0), st.floats(-20.0, 20.0))
def test_derivative_against_finite_difference(r, x):
    assume(abs(r - INV_E2) > 1e-2)
    # for tiny nonzero r the lower branch varies on the scale |r| near x = 0
    assume(r == 0.0 or abs(r) > 1e-3)
    lay = classify(r)
    for b in lay.branches:
        marks = [m for m in list(lay.cuts) + list(b.domain) if math.isfinite(m)]
        if not b.in_domain(x) or any(abs(x - m) < 1e-2 * max(1.0, abs(m)) for m in marks):
            continue
        h = 1e-6 * max(1.0, abs(x))
        fd = (w_r(r, b.id, x + h).value - w_r(r, b.id, x - h).value) / (2 * h)
        assert w_r_derivative(r, b.id, x) == pytest.approx(fd, rel=1e-5)


@pytest.mark.parametrize("r", [-3.0, -0.5, 0.05, 0.5, 2.0])
def test_derivative_at_zero(r):
    b = classify(r).branch_for_value(0.0)
    assert w_r_derivative(r, b.id, 0.0) == pytest.approx(1 / (1 + r), abs=1e-12)


def test_derivative_singular_at_cut():
    r = -0.5
    g = classify(r).critical.gamma
    with pytest.raises(SingularityError):
        w_r_derivative(r, 0, f_r(r, g))


@pytest.mark.parametrize("r", [0.0, 1.0, 2.0])
def test_area_identity(r):
    # the integral of W_r over [0, r + e] is r/2 + e - 1
    val = w_r_antiderivative(r, 0, r + math.e) - w_r_antiderivative(r, 0, 0.0)
    assert val == pytest.approx(r / 2 + math.e - 1, abs=1e-12)


def test_asymptotic_forms():
    for r in (-2.0, 0.0, 5.0):
        errs = []
        for k in range(6, 11):
            x = 10.0 ** k
            w = w_r(r, 0, x).value
            errs.append(abs(w_r_asymptotic(r, x, "+inf") - w) / w)
        assert errs == sorted(errs, reverse=True)
        assert errs[-1] < 0.01
    assert w_r(5.0, 0, -1e9).value == pytest.approx(-2e8, rel=1e-6)
    assert w_r_asymptotic(5.0, -1e9, "-inf") == -2e8


def test_asymptotic_errors():
    with pytest.raises(DomainError):
        w_r_asymptotic(1.0, 0.5, "+inf")
    with pytest.raises(DomainError):
        w_r_asymptotic(0.0, -10.0, "-inf")
    with pytest.raises(DomainError):
        w_r_asymptotic(-1.0, -10.0, "-inf")
    with pytest.raises(ValueError):
        w_r_asymptotic(1.0, 10.0, "up")


@pytest.mark.parametrize("r", [-2.0, -0.5, 0.05, 1.0])
@pytest.mark.parametrize("x", [0.05, 0.7, 3.0, 40.0])
def test_log_identity(r, x):
    assert log_identity_check(r, x) == pytest.approx(math.log(x), abs=1e-12)


def test_large_r():
    r = 1e4
    for x in (1.0, 1e3, 274712.0789270814, 1e8):
        y = w_r(r, 0, x).value
        assert y == pytest.approx(_oracle(r, x, y), rel=1e-14)
