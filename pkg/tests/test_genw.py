import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from genlambert.errors import DomainError, UnsupportedConfiguration
from genlambert.genw import (
    GenWParams,
    RootSet,
    canonicalize,
    count_tt_solutions,
    forward,
    residual,
    solve,
    solve_empty,
    solve_shifted,
    solve_ts,
    solve_tt,
    tt_critical_points,
)
from genlambert.oracle import highprec_residual, sign_scan_roots


def test_canonicalize_scales_and_cancels():
    q = canonicalize(GenWParams((1.0,), (0.0,), 2.0, 5.0))
    assert q.uppers == (2.0,) and q.lowers == (0.0,) and q.a == 5.0 and q.c == 1.0
    q = canonicalize(GenWParams((1.0, 2.0), (), 2.0, 3.0))
    assert q.uppers == (2.0, 4.0) and q.a == 12.0
    q = canonicalize(GenWParams((1.0, 3.0), (1.0,), 1.0, 2.0))
    assert q.uppers == (3.0,) and q.lowers == ()
    with pytest.raises(ValueError):
        canonicalize(GenWParams((), (), 0.0, 1.0))


def test_forward_and_residual():
    p = GenWParams((1.0,), (2.0,), 1.0, 0.0)
    assert forward(p, 0.0) == pytest.approx(0.5)
    assert residual(p, 1.0) == 0.0
    # next to the pole the cleared form stays finite
    assert math.isfinite(residual(GenWParams((1.0,), (2.0,), 1.0, 3.0), 2.0))


def test_solve_empty():
    assert solve_empty(math.e) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        solve_empty(0.0)
    assert solve(GenWParams((), (), 1.0, -1.0)).roots == ()


def test_rootset_count():
    rs = RootSet((1.0, 2.0), (True, False))
    assert rs.count == 3 and len(rs) == 2 and list(rs) == [1.0, 2.0]


def _scan_ts(t, s, a):
    g = lambda x: math.exp(x) * (x - t) - a * (x - s)
    return sign_scan_roots(g, -60.0, 40.0, 20_000)


def test_solve_ts_random_against_sign_scan():
    rng = random.Random(3)
    checked = 0
    while checked < 300:
        t, s = rng.uniform(-3, 3), rng.uniform(-3, 3)
        a = rng.choice([-1, 1]) * 10 ** rng.uniform(-2, 1)
        if abs(t - s) < 1e-3:
            continue
        roots = solve_ts(t, s, 1.0, a).roots
        if any(abs(x - y) < 0.05 for x, y in zip(roots, roots[1:])):
            continue  # too close to a tangency for a grid scan
        for x in roots:
            assert highprec_residual("ts", {"t": t, "s": s}, a, x) <= 1e-12 * max(1.0, abs(a), abs(a * (x - s)))
        assert len(roots) == _scan_ts(t, s, a)
        checked += 1


def test_solve_ts_examples():
    rs = solve_ts(0.0, 1.0, 1.0, 0.01)
    assert len(rs) == 2
    assert rs.roots[1] == pytest.approx(-0.010205683110943735, rel=1e-14)
    assert solve_ts(0.0, 1.0, 1.0, 0.0).roots == (0.0,)
    with pytest.raises(DomainError):
        solve_ts(1.0, 1.0, 1.0, 2.0)
    with pytest.raises(ValueError):
        solve_ts(0.0, 1.0, 0.0, 2.0)


@pytest.mark.parametrize("c", [0.5, 2.0, -1.5])
def test_solve_ts_scaled(c):
    t, s, a = 0.3, 1.2, 0.7
    rs = solve_ts(t, s, c, a)
    g = lambda x: math.exp(c * x) * (x - t) - a * (x - s)
    assert len(rs) == sign_scan_roots(g, -60.0, 40.0, 20_000)
    for x in rs:
        assert highprec_residual("ts", {"t": t, "s": s, "c": c}, a, x) <= 1e-12 * max(1.0, abs(a))


@settings(max_examples=200, deadline=None)
@given(st.floats(-3, 3), st.floats(-2, 2), st.floats(-2, 2), st.floats(-5, 5))
def test_solve_shifted_roots_satisfy_equation(t, c, r, a):
    if abs(c) < 1e-2:
        return
    for x in solve_shifted(t, c, r, a):
        scale = max(1.0, abs(a), abs(r * (x - t)))
        assert highprec_residual("shifted", {"t": t, "c": c, "r": r}, a, x) <= 1e-11 * scale


def test_solve_shifted_plain():
    # (x - 1) e^x = e^2 gives x = 2
    rs = solve_shifted(1.0, 1.0, 0.0, math.e ** 2)
    assert rs.roots == (pytest.approx(2.0, abs=1e-15),)


def test_tt_critical_points():
    c1, c2 = tt_critical_points(0.0, 1.0)
    assert c1 == pytest.approx((-1 - math.sqrt(5)) / 2)
    assert c2 == pytest.approx((-1 + math.sqrt(5)) / 2)
    c1, c2 = tt_critical_points(1.0, 1.0)
    assert (c1, c2) == (pytest.approx(-1.0), pytest.approx(1.0))


def _extrema(t1, t2):
    c1, c2 = tt_critical_points(t1, t2)
    g = lambda x: math.exp(x) * (x - t1) * (x - t2)
    return c1, c2, g(c1), g(c2)


def test_tt_counts_by_region():
    t1, t2 = 0.0, 1.0
    c1, c2, vmax, vmin = _extrema(t1, t2)
    assert count_tt_solutions(t1, t2, 2 * vmax) == 1
    assert count_tt_solutions(t1, t2, vmax) == 3
    assert count_tt_solutions(t1, t2, 0.5 * vmax) == 3
    assert count_tt_solutions(t1, t2, 0.0) == 2
    assert count_tt_solutions(t1, t2, 0.5 * vmin) == 2
    assert count_tt_solutions(t1, t2, vmin) == 2
    assert count_tt_solutions(t1, t2, 2 * vmin) == 0


def test_tt_tangencies_are_double():
    t1, t2 = 0.0, 1.0
    c1, c2, vmax, vmin = _extrema(t1, t2)
    rs = solve_tt(t1, t2, vmax)
    assert rs.count == 3 and len(rs) == 2
    assert rs.roots[0] == pytest.approx(c1) and rs.double[0]
    rs = solve_tt(t1, t2, vmin)
    assert rs.roots == (pytest.approx(c2),) and rs.double == (True,)
    assert solve_tt(1.0, 1.0, 0.0).double == (True,)
    assert solve_tt(t1, t2, 0.0).roots == (0.0, 1.0)
    assert solve_tt(t1, t2, 2 * vmin).roots == ()


@settings(max_examples=300, deadline=None)
@given(st.floats(-4, 4), st.floats(-4, 4), st.floats(-2, 2))
def test_tt_solver_matches_count(t1, t2, u):
    c1, c2, vmax, vmin = _extrema(t1, t2)
    a = u * max(vmax, -vmin)
    rs = solve_tt(t1, t2, a)
    assert rs.count == count_tt_solutions(t1, t2, a) <= 3
    for x in rs:
        assert highprec_residual("tt", {"t1": t1, "t2": t2}, a, x) <= 1e-10 * max(1.0, abs(a))


def test_solve_dispatch():
    # e^(2x) (x - 1) / x = 5
    p = GenWParams((1.0,), (0.0,), 2.0, 5.0)
    rs = solve(p)
    assert len(rs) >= 1
    for x in rs:
        assert residual(p, x) <= 1e-12
    p = GenWParams((0.0, 1.0), (), 1.0, 0.005)
    assert solve(p).count == 3
    p = GenWParams((2.0,), (), 1.0, 1.0)
    assert solve(p).roots == solve_shifted(2.0, 1.0, 0.0, 1.0).roots
    # shared parameters cancel down to e^x = a
    assert solve(GenWParams((1.0,), (1.0,), 1.0, math.e)).roots == (pytest.approx(1.0),)


def test_solve_unsupported_shape():
    with pytest.raises(UnsupportedConfiguration):
        solve(GenWParams((0.0, 1.0, 2.0), (), 1.0, 1.0))
    with pytest.raises(UnsupportedConfiguration):
        solve(GenWParams((0.0,), (1.0, 2.0), 1.0, 1.0))
