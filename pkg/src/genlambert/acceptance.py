"""
Acceptance checks for the library, one function per criterion.

Each check returns a :class:`CriterionResult` carrying what was measured and
what it was compared against. ``run_report`` runs them all in a fixed order;
the ``report`` CLI command and ``tests/test_acceptance.py`` both use it.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from . import oracle
from .combinatorics import (
    a_triangle,
    c_coefficient,
    c_triangle_by_recurrence,
    fubini,
    m_polynomial,
)
from .genw import count_tt_solutions, solve_ts, solve_tt, tt_critical_points
from .rlambert import (
    INV_E2,
    classify,
    f_r,
    w_r,
    w_r_all,
    w_r_antiderivative,
    w_r_asymptotic,
    w_r_derivative,
)
from .series import estimate_radius, eval_series, series_wr, series_wts, series_wtt

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_report", "format_line"]

SCALES = ("small", "full")

# the triangle as printed in the source table, rows n = 1..7
PRINTED_A_TABLE = (
    (1,),
    (2, 2),
    (6, 18, 9),
    (24, 144, 192, 64),
    (120, 1200, 3000, 2500, 625),
    (720, 10800, 43200, 64800, 38880, 7776),
    (5040, 105840, 617400, 1440600, 1512630, 705894, 117649),
)


@dataclass
class CriterionResult:
    id: str
    name: str
    passed: bool
    measured: dict
    expected: str
    seconds: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def format_line(res: CriterionResult) -> str:
    tag = "PASS" if res.passed else "FAIL"
    meas = ", ".join(f"{k}={_fmt(v)}" for k, v in res.measured.items())
    return f"[{tag}] {res.id:>3} {res.name}: {meas} (expected {res.expected})"


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


# -- 1 --------------------------------------------------------------------------

def check_omega1(scale: str = "small") -> CriterionResult:
    target = 0.401058137541547
    v = w_r(1.0, 0, 1.0).value
    n = 200 if scale == "small" else 2000
    times = []
    for _ in range(n):
        t0 = time.perf_counter()
        w_r(1.0, 0, 1.0)
        times.append(time.perf_counter() - t0)
    times.sort()
    med = times[len(times) // 2]
    err = abs(v - target)
    return CriterionResult(
        "1", "Omega_1 digits", err <= 5e-16 and med < 1e-3,
        {"value": v, "abs_err": err, "median_seconds": med},
        "|W_1(1) - 0.401058137541547| <= 5e-16, runtime < 1 ms")


# -- 2 --------------------------------------------------------------------------

SPECIAL_R = (-3.0, -0.5, 0.05, math.exp(-2.0), 0.5, 2.0)


def check_special_values(scale: str = "small") -> CriterionResult:
    worst = 0.0
    where = None
    for r in SPECIAL_R:
        layout = classify(r)
        for x, y in ((0.0, 0.0), (math.e + r, 1.0), (-math.exp(-1.0) - r, -1.0)):
            b = layout.branch_for_value(y)
            v = w_r(r, b.id, x).value
            err = max(abs(v - y), abs(f_r(r, v) - x))
            if err > worst:
                worst, where = err, (r, b.id, x)
    return CriterionResult(
        "2", "special values W_r(0), W_r(e+r), W_r(-1/e-r)", worst <= 1e-12,
        {"max_residual": worst, "worst_at": str(where)},
        "residual <= 1e-12 for every r and value")


# -- 3 --------------------------------------------------------------------------

def check_degenerate(scale: str = "small") -> CriterionResult:
    r = INV_E2
    x0 = -4.0 * INV_E2
    w0 = w_r(r, 0, x0).value
    hs = (1e-4, 1e-5, 1e-6, 1e-7, 1e-8)
    right = [(w_r(r, 0, x0 + h).value - w0) / h for h in hs]
    left = [(w0 - w_r(r, 0, x0 - h).value) / h for h in hs]
    big = all(abs(q) > 1e3 for q in right[2:] + left[2:])
    growing = all(abs(b) > abs(a) for a, b in zip(right, right[1:])) and \
        all(abs(b) > abs(a) for a, b in zip(left, left[1:]))
    ok = abs(w0 + 2.0) <= 1e-8 and big and growing
    return CriterionResult(
        "3", "degenerate case at -4/e^2", ok,
        {"value": w0, "right_quotients": right, "left_quotients": left},
        "W = -2 within 1e-8; one-sided quotients > 1e3 and growing without bound")


# -- 4 --------------------------------------------------------------------------

def check_classical_series(scale: str = "small") -> CriterionResult:
    se = series_wr(0, 20)
    bad = [n for n, c in enumerate(se.coeffs, 1)
           if c != Fraction((-n) ** (n - 1), math.factorial(n))]
    return CriterionResult(
        "4", "series_wr(0) equals (-n)^(n-1)/n!", not bad,
        {"terms": 20, "mismatches": bad}, "exact equality for n <= 20")


# -- 5 --------------------------------------------------------------------------

def check_identities(scale: str = "small") -> CriterionResult:
    failures = []
    if a_triangle(7).rows != PRINTED_A_TABLE:
        failures.append("A table")
    for n in range(1, 9):
        tri = c_triangle_by_recurrence(n, 8)
        for k in range(1, 9):
            for i in range(1, k + 1):
                if tri.entry(k, i) != c_coefficient(n, i, k):
                    failures.append(f"C({n},{i},{k})")
    for n in range(1, 31):
        for k in range(1, 31):
            if m_polynomial(n, k)(1) != (-n) ** k:
                failures.append(f"M_{k}^({n})(1)")
    for n in range(1, 7):
        for k in range(1, 7):
            if m_polynomial(n, k)(-1) != oracle.enumerate_barred(k, n - 1):
                failures.append(f"M_{k}^({n})(-1)")
    for k in range(1, 9):
        if m_polynomial(1, k)(-1) != fubini(k):
            failures.append(f"Fubini({k})")
    return CriterionResult(
        "5", "combinatorial identities", not failures,
        {"failures": failures[:10], "n_failures": len(failures)}, "all exact")


# -- 6 --------------------------------------------------------------------------

def check_radius_wts(scale: str = "small") -> CriterionResult:
    target = math.exp(-1.5)
    est = estimate_radius(series_wts(0, 1, 200).coeffs)
    rel = abs(est - target) / target
    return CriterionResult(
        "6a", "ratio-test radius of the W(0;1;a) series", rel <= 0.03,
        {"estimate": est, "closed_form": target, "rel_diff": rel,
         "nearest_critical_value": oracle.critical_value_radius_wts(0.0, 1.0)},
        "within 3% of e^(-3/2)")


def check_radius_wr_m2(scale: str = "small") -> CriterionResult:
    target = math.log(2.0) ** 2 / 2.0
    est = estimate_radius(series_wr(-2, 80).coeffs)
    rel = abs(est - target) / target
    return CriterionResult(
        "6b", "ratio-test radius of the W_-2 series", rel <= 0.05,
        {"estimate": est, "closed_form": target, "rel_diff": rel,
         "nearest_critical_value": oracle.critical_value_radius_wr(-2.0)},
        "within 5% of log(2)^2/2")


def check_radius_wr_0(scale: str = "small") -> CriterionResult:
    target = math.exp(-1.0)
    est = estimate_radius(series_wr(0, 80).coeffs)
    rel = abs(est - target) / target
    return CriterionResult(
        "6c", "ratio-test radius of the W_0 series", rel <= 0.05,
        {"estimate": est, "rel_diff": rel}, "within 5% of 1/e")


# -- 7 --------------------------------------------------------------------------

def check_integral(scale: str = "small") -> CriterionResult:
    worst_fixed = 0.0
    for r in (0.0, 1.0, 2.0):
        q = oracle.quadrature(lambda x: w_r(r, 0, x).value, 0.0, r + math.e)
        worst_fixed = max(worst_fixed, abs(q - (r / 2.0 + math.e - 1.0)))
    rng = random.Random(20240607)
    n = 20 if scale == "small" else 100
    worst_rand = 0.0
    for _ in range(n):
        r = rng.uniform(0.2, 3.0)
        lo, hi = sorted((rng.uniform(-5.0, 20.0), rng.uniform(-5.0, 20.0)))
        q = oracle.quadrature(lambda x: w_r(r, 0, x).value, lo, hi)
        d = w_r_antiderivative(r, 0, hi) - w_r_antiderivative(r, 0, lo)
        worst_rand = max(worst_rand, abs(q - d))
    return CriterionResult(
        "7", "integral of W_r", worst_fixed <= 1e-8 and worst_rand <= 1e-8,
        {"fixed_max_err": worst_fixed, "random_max_err": worst_rand, "intervals": n},
        "<= 1e-8 against quadrature")


# -- 8 --------------------------------------------------------------------------

def _sample_point(rng: random.Random, r: float):
    layout = classify(r)
    b = rng.choice(layout.branches)
    lo, hi = b.domain
    if math.isinf(lo) and math.isinf(hi):
        lo, hi = -20.0, 20.0
    elif math.isinf(hi):
        hi = lo + 20.0
    elif math.isinf(lo):
        lo = hi - 20.0
    x = rng.uniform(lo, hi)
    marks = list(layout.cuts) + [b.domain[0], b.domain[1]]
    if any(math.isfinite(m) and abs(x - m) < 1e-2 * max(1.0, abs(m)) for m in marks):
        return None
    return b.id, x


def check_derivative(scale: str = "small") -> CriterionResult:
    rng = random.Random(8)
    n = 200 if scale == "small" else 1000
    worst = 0.0
    done = 0
    while done < n:
        r = rng.uniform(-3.0, 3.0)
        if abs(r - INV_E2) < 1e-2:
            continue
        pt = _sample_point(rng, r)
        if pt is None:
            continue
        br, x = pt
        h = 1e-6 * max(1.0, abs(x))
        fd = (w_r(r, br, x + h).value - w_r(r, br, x - h).value) / (2.0 * h)
        d = w_r_derivative(r, br, x)
        worst = max(worst, abs(fd - d) / abs(d))
        done += 1
    worst0 = 0.0
    for r in SPECIAL_R:
        b = classify(r).branch_for_value(0.0)
        worst0 = max(worst0, abs(w_r_derivative(r, b.id, 0.0) - 1.0 / (1.0 + r)))
    return CriterionResult(
        "8", "derivative", worst <= 1e-5 and worst0 <= 1e-12,
        {"samples": n, "max_rel_fd_err": worst, "max_err_at_0": worst0},
        "finite differences <= 1e-5 relative; W_r'(0) = 1/(1+r) within 1e-12")


# -- 9 --------------------------------------------------------------------------

def check_asymptotics(scale: str = "small") -> CriterionResult:
    table = {}
    ok = True
    for r in (-2.0, 0.0, 5.0):
        errs = []
        for k in range(6, 11):
            x = 10.0 ** k
            w = w_r(r, 0, x).value
            errs.append(abs(w_r_asymptotic(r, x, "+inf") - w) / abs(w))
        table[f"r={r:g}"] = errs
        ok &= all(b < a for a, b in zip(errs, errs[1:])) and errs[-1] <= 0.01
    x = -1e9
    w = w_r(5.0, 0, x).value
    neg = abs(w - x / 5.0) / abs(x / 5.0)
    table["r=5,x=-1e9"] = neg
    ok &= neg <= 1e-6 and abs(w_r_asymptotic(5.0, x, "-inf") - x / 5.0) == 0.0
    return CriterionResult(
        "9", "asymptotics at +-inf", ok, table,
        "relative error decreasing in k and <= 1% at x=1e10; <= 1e-6 at -inf")


# -- 10 -------------------------------------------------------------------------

def _closest(values, target: float) -> float:
    return min(values, key=lambda v: abs(v - target))


def check_cross_family(scale: str = "small") -> CriterionResult:
    worst = 0.0
    se = series_wts(0, 1, 40)
    for a in (0.001, -0.001, 0.01, -0.01):
        x_series = float(eval_series(se, a).value)
        x_solve = _closest(solve_ts(0.0, 1.0, 1.0, a).roots, 0.0)
        # direct reduction: x = t + W_{-a}(-a) with t = 0, T = -1, c = 1
        x_wr = _closest([e.value for e in w_r_all(-a, -a)], 0.0)
        worst = max(worst, abs(x_series - x_solve), abs(x_series - x_wr), abs(x_solve - x_wr))
    worst_tt = 0.0
    st = series_wtt(0, 1, 40)
    for a in (0.001, 0.005):
        x_series = float(eval_series(st, a).value)
        x_solve = _closest(solve_tt(0.0, 1.0, a).roots, 0.0)
        worst_tt = max(worst_tt, abs(x_series - x_solve))
    return CriterionResult(
        "10", "cross-family consistency", worst <= 1e-9 and worst_tt <= 1e-9,
        {"wts_max_diff": worst, "wtt_max_diff": worst_tt}, "pairwise <= 1e-9")


# -- 11 -------------------------------------------------------------------------

def _tt_instance(rng: random.Random):
    while True:
        t1, t2 = rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)
        c1, c2 = tt_critical_points(t1, t2)
        vmax = math.exp(c1) * (c1 - t1) * (c1 - t2)
        vmin = math.exp(c2) * (c2 - t1) * (c2 - t2)
        scale = max(vmax, -vmin)
        a = rng.uniform(-1.5, 1.5) * scale
        # stay clear of tangencies and of a = 0, which a sign scan cannot resolve
        if abs(a) < 0.01 * scale or abs(a - vmax) < 0.02 * vmax or abs(a - vmin) < 0.02 * -vmin:
            continue
        return t1, t2, a, c1, c2


def check_root_counting(scale: str = "small") -> CriterionResult:
    rng = random.Random(11)
    n = 500 if scale == "small" else 2000
    mismatches = []
    max_count = 0
    for _ in range(n):
        t1, t2, a, c1, c2 = _tt_instance(rng)
        k = count_tt_solutions(t1, t2, a)
        solved = solve_tt(t1, t2, a).count
        g = lambda x: math.exp(x) * (x - t1) * (x - t2) - a
        scanned = oracle.sign_scan_roots(g, c1 - 60.0, c2 + 10.0, 10_000)
        max_count = max(max_count, k)
        if not k == solved == scanned:
            mismatches.append((t1, t2, a, k, solved, scanned))
    return CriterionResult(
        "11", "root counting for two upper parameters", not mismatches and max_count <= 3,
        {"instances": n, "mismatches": len(mismatches), "max_count": max_count},
        "count == solver == sign scan; count <= 3")


# -- 12 -------------------------------------------------------------------------

def check_bell(scale: str = "small") -> CriterionResult:
    ns = (25, 50, 100, 200)
    rel = []
    for n in ns:
        exact = math.log(oracle.bell_exact(n))
        rel.append(abs(oracle.bell_lovasz(n) - exact) / exact)
    ok = rel[2] <= 0.005 and all(b < a for a, b in zip(rel, rel[1:]))
    return CriterionResult(
        "12", "Bell number asymptotic", ok, {"n": list(ns), "rel_err": rel},
        "<= 0.5% at n=100, strictly decreasing")


CRITERIA: tuple[tuple[str, Callable[[str], CriterionResult]], ...] = (
    ("1", check_omega1),
    ("2", check_special_values),
    ("3", check_degenerate),
    ("4", check_classical_series),
    ("5", check_identities),
    ("6a", check_radius_wts),
    ("6b", check_radius_wr_m2),
    ("6c", check_radius_wr_0),
    ("7", check_integral),
    ("8", check_derivative),
    ("9", check_asymptotics),
    ("10", check_cross_family),
    ("11", check_root_counting),
    ("12", check_bell),
)

REPORT_BUDGET_SECONDS = 60.0


def run_criterion(cid: str, scale: str = "small") -> CriterionResult:
    for key, fn in CRITERIA:
        if key == cid:
            t0 = time.perf_counter()
            try:
                res = fn(scale)
            except Exception as exc:  # a crash is a failed criterion, not a crashed report
                res = CriterionResult(cid, fn.__name__, False, {"error": repr(exc)}, "no exception")
            res.seconds = time.perf_counter() - t0
            return res
    raise KeyError(cid)


def run_report(scale: str = "small") -> list[CriterionResult]:
    """Run every criterion in order; the last entry times the whole run."""
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    t0 = time.perf_counter()
    results = [run_criterion(cid, scale) for cid, _ in CRITERIA]
    total = time.perf_counter() - t0
    budget_ok = total <= REPORT_BUDGET_SECONDS if scale == "small" else True
    results.append(CriterionResult(
        "13", f"report --scale {scale} runtime", budget_ok,
        {"seconds": total}, f"<= {REPORT_BUDGET_SECONDS:g} s for the small scale",
        seconds=total))
    return results
