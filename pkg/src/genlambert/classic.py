"""Real branches W_0 and W_{-1} of the classical Lambert W function."""
from __future__ import annotations

import math

from .errors import BranchError, ConvergenceError, DomainError

__all__ = ["lambert_w", "omega_constant", "BRANCH_POINT"]

BRANCH_POINT = -math.exp(-1.0)
# -1/e - BRANCH_POINT, so x + 1/e can be formed without cancellation
_BRANCH_POINT_LO = 1.2428753672788363e-17
_EPS = 2.220446049250313e-16
_MAX_ITER = 100


# w + 1 = sum_k b_k p^k around the branch point
_BP_SERIES = (1.0, -1.0 / 3.0, 11.0 / 72.0, -43.0 / 540.0, 769.0 / 17280.0,
              -221.0 / 8505.0, 680863.0 / 43545600.0, -1963.0 / 204120.0,
              226287557.0 / 37623398400.0, -5776369.0 / 1515591000.0,
              169709463197.0 / 69528040243200.0)
_BP_DIRECT = 1e-2  # |p| below which the series is used as the answer


def _branch_point_p(x: float, sign: int) -> float:
    """p = +-sqrt(2(ex + 1)) with ex + 1 formed from the exact gap to -1/e."""
    gap = (x - BRANCH_POINT) - _BRANCH_POINT_LO
    return sign * math.sqrt(max(2.0 * math.e * gap, 0.0))


def _branch_point_series(p: float, terms: int) -> float:
    acc = 0.0
    for b in reversed(_BP_SERIES[:terms]):
        acc = (acc + b) * p
    return -1.0 + acc


def _branch_point_guess(x: float, sign: int) -> float:
    return _branch_point_series(_branch_point_p(x, sign), 4)


_NEAR_GAP = 0.1  # x + 1/e below which w + 1 is solved for directly


def _g_near(v: float) -> float:
    """(v - 1) e^v + 1 = sum_{k>=2} (k-1) v^k / k!, without cancellation."""
    term = v
    total = 0.0
    for k in range(2, 60):
        term *= v / k
        total += (k - 1) * term
        if abs(term) * k <= 1e-17 * abs(total):
            break
    return total


def _solve_near_branch_point(x: float, branch: int) -> float:
    """Newton on g(w + 1) = e (x + 1/e), so the tiny gap keeps its digits."""
    sign = 1 if branch == 0 else -1
    target = math.e * ((x - BRANCH_POINT) - _BRANCH_POINT_LO)
    p = _branch_point_p(x, sign)
    if abs(p) < _BP_DIRECT:
        return _branch_point_series(p, len(_BP_SERIES))
    v = _branch_point_series(p, len(_BP_SERIES)) + 1.0
    lo, hi = (0.0, 1.0) if branch == 0 else (-1.2, 0.0)
    v = min(max(v, lo), hi)
    seen = set()
    for _ in range(_MAX_ITER):
        f = _g_near(v) - target
        if f == 0.0 or v in seen:
            return v - 1.0
        seen.add(v)
        # g grows away from 0 on both sides
        if (f > 0.0) == (branch == 0):
            hi = v
        else:
            lo = v
        d = v * math.exp(v)
        v_new = v - f / d if d != 0.0 else math.nan
        if not lo <= v_new <= hi:
            v_new = 0.5 * (lo + hi)
        if abs(v_new - v) <= 2.0 * _EPS * abs(v_new):
            return v_new - 1.0
        v = v_new
    raise ConvergenceError(f"lambert_w({branch}, {x!r}) did not converge near -1/e")


def _initial_guess(branch: int, x: float) -> float:
    if branch == 0:
        if x < -0.25:
            return _branch_point_guess(x, 1)
        if x < 3.0:
            # Pade-like start good on [-0.25, 3]
            return math.log1p(x) * (1.0 - math.log1p(math.log1p(x)) / (2.0 + math.log1p(x)))
        lx = math.log(x)
        return lx - math.log(lx) + math.log(lx) / lx
    if x < -0.25:
        return _branch_point_guess(x, -1)
    lx = math.log(-x)
    llx = math.log(-lx)
    return lx - llx + llx / lx


def _bracket(branch: int, x: float) -> tuple[float, float]:
    if branch == 0:
        if x <= 0.0:
            return -1.0, 0.0
        hi = max(1.0, math.log(x) + 1.0)
        return 0.0, hi
    lo = 2.0 * math.log(-x) - 2.0
    return lo, -1.0


def lambert_w(branch: int, x: float) -> float:
    """Real Lambert W on branch 0 (w >= -1) or branch -1 (w <= -1).

    Halley iteration on w e^w - x from a branch-specific start, with a
    bisection fallback whenever a step leaves the bracket of the branch.
    """
    x = float(x)
    if branch not in (0, -1):
        raise BranchError(f"classical W has real branches 0 and -1, not {branch}")
    if math.isnan(x):
        raise DomainError("x is NaN")
    # arguments within rounding of -1/e snap to the branch point
    if x < BRANCH_POINT:
        if BRANCH_POINT - x <= 4 * _EPS * -BRANCH_POINT:
            return -1.0
        raise DomainError(f"x={x!r} < -1/e is outside the real domain of W_{branch}")
    if branch == -1 and x >= 0.0:
        raise DomainError(f"W_-1 is defined on [-1/e, 0), got x={x!r}")
    if math.isinf(x):
        return math.inf
    if x == 0.0:
        return 0.0
    if x == BRANCH_POINT:
        return -1.0

    if (x - BRANCH_POINT) - _BRANCH_POINT_LO < _NEAR_GAP:
        # w e^w - x cancels near -1/e; work with w + 1 instead
        return _solve_near_branch_point(x, branch)

    if branch == -1 and x > -1e-280:
        return _wm1_tiny(x)

    lo, hi = _bracket(branch, x)
    w = min(max(_initial_guess(branch, x), lo), hi)
    best, best_f = math.nan, math.inf
    seen = set()
    for _ in range(_MAX_ITER):
        ew = math.exp(w) if w < 709.0 else math.inf
        f = w * ew - x
        if f == 0.0:
            return w
        if abs(f) < best_f:
            best, best_f = w, abs(f)
        if w in seen:
            # cycling between neighbouring floats: residual is at rounding level
            return best
        seen.add(w)
        # bracket update: w e^w is increasing on branch 0, decreasing on -1
        if (f > 0.0) == (branch == 0):
            hi = w
        else:
            lo = w
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1) if wp1 != 0.0 else 0.0
        w_new = w - f / denom if denom != 0.0 and math.isfinite(f) else math.nan
        if not lo <= w_new <= hi:
            w_new = 0.5 * (lo + hi)
        if abs(w_new - w) <= 4.0 * _EPS * max(abs(w_new), 1e-300):
            return w_new
        w = w_new
        if hi - lo <= 4.0 * _EPS * max(abs(lo), abs(hi)):
            return w
    raise ConvergenceError(f"lambert_w({branch}, {x!r}) did not converge")


def _wm1_tiny(x: float) -> float:
    """W_-1 for tiny |x| from w + log(-w) = log(-x); e^w would underflow."""
    target = math.log(-x)
    w = target - math.log(-target)
    for _ in range(_MAX_ITER):
        h = w + math.log(-w) - target
        w_new = w - h / (1.0 + 1.0 / w)
        if abs(w_new - w) <= 2.0 * _EPS * abs(w_new):
            return w_new
        w = w_new
    raise ConvergenceError(f"lambert_w(-1, {x!r}) did not converge")


def omega_constant() -> float:
    """The omega constant W_0(1), the root of w e^w = 1."""
    return lambert_w(0, 1.0)
