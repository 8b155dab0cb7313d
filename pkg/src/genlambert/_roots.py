"""Bracketed Newton iteration with a bisection safeguard."""
from __future__ import annotations

import math
from typing import Callable

from .errors import ConvergenceError

_EPS = 2.220446049250313e-16


def safeguarded_newton(g: Callable[[float], float], dg: Callable[[float], float],
                       lo: float, hi: float, increasing: bool,
                       y0: float | None = None, max_iter: int = 400,
                       min_slope: float = 1e-12) -> tuple[float, int]:
    """Root of a monotone ``g`` on [lo, hi].

    ``g(lo)`` and ``g(hi)`` must straddle zero in the order implied by
    ``increasing``. Newton steps that leave the bracket, or are taken where
    ``|g'|`` is below ``min_slope``, are replaced by bisection, as is
    every fourth step if the step length has not halved since the last check.

    Returns ``(root, iterations)``.
    """
    y = 0.5 * (lo + hi) if y0 is None or not lo <= y0 <= hi else y0
    ref_step = math.inf
    for it in range(1, max_iter + 1):
        v = g(y)
        if v == 0.0:
            return y, it
        if (v > 0.0) == increasing:
            hi = y
        else:
            lo = y
        d = dg(y)
        if d != 0.0 and abs(d) >= min_slope and math.isfinite(v) and math.isfinite(d):
            y_new = y - v / d
            if abs(y_new - y) <= 4.0 * _EPS * max(abs(y), 1e-300):
                return y_new, it
            if not lo < y_new < hi:
                y_new = 0.5 * (lo + hi)
            elif it % 4 == 0:
                # Newton crawling through an exponential region: force progress
                step = abs(y_new - y)
                if step > 0.5 * ref_step:
                    y_new = 0.5 * (lo + hi)
                ref_step = step
        else:
            y_new = 0.5 * (lo + hi)
        tol = 4.0 * _EPS * max(abs(y_new), 1e-300)
        if abs(y_new - y) <= tol or hi - lo <= tol:
            return y_new, it
        y = y_new
    raise ConvergenceError("safeguarded Newton did not converge")
