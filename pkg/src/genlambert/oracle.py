"""
Independent checks: brute-force enumeration, extended-precision arithmetic
and numerical quadrature. Nothing here calls the closed forms it is meant to
validate.
"""
from __future__ import annotations

import math
import warnings
from collections import Counter
from itertools import combinations_with_replacement, permutations
from typing import Callable, Iterator

import mpmath
from scipy import integrate

from .classic import lambert_w
from .errors import ConvergenceError

__all__ = [
    "set_partitions",
    "enumerate_partitions",
    "enumerate_ordered_partitions",
    "enumerate_barred",
    "lagrange_coefficient_oracle",
    "quadrature",
    "bell_exact",
    "bell_lovasz",
    "highprec_residual",
    "critical_value_radius_wr",
    "critical_value_radius_wts",
    "sign_scan_roots",
]

MAX_PARTITION_N = 10
MAX_BARRED_ELEMENTS = 7
MAX_BARS = 5


def set_partitions(n: int) -> Iterator[list[list[int]]]:
    """All set partitions of {0, ..., n-1} via restricted growth strings."""
    if n == 0:
        yield []
        return

    def grow(i: int, blocks: list[list[int]]):
        if i == n:
            yield [b[:] for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from grow(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from grow(i + 1, blocks)
        blocks.pop()

    yield from grow(0, [])


def enumerate_partitions(n: int) -> dict[int, int]:
    """Count set partitions of an n-set by number of blocks, by listing them all."""
    if not 1 <= n <= MAX_PARTITION_N:
        raise ValueError(f"enumeration limited to 1 <= n <= {MAX_PARTITION_N}")
    counts: Counter[int] = Counter()
    for p in set_partitions(n):
        counts[len(p)] += 1
    return dict(sorted(counts.items()))


def enumerate_ordered_partitions(n: int) -> int:
    """Number of preferential arrangements (ordered set partitions) of n elements."""
    if not 0 <= n <= MAX_BARRED_ELEMENTS:
        raise ValueError(f"enumeration limited to n <= {MAX_BARRED_ELEMENTS}")
    return sum(1 for p in set_partitions(n) for _ in permutations(p))


def enumerate_barred(n_elements: int, bars: int) -> int:
    """Count barred preferential arrangements by listing them.

    Each ordered set partition with j blocks has j + 1 gaps; ``bars``
    indistinguishable bars go into those gaps with repetition.
    """
    if not 1 <= n_elements <= MAX_BARRED_ELEMENTS:
        raise ValueError(f"n_elements must be in 1..{MAX_BARRED_ELEMENTS}")
    if not 0 <= bars <= MAX_BARS:
        raise ValueError(f"bars must be in 0..{MAX_BARS}")
    total = 0
    for p in set_partitions(n_elements):
        j = len(p)
        n_orders = sum(1 for _ in permutations(range(j)))
        n_placements = sum(1 for _ in combinations_with_replacement(range(j + 1), bars))
        total += n_orders * n_placements
    return total


def lagrange_coefficient_oracle(r: float, n: int, dps: int = 40) -> float:
    """n-th Taylor coefficient of W_r from the Lagrange inversion formula.

    (1/n!) d^(n-1)/dw^(n-1) (1 / (e^w + r))^n at w = 0, differentiated
    numerically in ``dps``-digit arithmetic.
    """
    if r == -1:
        raise ValueError("r = -1 has no Taylor expansion at 0")
    if not 1 <= n <= 12:
        raise ValueError("oracle supports 1 <= n <= 12")
    with mpmath.workdps(dps):
        rr = mpmath.mpf(r)
        f = lambda w: (1 / (mpmath.exp(w) + rr)) ** n
        d = f(0) if n == 1 else mpmath.diff(f, 0, n - 1)
        return float(d / mpmath.factorial(n))


def quadrature(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10) -> float:
    """Adaptive Gauss-Kronrod quadrature to absolute tolerance ``tol``."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(f, lo, hi, epsabs=tol, epsrel=0.0, limit=500)
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"quadrature did not converge: {exc}") from exc
    if err > tol:
        raise ConvergenceError(f"quadrature error estimate {err:g} exceeds {tol:g}")
    return val


_bell_cache = [1]


def bell_exact(n: int) -> int:
    """Bell number B_n from the Bell triangle."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n < len(_bell_cache):
        return _bell_cache[n]
    row = [1]
    for _ in range(n):
        new = [row[-1]]
        for v in row:
            new.append(new[-1] + v)
        row = new
        if len(_bell_cache) < len(row):
            _bell_cache.append(row[0])
    return _bell_cache[n]


def bell_lovasz(n: int) -> float:
    """log of n^(-1/2) (n/W(n))^(n+1/2) exp(n/W(n) - n - 1)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    w = lambert_w(0, float(n))
    return -0.5 * math.log(n) + (n + 0.5) * math.log(n / w) + n / w - n - 1.0


def highprec_residual(kind: str, params: dict, x: float, y: float, dps: int = 40) -> float:
    """Residual of a forward map at ``y`` evaluated with ``dps`` digits.

    kinds: ``"w"`` (y e^y - x), ``"w_r"`` (y e^y + r y - x),
    ``"ts"`` (e^(cy)(y-t) - x (y-s)), ``"shifted"`` ((y-t)(e^(cy) + r) - x),
    ``"tt"`` (e^y (y-t1)(y-t2) - x). For the equation solvers ``x`` is the
    right-hand side a.
    """
    with mpmath.workdps(dps):
        X, Y = mpmath.mpf(x), mpmath.mpf(y)
        P = {k: mpmath.mpf(v) for k, v in params.items()}
        if kind == "w":
            v = Y * mpmath.exp(Y) - X
        elif kind == "w_r":
            v = Y * mpmath.exp(Y) + P["r"] * Y - X
        elif kind == "ts":
            c = P.get("c", mpmath.mpf(1))
            v = mpmath.exp(c * Y) * (Y - P["t"]) - X * (Y - P["s"])
        elif kind == "shifted":
            c = P.get("c", mpmath.mpf(1))
            v = (Y - P["t"]) * (mpmath.exp(c * Y) + P["r"]) - X
        elif kind == "tt":
            v = mpmath.exp(Y) * (Y - P["t1"]) * (Y - P["t2"]) - X
        else:
            raise ValueError(f"unknown kind {kind!r}")
        return float(abs(v))


def critical_value_radius_wr(r: float, branches: range = range(-4, 5)) -> float:
    """Smallest |f_r(c)| over complex critical points c = W_k(-re) - 1.

    For the series of W_r at 0 this is where convergence stops whenever the
    nearest critical value lies on the series' sheet (checked for r = 0, -2).
    """
    with mpmath.workdps(30):
        rr = mpmath.mpf(r)
        best = mpmath.inf
        for k in branches:
            c = mpmath.lambertw(-rr * mpmath.e, k) - 1
            best = min(best, abs(c * mpmath.exp(c) + rr * c))
        return float(best)


def critical_value_radius_wts(t: float, s: float, dps: int = 30) -> float:
    """Smallest |g(c)| over critical points of g(x) = e^x (x-t)/(x-s).

    The critical points are found numerically with mpmath (derivative by
    numerical differentiation, roots by secant iteration from a spread of
    complex starts), not from the quadratic they satisfy.
    """
    with mpmath.workdps(dps):
        T, S = mpmath.mpf(t), mpmath.mpf(s)
        g = lambda x: mpmath.exp(x) * (x - T) / (x - S)
        dg = lambda x: mpmath.diff(g, x)
        found = []
        starts = [T + k * (S - T) / 4 for k in range(-8, 13)] + [T + 1j, T - 1j]
        for x0 in starts:
            try:
                c = mpmath.findroot(dg, mpmath.mpmathify(x0))
            except (ValueError, ZeroDivisionError):
                continue
            if abs(dg(c)) < mpmath.mpf(10) ** (-dps // 2) * abs(g(c)) and \
                    all(abs(c - d) > 1e-10 for d in found):
                found.append(c)
        if not found:
            raise ConvergenceError("no critical point located")
        return float(min(abs(g(c)) for c in found))


def sign_scan_roots(g: Callable[[float], float], lo: float, hi: float, n: int = 10_000) -> int:
    """Number of sign changes of ``g`` on an n-point uniform grid."""
    h = (hi - lo) / (n - 1)
    prev = g(lo)
    count = 1 if prev == 0.0 else 0
    for i in range(1, n):
        cur = g(lo + i * h)
        if cur == 0.0:
            count += 1
        elif prev != 0.0 and (cur > 0.0) != (prev > 0.0):
            count += 1
        prev = cur
    return count
