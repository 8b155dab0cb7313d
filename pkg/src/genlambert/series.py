"""
Power series around a = 0 (or x = 0) for the generalized Lambert functions.

Three families are covered:

* ``series_wr``  -- W_r(x), coefficients from the M_k^(n) polynomials;
* ``series_wts`` -- W(t; s; a), coefficients from derivatives of Laguerre
  polynomials;
* ``series_wtt`` -- W(t1, t2; ; a), coefficients from Bessel polynomials.

The rational part of every coefficient is computed exactly (floats are
converted to their exact binary value first), so alternating sums with huge
terms do not cancel catastrophically. Only the final exponential factor is
applied in floating point.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .combinatorics import a_coefficient, m_eval, m_polynomial
from .errors import DomainError

__all__ = [
    "SeriesExpansion",
    "SeriesValue",
    "laguerre",
    "laguerre_derivative",
    "bessel_poly",
    "series_wr",
    "series_wts",
    "series_wtt",
    "wts_rational_coefficient",
    "wtt_rational_coefficient",
    "radius_wts",
    "critical_radius_wts",
    "estimate_radius",
    "eval_series",
    "EXACT_MAX_TERMS",
]

EXACT_MAX_TERMS = 30


@dataclass(frozen=True)
class SeriesExpansion:
    """Truncated power series ``constant_term + sum_n coeffs[n-1] * z**n``."""

    kind: str
    params: tuple
    constant_term: float | Fraction
    coeffs: tuple
    radius: float | None = None
    branch_hint: int | None = None
    formula: str = ""
    center: float = 0.0

    @property
    def n_terms(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class SeriesValue:
    value: float | Fraction
    n_terms: int
    slow_convergence: bool


def _exact(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("boolean is not a number here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return Fraction(float(x))


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _scaled(q: Fraction, log_scale: float) -> float:
    """q * exp(log_scale) without overflowing on the way."""
    if q == 0:
        return 0.0
    mag = math.log(abs(q.numerator)) - math.log(q.denominator) + log_scale
    if mag > 709.7:
        raise OverflowError("series coefficient exceeds the double range; use fewer terms")
    return math.copysign(math.exp(mag), q)


# -- orthogonal and Bessel polynomials ---------------------------------------

def laguerre(n: int, alpha, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence.

    Exact when ``alpha`` and ``x`` are ints or Fractions.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if _is_rational(alpha) and _is_rational(x):
        alpha, x = Fraction(alpha), Fraction(x)
    prev, cur = 0, 1
    if n == 0:
        return cur
    prev, cur = cur, 1 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_derivative(n: int, x):
    """d/dx L_n(x), differentiating the explicit sum term by term."""
    if n < 0:
        raise ValueError("n must be non-negative")
    exact = _is_rational(x)
    if exact:
        x = Fraction(x)
    total = Fraction(0) if exact else 0.0
    xp = 1
    for k in range(1, n + 1):
        den = Fraction(factorial(k - 1)) if exact else factorial(k - 1)
        term = comb(n, k) * xp / den
        total += -term if k % 2 else term
        xp *= x
    return total


def bessel_poly(n: int, z):
    """Bessel polynomial y_n(z) = sum_k (n+k)! / (k! (n-k)!) (z/2)^k."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if _is_rational(z):
        half = Fraction(z) / 2
    else:
        half = z / 2
    total = 0
    p = 1
    for k in range(n + 1):
        total += factorial(n + k) // (factorial(k) * factorial(n - k)) * p
        p *= half
    return total


# -- W_r ------------------------------------------------------------------------

def _wr_rational_coefficient(rq: Fraction, n: int) -> Fraction:
    y = 1 / (rq + 1)
    if n == 1:
        return y
    return m_eval(m_polynomial(n, n - 1), y) * y ** n / factorial(n)


def _wr_radius(r: float) -> float | None:
    if r == 0:
        return math.exp(-1.0)
    if r == -2:
        # nearest singularity: the critical value f_{-2}(W(2e) - 1)
        from .classic import lambert_w
        g = lambert_w(0, 2.0 * math.e) - 1.0
        return abs(g * math.exp(g) - 2.0 * g)
    return None


def series_wr(r, n_terms: int) -> SeriesExpansion:
    """Taylor series of W_r around x = 0.

    Coefficient of x^n is M_{n-1}^(n)(1/(r+1)) / ((r+1)^n n!), and 1/(r+1)
    for n = 1. Exact Fractions are returned for rational ``r`` up to
    ``EXACT_MAX_TERMS`` terms.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    rq = _exact(r)
    if rq == -1:
        raise DomainError("the Taylor series of W_r does not exist at r = -1")
    keep_exact = _is_rational(r)
    coeffs = []
    for n in range(1, n_terms + 1):
        c = _wr_rational_coefficient(rq, n)
        coeffs.append(c if keep_exact and n <= EXACT_MAX_TERMS else float(c))
    return SeriesExpansion(
        kind="wr",
        params=(r,),
        constant_term=Fraction(0) if keep_exact else 0.0,
        coeffs=tuple(coeffs),
        radius=_wr_radius(float(r)),
        branch_hint=0 if rq > -1 else -1,
        formula="M_{n-1}^{(n)}(1/(r+1)) / ((r+1)^n n!)",
    )


# -- W(t; s; a) -------------------------------------------------------------------

def wts_rational_coefficient(T, n: int, form: str = "laguerre") -> Fraction:
    """Coefficient of a^n in W(t; s; a) with the factor e^(-n t) removed.

    ``form`` selects the route:

    ``"laguerre"``   T L_{n-1}^(1)(nT) / n, Laguerre recurrence;
    ``"derivative"`` -T L_n'(nT) / n, derivative of the explicit sum;
    ``"triangle"``   sum_k A_{n,k} (-1)^(k-1) T^k / n!.
    """
    Tq = _exact(T)
    if form == "laguerre":
        return Tq * laguerre(n - 1, 1, n * Tq) / n
    if form == "derivative":
        return -Tq * laguerre_derivative(n, n * Tq) / n
    if form == "triangle":
        s = sum(a_coefficient(n, k) * (-1) ** (k - 1) * Tq ** k for k in range(1, n + 1))
        return Fraction(s) / factorial(n)
    raise ValueError(f"unknown form {form!r}")


def series_wts(t, s, n_terms: int) -> SeriesExpansion:
    """Taylor series of W(t; s; a) around a = 0, with T = t - s.

    Coefficient of a^n is -T L_n'(nT) e^(-nt) / n.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    T = _exact(t) - _exact(s)
    if T == 0:
        raise DomainError("t = s reduces to the logarithm; use log(a) instead")
    keep_exact = _is_rational(t) and _is_rational(s) and t == 0
    coeffs = []
    for n in range(1, n_terms + 1):
        q = wts_rational_coefficient(T, n)
        if keep_exact and n <= EXACT_MAX_TERMS:
            coeffs.append(q)
        else:
            coeffs.append(_scaled(q, -n * float(t)))
    radius = critical_radius_wts(t, s) if float(t) < float(s) else None
    return SeriesExpansion(
        kind="wts",
        params=(t, s),
        constant_term=t,
        coeffs=tuple(coeffs),
        radius=radius,
        branch_hint=None,
        formula="-T L_n'(nT) e^{-nt} / n, T = t - s",
    )


def radius_wts(t, s) -> float:
    """Closed-form radius e^((t+s)/2 - 2 sqrt(s-t)), stated for t < s."""
    t, s = float(t), float(s)
    if not t < s:
        raise DomainError("the closed-form radius is only available for t < s")
    return math.exp(0.5 * (t + s) - 2.0 * math.sqrt(s - t))


def critical_radius_wts(t, s) -> float:
    """Distance from a = 0 to the nearest critical value of e^x (x-t)/(x-s).

    Critical points are x = t + u with u^2 + T u + T = 0. For t < s both are
    real and the nearer critical value is where the series stops converging.
    """
    T = float(t) - float(s)
    if T == 0.0:
        raise DomainError("t = s has no critical points")
    disc = cmath.sqrt(T * T - 4.0 * T)
    vals = []
    for u in ((-T + disc) / 2.0, (-T - disc) / 2.0):
        vals.append(abs(cmath.exp(float(t) + u) * u / (u + T)))
    return min(vals)


# -- W(t1, t2; ; a) ----------------------------------------------------------------

def wtt_rational_coefficient(T, n: int) -> Fraction:
    """Coefficient of a^n in W(t1, t2; ; a) without the factor e^(-n t1)."""
    Tq = _exact(T)
    return -(Fraction(n) / Tq) ** n * bessel_poly(n - 1, Fraction(-2) / (n * Tq)) / (n * factorial(n))


def series_wtt(t1, t2, n_terms: int) -> SeriesExpansion:
    """Taylor series of W(t1, t2; ; a) around a = 0, T = t2 - t1.

    Term n is -(a n e^(-t1) / T)^n B_{n-1}(-2 / (nT)) / (n n!).
    """
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    T = _exact(t2) - _exact(t1)
    if T == 0:
        raise DomainError("t1 = t2 puts T = 0 in a denominator")
    keep_exact = _is_rational(t1) and _is_rational(t2) and t1 == 0
    coeffs = []
    for n in range(1, n_terms + 1):
        q = wtt_rational_coefficient(T, n)
        if keep_exact and n <= EXACT_MAX_TERMS:
            coeffs.append(q)
        else:
            coeffs.append(_scaled(q, -n * float(t1)))
    return SeriesExpansion(
        kind="wtt",
        params=(t1, t2),
        constant_term=t1,
        coeffs=tuple(coeffs),
        radius=None,
        formula="-(n e^{-t1}/T)^n B_{n-1}(-2/(nT)) / (n n!), T = t2 - t1",
    )


# -- numerics on coefficient lists ------------------------------------------------

def estimate_radius(coeffs, window: int = 10) -> float:
    """Ratio-test radius estimate, averaging the last ``window`` ratios |c_n / c_(n+1)|."""
    coeffs = list(coeffs)
    tail = coeffs[-20:]
    if len(tail) < 20 or any(c == 0 for c in tail):
        raise ValueError("need at least 20 nonzero trailing coefficients")
    ratios = [abs(Fraction(coeffs[i]) / Fraction(coeffs[i + 1])) if _is_rational(coeffs[i])
              else abs(coeffs[i] / coeffs[i + 1])
              for i in range(len(coeffs) - window - 1, len(coeffs) - 1)]
    return float(sum(float(q) for q in ratios) / len(ratios))


def eval_series(se: SeriesExpansion, x, n_terms: int | None = None) -> SeriesValue:
    """Horner evaluation of the first ``n_terms`` terms.

    ``slow_convergence`` is set when a radius is known and |x| > 0.9 radius.
    """
    n = se.n_terms if n_terms is None else n_terms
    if not 0 <= n <= se.n_terms:
        raise ValueError(f"series has {se.n_terms} terms, asked for {n}")
    exact = _is_rational(x) and all(_is_rational(c) for c in se.coeffs[:n]) \
        and _is_rational(se.constant_term)
    acc = 0
    for c in reversed(se.coeffs[:n]):
        acc = (acc + c) * x if exact else (acc + float(c)) * x
    value = se.constant_term + acc if exact else float(se.constant_term) + acc
    slow = se.radius is not None and abs(float(x)) > 0.9 * se.radius
    return SeriesValue(value, n, slow)
