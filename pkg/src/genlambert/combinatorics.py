"""
Exact integer sequences behind the Taylor coefficients of the r-Lambert function.

Everything here works with Python integers (or ``Fraction`` where a rational
argument is passed in), so identities can be checked with ``==``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb, factorial
from typing import Literal

__all__ = [
    "stirling2",
    "stirling2_row",
    "rising_factorial",
    "falling_factorial",
    "a_coefficient",
    "a_triangle",
    "c_coefficient",
    "c_triangle_by_recurrence",
    "CoeffTriangle",
    "MPolynomial",
    "m_polynomial",
    "m_eval",
    "fubini",
]


_s2_rows: list[tuple[int, ...]] = [(1,)]
_s2_lock = threading.Lock()


def stirling2_row(n: int) -> tuple[int, ...]:
    """Row ``n`` of the Stirling triangle, ``(S(n,0), ..., S(n,n))``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n < len(_s2_rows):
        return _s2_rows[n]
    with _s2_lock:
        while len(_s2_rows) <= n:
            prev = _s2_rows[-1]
            m = len(prev)
            row = [0] * (m + 1)
            for k in range(1, m + 1):
                row[k] = prev[k - 1] + (k * prev[k] if k < m else 0)
            _s2_rows.append(tuple(row))
    return _s2_rows[n]


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k).

    Counts partitions of an n-set into k non-empty blocks. Indices outside
    ``0 <= k <= n`` give 0.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return stirling2_row(n)[k]


def rising_factorial(x, k: int):
    """x (x+1) ... (x+k-1); the empty product is 1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    p = 1
    for j in range(k):
        p *= x + j
    return p


def falling_factorial(x, k: int):
    """x (x-1) ... (x-k+1); the empty product is 1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    p = 1
    for j in range(k):
        p *= x - j
    return p


@dataclass(frozen=True)
class CoeffTriangle:
    """A slice of an exact coefficient triangle.

    ``rows[j]`` is row ``j + 1``; row ``k`` holds entries for index 1..k.
    ``n`` is the fixed upper parameter of a C-triangle and ``None`` for A.
    """

    kind: Literal["A", "C"]
    rows: tuple[tuple[int, ...], ...]
    n: int | None = None

    def entry(self, row: int, col: int) -> int:
        return self.rows[row - 1][col - 1]

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]


def a_coefficient(n: int, k: int) -> int:
    """A_{n,k} = (n-1)! n^(k-1) binom(n,k) / (k-1)!.

    These are the integers in the expansion of the (n-1)-th derivative of
    (w - s) e^(-w) used by the one-upper/one-lower series.
    """
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"A_(n,k) needs 1 <= k <= n, got n={n}, k={k}")
    return factorial(n - 1) // factorial(k - 1) * n ** (k - 1) * comb(n, k)


def a_triangle(n_max: int) -> CoeffTriangle:
    rows = tuple(tuple(a_coefficient(n, k) for k in range(1, n + 1))
                 for n in range(1, n_max + 1))
    return CoeffTriangle("A", rows)


def c_coefficient(n: int, i: int, k: int) -> int:
    """Closed form C_{i,k}^(n) = (-1)^i n^(rising i) S(k, i)."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= i <= k:
        raise ValueError(f"C_(i,k) needs 1 <= i <= k, got i={i}, k={k}")
    sign = -1 if i % 2 else 1
    return sign * rising_factorial(n, i) * stirling2(k, i)


_c_tables: dict[int, list[tuple[int, ...]]] = {}
_c_lock = threading.Lock()


def c_triangle_by_recurrence(n: int, k_max: int) -> CoeffTriangle:
    """Build rows 1..k_max of the C^(n) triangle from its recurrence.

    C_{1,k} = -n and C_{i,k+1} = i C_{i,k} - (n+i-1) C_{i-1,k}. This route
    never touches Stirling numbers, so it can be checked against
    :func:`c_coefficient`.
    """
    if n < 1 or k_max < 1:
        raise ValueError("n and k_max must be positive")
    with _c_lock:
        rows = _c_tables.setdefault(n, [(-n,)])
        while len(rows) < k_max:
            prev = rows[-1]
            k = len(prev)
            new = []
            for i in range(1, k + 2):
                cur = prev[i - 1] if i <= k else 0
                left = prev[i - 2] if i >= 2 else 0
                new.append(i * cur - (n + i - 1) * left)
            rows.append(tuple(new))
        return CoeffTriangle("C", tuple(rows[:k_max]), n)


@dataclass(frozen=True)
class MPolynomial:
    """M_k^(n)(y) = sum_i n^(rising i) S(k,i) (-y)^i.

    ``coeffs[i-1]`` is the coefficient of y^i, i = 1..k; there is no
    constant term.
    """

    n: int
    k: int
    coeffs: tuple[int, ...]

    def __call__(self, y):
        return m_eval(self, y)


def m_polynomial(n: int, k: int) -> MPolynomial:
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    return MPolynomial(n, k, tuple(c_coefficient(n, i, k) for i in range(1, k + 1)))


def m_eval(p: MPolynomial, y):
    """Horner evaluation; exact for int/Fraction input."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * y + c
    return acc * y


def fubini(n: int) -> int:
    """Ordered Bell number F_n = sum_k k! S(n,k), with F_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    row = stirling2_row(n)
    return sum(factorial(k) * row[k] for k in range(1, n + 1))

