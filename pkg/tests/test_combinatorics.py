from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from genlambert.combinatorics import (
    a_coefficient,
    a_triangle,
    c_coefficient,
    c_triangle_by_recurrence,
    falling_factorial,
    fubini,
    m_eval,
    m_polynomial,
    rising_factorial,
    stirling2,
    stirling2_row,
)
from genlambert.oracle import (
    enumerate_barred,
    enumerate_ordered_partitions,
    enumerate_partitions,
)


def test_stirling_small_values():
    assert stirling2(4, 2) == 7
    assert stirling2(0, 0) == 1
    assert stirling2(5, 0) == 0
    assert stirling2(3, 5) == 0
    assert stirling2(-1, 0) == 0
    assert stirling2_row(4) == (0, 1, 7, 6, 1)


@pytest.mark.parametrize("n", range(1, 11))
def test_stirling_matches_partition_enumeration(n):
    counts = enumerate_partitions(n)
    assert {k: stirling2(n, k) for k in range(1, n + 1)} == counts


@given(st.integers(0, 60))
def test_weighted_stirling_row_sum_is_fubini(n):
    # sum_k S(n,k) k! equals the Fubini number
    assert sum(factorial(k) * s for k, s in enumerate(stirling2_row(n))) == fubini(n)


def test_stirling_row_rejects_negative():
    with pytest.raises(ValueError):
        stirling2_row(-1)


@given(st.integers(-20, 20), st.integers(0, 12))
def test_rising_falling_relation(x, k):
    assert rising_factorial(x, k) == (-1) ** k * falling_factorial(-x, k)


def test_factorials_are_generic():
    assert rising_factorial(Fraction(1, 2), 3) == Fraction(15, 8)
    assert falling_factorial(5, 5) == 120
    with pytest.raises(ValueError):
        rising_factorial(1, -1)


def test_a_triangle_printed_rows():
    tri = a_triangle(7)
    assert tri.entry(3, 2) == 18
    assert tri.entry(7, 7) == 117649
    # sums of the printed rows
    assert tri.row_sums() == [1, 4, 33, 424, 7445, 166176, 4505053]


@given(st.integers(1, 40))
def test_a_diagonal_and_first_column(n):
    assert a_coefficient(n, n) == n ** (n - 1)
    assert a_coefficient(n, 1) == factorial(n)


def test_a_coefficient_range():
    with pytest.raises(ValueError):
        a_coefficient(3, 4)
    with pytest.raises(ValueError):
        a_coefficient(0, 1)


def test_c_coefficient_examples():
    assert c_coefficient(3, 5, 5) == -2520
    # recurrence 2*C(2,2) - (2+2-1)*C(1,2) = 2*6 + 3*2 with n = 2
    assert c_coefficient(2, 2, 3) == 18
    with pytest.raises(ValueError):
        c_coefficient(2, 0, 3)
    with pytest.raises(ValueError):
        c_coefficient(2, 4, 3)


@pytest.mark.parametrize("n", range(1, 9))
def test_c_recurrence_equals_closed_form(n):
    tri = c_triangle_by_recurrence(n, 12)
    for k in range(1, 13):
        assert tri.rows[k - 1] == tuple(c_coefficient(n, i, k) for i in range(1, k + 1))


def test_c_recurrence_first_row_and_growth():
    assert c_triangle_by_recurrence(4, 1).rows == ((-4,),)
    assert len(c_triangle_by_recurrence(4, 6).rows) == 6
    # a shorter request after a longer one returns a prefix
    assert c_triangle_by_recurrence(4, 2).rows == c_triangle_by_recurrence(4, 6).rows[:2]


@given(st.integers(1, 30), st.integers(1, 30))
def test_m_at_one(n, k):
    assert m_polynomial(n, k)(1) == (-n) ** k


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("k", range(1, 7))
def test_m_at_minus_one_counts_barred_arrangements(n, k):
    assert m_polynomial(n, k)(-1) == enumerate_barred(k, n - 1)


@pytest.mark.parametrize("k", range(1, 9))
def test_m_one_at_minus_one_is_fubini(k):
    assert m_polynomial(1, k)(-1) == fubini(k)


def test_m_eval_exact_on_fractions():
    p = m_polynomial(3, 4)
    y = Fraction(2, 7)
    direct = sum(c * y ** i for i, c in enumerate(p.coeffs, 1))
    assert m_eval(p, y) == direct
    assert isinstance(m_eval(p, y), Fraction)


def test_fubini_values():
    assert [fubini(n) for n in range(6)] == [1, 1, 3, 13, 75, 541]
    for n in range(1, 8):
        assert fubini(n) == enumerate_ordered_partitions(n)


@given(st.integers(1, 25), st.integers(1, 25))
def test_a_coefficient_closed_form(n, k):
    if k > n:
        return
    assert a_coefficient(n, k) * factorial(k - 1) == factorial(n - 1) * n ** (k - 1) * comb(n, k)
