import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rootmult.errors import MatrixSingular
from rootmult.exactq import (ComplexRational as Q, MonicPoly, as_fraction, coeffs_from_power_sums,
                             exact_solve, mat_vec, power_sums_from_coeffs, power_sums_of_poly_roots)


def test_as_fraction():
    assert as_fraction("-3/4") == Fraction(-3, 4)
    assert as_fraction(" 12 ") == 12
    assert as_fraction("0.125") == Fraction(1, 8)
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_complex_rational_arithmetic():
    a, b = Q(1, 2), Q(Fraction(1, 3), -1)
    assert a * b == Q(Fraction(1, 3) + 2, Fraction(2, 3) - 1)
    assert (a / b) * b == a
    assert Q(0, 1) ** 4 == 1
    assert Q(2, 0) ** -2 == Fraction(1, 4)
    with pytest.raises(ZeroDivisionError):
        a / Q(0, 0)


def test_monic_poly():
    q = MonicPoly.from_dense(["1", "-3", "2"])
    assert q.degree == 2 and q.coefficients == (-3, 2)
    assert q(1) == 0 and q(2) == 0
    assert q.dense() == [1, -3, 2]
    with pytest.raises(ValueError):
        MonicPoly.from_dense([2, 1])
    t = MonicPoly((Fraction(-3),), 2)
    assert not t.is_full
    with pytest.raises(ValueError):
        t.constant_term


def test_power_sums_small_case():
    # (x-1)^2 (x-2): power sums 2*1 + 2, 2*1 + 4, 2 + 8
    c = [-4, 5, -2]
    assert power_sums_from_coeffs(c) == [4, 6, 10]
    assert coeffs_from_power_sums([4, 6, 10]) == c


def test_power_sums_of_roots_past_degree():
    q = MonicPoly.from_dense([1, -3, 2])
    assert power_sums_of_poly_roots(q, 5) == [3, 5, 9, 17, 33]
    # x^3 - 1: p_j = 3 when 3 | j
    q = MonicPoly.from_coefficients([0, 0, -1])
    assert power_sums_of_poly_roots(q, 6) == [0, 0, 3, 0, 0, 3]


def test_power_sums_against_sympy():
    x = sympy.symbols("x")
    rng = random.Random(3)
    for _ in range(20):
        roots = [sympy.Rational(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 6))]
        poly = sympy.Poly(sympy.prod([x - r for r in roots]), x)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()[1:]]
        expect = [sum(r ** j for r in roots) for j in range(1, len(roots) + 1)]
        got = power_sums_from_coeffs(coeffs)
        assert [sympy.Rational(g.numerator, g.denominator) for g in got] == expect


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(max_denominator=50, min_value=-100, max_value=100), min_size=1, max_size=12))
def test_newton_round_trip(c):
    assert coeffs_from_power_sums(power_sums_from_coeffs(c)) == c


def test_exact_solve_known_system():
    assert exact_solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert exact_solve([[0, 1], [1, 0]], [2, 3]) == [3, 2]
    assert exact_solve([], []) == []


def test_exact_solve_singular():
    with pytest.raises(MatrixSingular):
        exact_solve([[1, 2], [2, 4]], [1, 2])
    with pytest.raises(ZeroDivisionError):
        exact_solve([[0]], [1])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.randoms(use_true_random=False))
def test_exact_solve_against_sympy(n, rng):
    M = [[Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n)] for _ in range(n)]
    b = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n)]
    S = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M])
    if S.det() == 0:
        with pytest.raises(MatrixSingular):
            exact_solve(M, b)
        return
    x = exact_solve(M, b)
    assert mat_vec(M, x) == b
