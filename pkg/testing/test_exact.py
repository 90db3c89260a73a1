# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from core.exact import (Polynomial, compare_power, count_real_roots, elementary_symmetric, exact_root,
                        integer_root, lambda_coefficient, mother_bracket, rising_factorial,
                        rising_factorial_poly, s_constant, s_hat, stirling_bracket, sturm_sequence,
                        taylor_partial_sum)

small_ints = st.integers(min_value=-50, max_value=50)
polys = st.lists(small_ints, min_size=1, max_size=7).map(Polynomial)


def to_sympy(poly):
    x = sympy.Symbol('x')
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                          for i, c in enumerate(poly.coefficients)), x)


def coeffs_from_sympy(expr):
    x = sympy.Symbol('x')
    if expr.is_zero:
        return ()
    return tuple(Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(expr, x).all_coeffs()))


def test_integer_root():
    assert integer_root(0, 3) == 0
    assert integer_root(26, 3) == 2
    assert integer_root(27, 3) == 3
    assert integer_root(10 ** 40, 4) == 10 ** 10
    assert integer_root(10 ** 40 - 1, 4) == 10 ** 10 - 1
    with pytest.raises(ValueError):
        integer_root(-1, 2)


def test_exact_root():
    assert exact_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert exact_root(12, 2) is None
    assert exact_root(144, 4) is None
    assert exact_root(Fraction(1, 16), 4) == Fraction(1, 2)


def test_compare_power():
    assert compare_power(2, 8, 3) == 0
    assert compare_power(2, 9, 3) == -1
    assert compare_power(3, 26, 3) == 1
    assert compare_power(-1, 0, 2) == -1
    with pytest.raises(ValueError):
        compare_power(1, -4, 2)


def test_polynomial_canonical_form():
    p = Polynomial((1, 2, 0, 0))
    assert p.coefficients == (1, 2)
    assert p.degree == 1
    assert Polynomial().degree == -1
    assert Polynomial((0, 0)).is_zero()
    assert p[5] == 0
    assert p == Polynomial((1, 2))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_polynomial_arithmetic_matches_sympy(a, b):
    x = sympy.Symbol('x')
    sa, sb = to_sympy(a).as_expr(), to_sympy(b).as_expr()
    assert (a * b).coefficients == coeffs_from_sympy(sympy.expand(sa * sb))
    assert (a + b).coefficients == coeffs_from_sympy(sympy.expand(sa + sb))
    assert (a - b).coefficients == coeffs_from_sympy(sympy.expand(sa - sb))
    assert a.compose(b).coefficients == coeffs_from_sympy(sympy.expand(sa.subs(x, sb)))


@settings(max_examples=60, deadline=None)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_polynomial_divmod(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@settings(max_examples=40, deadline=None)
@given(polys, st.integers(min_value=-5, max_value=5), st.integers(min_value=-20, max_value=20))
def test_shift_derivative_and_horner(p, a, x):
    assert p.shift(a)(x) == p(x + a)
    x_sym = sympy.Symbol('x')
    assert p.derivative().coefficients == coeffs_from_sympy(sympy.diff(to_sympy(p).as_expr(), x_sym))


def test_power_by_squaring():
    p = Polynomial((1, 1))
    assert (p ** 5).coefficients == tuple(math.comb(5, i) for i in range(6))
    assert p ** 0 == Polynomial.constant(1)
    with pytest.raises(ValueError):
        p ** -1


def test_sturm_root_counts():
    p = Polynomial.from_roots([1, 2, 3, -4])
    assert count_real_roots(p, 0, 10) == 3
    assert count_real_roots(p, Fraction(3, 2)) == 2
    assert count_real_roots(p, -10) == 4
    # repeated roots are counted once
    q = Polynomial.from_roots([1, 1, 2])
    assert count_real_roots(q, 0) == 2
    # x^2 + 1 has no real roots
    assert count_real_roots(Polynomial((1, 0, 1)), -100) == 0
    with pytest.raises(ValueError):
        sturm_sequence(Polynomial())


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=-30, max_value=30), min_size=1, max_size=6, unique=True))
def test_sturm_matches_sympy(roots):
    p = Polynomial.from_roots(roots) * Polynomial((1, 0, 1))
    # half-integer endpoints keep roots off the boundary
    a, b = Fraction(-21, 2), Fraction(41, 2)
    expected = to_sympy(p).count_roots(sympy.Rational(-21, 2), sympy.Rational(41, 2))
    assert count_real_roots(p, a, b) == expected


def test_polynomial_is_backed_by_sympy():
    p = Polynomial((Fraction(1, 2), 0, 3))
    assert isinstance(p.poly, sympy.Poly)
    assert p.poly.get_domain() == sympy.QQ
    assert p.poly.all_coeffs() == [3, 0, sympy.Rational(1, 2)]
    assert Polynomial(p.poly) == p
    assert all(isinstance(c, Fraction) for c in p.coefficients)
    assert p(Fraction(1, 3)) == Fraction(1, 2) + Fraction(1, 3)


def test_sturm_sequence_is_sympy_chain():
    p = Polynomial.from_roots([1, 1, 2, -3])
    chain = sturm_sequence(p)
    assert [q.poly for q in chain] == p.poly.sturm()
    assert count_real_roots(p, -10, 10) == p.poly.sqf_part().count_roots(-10, 10) == 3


def test_real_argument_evaluation(ctx):
    p = Polynomial((Fraction(1, 3), -2, 1))
    value = p(ctx.mpf(Fraction(5, 2)))
    assert ctx.is_close(value, ctx.mpf(p(Fraction(5, 2))))
    assert ctx.is_close(p.evaluate_real(ctx, Fraction(5, 2)), value)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_s_constant_closed_forms(j):
    for m in range(j, 40):
        assert s_constant(j, m) == elementary_symmetric(range(1, m + 1), j)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=-20, max_value=20), min_size=0, max_size=8))
def test_elementary_symmetric_are_product_coefficients(values):
    # prod (x + v) = sum_j e_j x**(N-j)
    N = len(values)
    poly = Polynomial.from_roots([-v for v in values])
    for j in range(N + 1):
        assert elementary_symmetric(values, j) == poly[N - j]


def test_elementary_symmetric_range():
    with pytest.raises(ValueError):
        elementary_symmetric([1, 2], 3)


def test_s_hat():
    assert s_hat(4, 0) == 1
    assert s_hat(4, 1) == 6
    assert s_hat(4, 3) == 6
    assert s_hat(4, 4) == 24
    assert s_hat(4, 5) == 0


@pytest.mark.parametrize("n", range(0, 8))
def test_rising_factorial_poly(n):
    poly = rising_factorial_poly(n)
    for K in range(-3, 12):
        assert poly(K) == rising_factorial(K, n)
    for j in range(0, n):
        assert poly[n - j] == s_hat(n, j)


def test_lambda_coefficient_arguments():
    assert lambda_coefficient(2, 4, 1) == Fraction(1, 2)
    assert lambda_coefficient(1, 2, 2) == Fraction(-1, 8)
    with pytest.raises(ValueError):
        lambda_coefficient(3, 4, 1)
    with pytest.raises(ValueError):
        lambda_coefficient(1, 1, 1)
    with pytest.raises(ValueError):
        lambda_coefficient(1, 3, 0)


positive_x = st.fractions(min_value=Fraction(1, 1000), max_value=10, max_denominator=1000)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([1, 2]), st.integers(min_value=3, max_value=8), st.sampled_from([2, 4, 6]), positive_x)
def test_taylor_brackets(a, n, l, x):
    # compare_power(q, r, n) is the sign of q - r**(1/n)
    target = (1 + x) ** a
    assert compare_power(taylor_partial_sum(a, n, l, x), target, n) <= 0
    assert compare_power(taylor_partial_sum(a, n, l - 1, x), target, n) >= 0
    if x < 1:
        assert compare_power(taylor_partial_sum(a, n, l, x, alternating=True), (1 - x) ** a, n) >= 0


def test_stirling_bracket(ctx):
    for n in range(1, 61):
        lower, upper = stirling_bracket(n, ctx)
        assert lower <= math.factorial(n) <= upper


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=2, max_value=10), st.floats(min_value=0.01, max_value=1e4))
def test_mother_bracket(n, K):
    from core.realctx import RealCtx
    ctx = RealCtx(192)
    lower, middle, upper = mother_bracket(n, K, ctx)
    assert ctx.sign(middle - lower, scale=upper) >= 0
    assert ctx.sign(upper - middle, scale=upper) >= 0
