# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math
from fractions import Fraction

import pytest
import sympy

from core.certificates import (certify_theta_increasing, min_polya_lowest_order_K, mr_taylor_certificate,
                               phi_n_constant, q_n_poly, q_n_value, q_theta_poly)
from core.exact import s_hat
from core.functionals import theta_derivative_sign
from core.spectrum import HEMISPHERE, Manifold, chain, polya_sign


def test_q_theta_n2():
    poly = q_theta_poly(2).poly
    assert poly.coefficients[:5] == (96, 120, 72, 44, 8)


def test_q_theta_n3():
    poly = q_theta_poly(3).poly
    assert poly[0] == 287208
    assert poly[8] == 3537
    assert poly[10] == -54


def test_q_theta_n4():
    poly = q_theta_poly(4).poly
    assert poly[0] == 43236633600
    assert poly[17] == -2560


@pytest.mark.parametrize("n", [5, 6])
def test_q_theta_all_positive(n):
    cert = q_theta_poly(n)
    assert cert.all_positive()
    assert set(cert.signs()) == {1}
    if n == 5:
        assert cert.poly[0] == 510382908135014400


def test_q_theta_matches_sympy_expansion():
    y = sympy.Symbol('y')
    n = 3
    H = sympy.expand(sympy.prod([y + i for i in range(n)]) + math.factorial(n))
    dH = sympy.diff(H, y)
    D = (n * (n + 1) + 2 * n * y) * H - (n + (n + 1) * y + y ** 2) * dH
    expected = sympy.Poly(sympy.expand(D ** n - dH ** n * H ** 2), y).all_coeffs()
    assert tuple(int(c) for c in reversed(expected)) == q_theta_poly(n).poly.coefficients


@pytest.mark.parametrize("n", [3, 5])
def test_q_theta_sign_is_theta_derivative_sign(n):
    poly = q_theta_poly(n).poly
    for K in range(1, 60):
        value = poly(K - 1)
        assert (value > 0) - (value < 0) == theta_derivative_sign(n, K)


def test_q_n_values():
    assert q_n_value(2, 2) == 20
    assert q_n_value(3, 2) == 368
    for n in range(2, 8):
        poly = q_n_poly(n).poly
        for K in range(1, 30):
            assert poly(K) == q_n_value(n, K)


@pytest.mark.parametrize("n", range(2, 41))
def test_phi_sign_ladder(n):
    phi_n = phi_n_constant(n)
    assert phi_n == -q_n_value(n, 2)
    assert (phi_n < 0) == (n <= 8)
    assert phi_n != 0


@pytest.mark.parametrize("n", [3, 4, 6, 9])
def test_q_n_decides_polya_at_lowest_order(n):
    m = Manifold(HEMISPHERE, n)
    for K in range(1, 40):
        c = chain(m, K)
        assert (q_n_value(n, K) >= 0) == (polya_sign(m, c.k_minus) >= 0)


@pytest.mark.parametrize("n, expected", [(3, 2), (4, 2), (5, 2), (6, 2), (7, 2), (8, 2), (9, 3)])
def test_min_polya_lowest_order_K(n, expected):
    result = min_polya_lowest_order_K(n, 1000)
    assert result.determined
    assert result.K == expected


@pytest.mark.parametrize("n", range(5, 13))
def test_taylor_certificate_leading_coefficients(n):
    cert = mr_taylor_certificate(n, 3)
    M = cert.metadata['M']
    assert M[n + 1] == 0
    assert M[n] == 0
    assert M[n - 1] == Fraction(s_hat(n, 1) * (n + 4), 3) - n ** 2
    assert M[n - 1] == Fraction(n * (n - 4) * (n + 1), 6)
    assert cert.metadata['determined']
    assert cert.poly.degree == n - 1


def test_taylor_certificate_order_must_be_odd():
    with pytest.raises(ValueError):
        mr_taylor_certificate(5, 2)
    with pytest.raises(ValueError):
        mr_taylor_certificate(5, -1)
    assert mr_taylor_certificate(5, 1).metadata['l'] == 1


def test_taylor_certificate_undetermined_in_dimension_three():
    assert not mr_taylor_certificate(3, 3).metadata['determined']
    assert not certify_theta_increasing(3).determined


def test_taylor_witness_bounds_the_remainders():
    cert = mr_taylor_certificate(6, 3)
    meta = cert.metadata
    y = meta['y_star']
    assert cert.poly(y) > meta['R_abs_sum']
    assert meta['K_witness'] == y + 1


def test_theta_increasing_from_first_chain_for_n5():
    result = certify_theta_increasing(5)
    assert result.determined
    assert result.K_from == 1
    assert all(s == 1 for _, s in result.signs)
