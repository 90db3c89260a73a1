# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from fractions import Fraction

import pytest

from core.functionals import (evaluate_functional, omega_func, phi, phi_ladder, phi_limit, pol_j, pol_j_sign,
                              psi_func, r_prime, r_prime_digamma, R_func, theta, theta_closed_form_n2,
                              theta_derivative_sign, upsilon)
from core.spectrum import HEMISPHERE, SPHERE, Manifold, chain, weyl_constant


def test_upsilon_is_n_factorial_times_order():
    m = Manifold(HEMISPHERE, 3)
    for K in range(1, 30):
        c = chain(m, K)
        assert upsilon(3, K) == 6 * c.k_minus
        assert upsilon(3, K, c.mult) == 6 * c.k_plus
    with pytest.raises(ValueError):
        upsilon(3, 0)


def test_theta_n2_closed_form(ctx):
    for K in range(1, 60):
        assert ctx.is_close(theta(2, K, ctx), theta_closed_form_n2(K, ctx))


def test_theta_below_two_for_n2_5_6(ctx):
    for n in (2, 5, 6):
        assert all(theta(n, K, ctx) < 2 for K in range(1, 400))


def test_theta_n3_exceeds_two(ctx):
    assert max(theta(3, K, ctx) for K in range(1, 100)) > 2


def test_theta_derivative_sign_n2_at_one():
    assert theta_derivative_sign(2, 1) == 1


def test_phi_vanishes_for_n2(ctx):
    assert all(phi(2, K, ctx) == 0 for K in range(1, 200))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_phi_increases_to_its_limit(n, ctx256):
    ctx = ctx256
    values = [phi(n, K, ctx) for K in range(1, 202)]
    assert all(b > a for a, b in zip(values, values[1:]))
    limit = ctx.mpf(phi_limit(n))
    assert all(v < limit for v in values)
    assert abs(phi(n, 10 ** 4, ctx) - limit) < 1e-2


def test_phi_ladder_rows(ctx):
    rows = phi_ladder(4, 10, ctx)
    assert [r[0] for r in rows] == list(range(1, 11))
    assert rows[0][3]
    assert all(r[2] > 0 for r in rows)


def test_phi_limit():
    assert phi_limit(3) == Fraction(1, 3)
    assert phi_limit(2) == 0


@pytest.mark.parametrize("n", range(3, 10))
def test_r_prime_is_negative_and_matches_digamma(n, ctx):
    for K in [1, 2, 3, 10, 57, 1000, 10 ** 6]:
        value = r_prime(n, K, ctx)
        assert value < 0
        assert ctx.is_close(value, r_prime_digamma(n, K, ctx), scale=abs(value) * 2 ** 40)


def test_r_prime_matches_finite_difference(ctx):
    h = ctx.mpf(10) ** -20
    for n in (3, 5, 8):
        for K in (2, 7, 40):
            numeric = (R_func(n, ctx.mpf(K) + h, ctx) - R_func(n, ctx.mpf(K) - h, ctx)) / (2 * h)
            exact = r_prime(n, K, ctx)
            assert abs(numeric - exact) < 1e-6 * abs(exact)


def test_omega_and_psi_at_zero(ctx):
    for n in range(2, 7):
        assert omega_func(n, 0, ctx) == 1
        root_cw = ctx.sqrt(weyl_constant(Manifold(SPHERE, n), ctx))
        assert ctx.is_close(psi_func(n, 0, ctx), root_cw)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_psi_stays_below_root_weyl_constant(n, ctx):
    root_cw = ctx.sqrt(weyl_constant(Manifold(SPHERE, n), ctx))
    assert all(psi_func(n, K, ctx) < root_cw for K in range(1, 300))


def test_pol_j_sign_matches_value(ctx):
    for n in (2, 3, 4):
        m = Manifold(HEMISPHERE, n)
        for K in range(1, 15):
            c = chain(m, K)
            for j in range(1, c.mult + 1):
                assert pol_j_sign(m, K, j) == ctx.sign(pol_j(m, K, j, ctx), scale=c.lam)


def test_pol_j_rejects_offsets_outside_chain(ctx):
    m = Manifold(HEMISPHERE, 3)
    with pytest.raises(ValueError):
        pol_j(m, 2, 0, ctx)
    with pytest.raises(ValueError):
        pol_j(m, 2, chain(m, 2).mult + 1, ctx)


def test_evaluate_functional(ctx):
    value = evaluate_functional('Theta', 2, 5, ctx)
    assert value.name == 'Theta'
    assert value.ctx_bits == 192
    assert ctx.is_close(value.value, theta_closed_form_n2(5, ctx))
    assert evaluate_functional('PolJ', 3, 2, ctx, j=1).j == 1
    with pytest.raises(ValueError):
        evaluate_functional('PolJ', 3, 2, ctx)
    with pytest.raises(ValueError):
        evaluate_functional('Xi', 3, 2, ctx)


def _sign_changes(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@pytest.mark.parametrize("n", [2, 5, 6])
def test_theta_derivative_never_negative(n):
    signs = [theta_derivative_sign(n, K) for K in range(1, 1001)]
    assert set(signs) == {1}


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4])
def test_theta_derivative_turns_once(n):
    signs = [theta_derivative_sign(n, K) for K in range(1, 10 ** 4 + 1)]
    assert signs[0] == 1
    assert signs[-1] == -1
    assert _sign_changes(signs) == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_theta_tends_to_two(n, ctx256):
    assert abs(theta(n, 10 ** 6, ctx256) - 2) < 1e-2


def test_omega_on_sphere_2_is_one(ctx):
    assert all(ctx.is_close(omega_func(2, K, ctx), 1) for K in range(0, 200))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_omega_below_one_and_tends_to_one(n, ctx256):
    ctx = ctx256
    assert all(omega_func(n, K, ctx) < 1 for K in range(1, 300))
    assert abs(omega_func(n, 10 ** 6, ctx) - 1) < 1e-2


def test_psi_tends_to_one(ctx256):
    assert abs(psi_func(3, 10 ** 6, ctx256) - 1) < 1e-3


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_pol_j_strictly_decreases_along_chain(n, ctx):
    m = Manifold(HEMISPHERE, n)
    for K in range(1, 25):
        values = [pol_j(m, K, j, ctx) for j in range(1, chain(m, K).mult + 1)]
        assert all(b < a for a, b in zip(values, values[1:]))
