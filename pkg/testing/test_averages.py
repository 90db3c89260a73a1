# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import math
from fractions import Fraction

import pytest

from core.averages import (average_floor, chain_average, chain_average_lower_bound, expected_min_chain_K,
                           hemi2_sum_profile, j_crit, j_dagger, j_star, lemma_f_coefficients, lemma_f_verdict,
                           min_polya_chain_K, phi_kr, phi_kr_bound, total_average, total_average_divergence_witness,
                           total_average_exact)
from core.exact import Polynomial, rising_factorial_poly
from core.functionals import pol_j_sign
from core.spectrum import HEMISPHERE, SPHERE, Manifold, chain, eigenvalue


def test_lemma_f_constant_offset():
    f = lemma_f_coefficients(3, Polynomial.constant(1))
    assert (f.F1, f.F0, f.F_1) == (2, Fraction(8, 3), -4)
    assert f.verdict() == 1


def test_lemma_f_second_to_last_offset():
    # m(K) - 1 on the 3-hemisphere, m(K) = K(K+1)/2
    j_poly = Polynomial((-1, Fraction(1, 2), Fraction(1, 2)))
    f = lemma_f_coefficients(3, j_poly)
    assert f.F1 == 0
    assert f.F0 == Fraction(-1, 3)
    assert lemma_f_verdict(3, j_poly) == -1


def test_lemma_f_rejects_high_degree_offsets():
    with pytest.raises(ValueError):
        lemma_f_coefficients(3, Polynomial((0, 0, 0, 1)))


def test_average_floor():
    assert average_floor(3) == Fraction(-16, 3)


def test_j_star_and_dagger():
    assert j_star(3, 4) == chain(Manifold(HEMISPHERE, 3), 4).mult
    assert j_dagger(3, 4) == 10 - Fraction(4, 12)
    with pytest.raises(ValueError):
        j_dagger(3, 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_j_crit_separates_polya_signs(n, ctx):
    m = Manifold(HEMISPHERE, n)
    for K in range(2, 20):
        crit = j_crit(n, K, ctx)
        for j in range(1, chain(m, K).mult + 1):
            assert (pol_j_sign(m, K, j) >= 0) == (j <= crit.value)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_chain_average_above_lower_bound(n, ctx):
    m = Manifold(HEMISPHERE, n)
    for K in range(2, 40):
        assert chain_average(m, K, ctx) >= ctx.mpf(chain_average_lower_bound(n, K))


def test_sphere_2_chain_averages_vanish(ctx):
    m = Manifold(SPHERE, 2)
    assert all(chain_average(m, K, ctx) == 0 for K in range(0, 300))


def test_hemisphere_2_total_average_at_chain_ends():
    m = Manifold(HEMISPHERE, 2)
    for K in range(1, 300):
        k = chain(m, K).k_plus
        assert total_average_exact(m, k) == Fraction(2, 3) * (K - 1)


def test_sphere_2_total_average_profile():
    m = Manifold(SPHERE, 2)
    for K in range(1, 40):
        for r in range(0, 2 * K + 1):
            assert total_average_exact(m, K * K + r) == phi_kr(K, r)


def test_phi_kr_bound(ctx):
    assert phi_kr(10, 10) == Fraction(1, 2)
    assert abs(phi_kr_bound(10, ctx) - 0.5046) < 1e-4
    for K in range(1, 60):
        bound = phi_kr_bound(K, ctx)
        assert all(ctx.mpf(phi_kr(K, r)) <= bound for r in range(0, 2 * K + 1))
    with pytest.raises(ValueError):
        phi_kr(3, 7)


def test_hemi2_sum_profile():
    m = Manifold(HEMISPHERE, 2)
    running = {}
    total, k = 0, 0
    while k < 600:
        k += 1
        total += eigenvalue(m, k) - 2 * k
        running[k] = total
    for K in range(1, 34):
        for r in range(1, K + 1):
            k = K * (K - 1) // 2 + r
            if k in running:
                assert hemi2_sum_profile(K, r) == running[k]


def test_total_average_real_matches_exact(ctx):
    m = Manifold(HEMISPHERE, 2)
    for k in (1, 2, 17, 500):
        assert ctx.is_close(total_average(m, k, ctx), ctx.mpf(total_average_exact(m, k)))
    with pytest.raises(ValueError):
        total_average_exact(Manifold(HEMISPHERE, 3), 5)
    with pytest.raises(ValueError):
        total_average(m, 0, ctx)


def test_total_average_divergence_witness(ctx):
    witness = total_average_divergence_witness(3, 100, 2000, ctx)
    assert witness.determined
    assert witness.value > 100
    m = Manifold(HEMISPHERE, 3)
    assert witness.k == chain(m, witness.K).k_plus
    assert ctx.is_close(total_average(m, witness.k, ctx), witness.value)


@pytest.mark.parametrize("n, expected", [(3, 2), (4, 2), (5, 2), (6, 3)])
def test_min_polya_chain_average_K(n, expected, ctx):
    result = min_polya_chain_K(n, 'chain_average', 60, ctx)
    assert result.determined
    assert result.K == expected


@pytest.mark.slow
def test_min_polya_chain_average_K_n10(ctx):
    assert min_polya_chain_K(10, 'chain_average', 60, ctx).K == 10


def test_min_polya_chain_K_modes(ctx):
    assert min_polya_chain_K(9, 'lowest_order', 200).K == 3
    with pytest.raises(ValueError):
        min_polya_chain_K(3, 'median', 10, ctx)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 9])
def test_expected_min_chain_matches_scan(n, ctx):
    lowest = expected_min_chain_K(n, 'lowest_order')
    assert min_polya_chain_K(n, 'lowest_order', 200).K == lowest
    average = expected_min_chain_K(n, 'chain_average')
    if average is not None:
        assert min_polya_chain_K(n, 'chain_average', 60, ctx).K == average


def test_expected_min_chain_unknown():
    assert expected_min_chain_K(11, 'lowest_order') is None
    assert expected_min_chain_K(7, 'chain_average') is None
    with pytest.raises(ValueError):
        expected_min_chain_K(3, 'median')


def test_j_dagger_approaches_j_crit(ctx):
    gap = abs(ctx.mpf(j_dagger(5, 1000)) - j_crit(5, 1000, ctx).value)
    assert gap < 0.1


def _multiplicity_poly(n):
    # m(K) = K^((n-1) rising) / (n-1)!
    return rising_factorial_poly(n - 1) * Fraction(1, math.factorial(n - 1))


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("j", [1, 2])
def test_lemma_f_signs_at_sampled_chains(n, j):
    m = Manifold(HEMISPHERE, n)
    assert lemma_f_verdict(n, Polynomial.constant(j)) == 1
    assert lemma_f_verdict(n, _multiplicity_poly(n) - j) == -1
    for K in (10 ** 2, 10 ** 3, 10 ** 4):
        mult = chain(m, K).mult
        assert _multiplicity_poly(n)(K) == mult
        assert pol_j_sign(m, K, j) == 1
        assert pol_j_sign(m, K, mult - j) == -1
