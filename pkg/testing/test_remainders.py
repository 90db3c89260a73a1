# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import pytest

from core.realctx import RealCtx
from core.remainders import (HAT_MINUS, MINUS, PLUS, TILDE_MINUS, hemi3_terms, remainder_hemi,
                             remainder_hemi_closed, remainder_hemi_features, remainder_sphere,
                             remainder_sphere_closed, sphere3_terms, sphere4_terms, up_lo)
from core.spectrum import HEMISPHERE, SPHERE, Manifold, chain, iter_orders, weyl_constant


@pytest.mark.parametrize("kind", [SPHERE, HEMISPHERE])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sandwich_is_sharp_at_chain_ends(kind, n, ctx):
    m = Manifold(kind, n)
    for k, c, _ in iter_orders(m, max(m.k_min, 1), 400):
        up, lo = up_lo(m, k, ctx)
        assert ctx.sign(up - c.lam, scale=c.lam) >= 0
        assert ctx.sign(c.lam - lo, scale=c.lam) >= 0
        if k == c.k_minus:
            assert ctx.sign(up - c.lam, scale=c.lam) == 0
        if k == c.k_plus:
            assert ctx.sign(c.lam - lo, scale=c.lam) == 0


def test_hemisphere_3_values(ctx):
    assert ctx.sign(remainder_hemi(3, TILDE_MINUS, 1, ctx) - 3, scale=3) == 0
    assert abs(remainder_hemi(3, TILDE_MINUS, 2, ctx) - 1.06383) < 1e-5
    assert abs(remainder_hemi(3, HAT_MINUS, 1, ctx) + 3.936168) < 1e-6


def test_hemisphere_4_values(ctx):
    assert ctx.sign(remainder_hemi(4, TILDE_MINUS, 1, ctx) - 4, scale=4) == 0
    assert abs(remainder_hemi(4, HAT_MINUS, 100, ctx) + 0.091) < 1e-3
    assert abs(remainder_hemi(4, HAT_MINUS, 2000, ctx) - 0.028) < 1e-3


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("which", [TILDE_MINUS, HAT_MINUS])
def test_hemisphere_closed_forms(n, which, ctx):
    for k in list(range(2, 60)) + [1000, 54321]:
        generic = remainder_hemi(n, which, k, ctx)
        closed = remainder_hemi_closed(n, which, k, ctx)
        assert ctx.is_close(generic, closed, scale=k)


def test_hemisphere_3_decomposition(ctx):
    terms = hemi3_terms(2, ctx)
    assert ctx.is_close(terms.tilde, remainder_hemi(3, TILDE_MINUS, 2, ctx))
    with pytest.raises(ValueError):
        hemi3_terms(1, ctx)


def test_hemisphere_3_tilde_decreases(ctx):
    values = [remainder_hemi(3, TILDE_MINUS, k, ctx) for k in range(2, 1500)]
    assert all(b < a for a, b in zip(values, values[1:]))


@pytest.mark.slow
def test_hemisphere_limits():
    ctx = RealCtx(256)
    assert abs(remainder_hemi(3, TILDE_MINUS, 10 ** 6, ctx) - ctx.mpf(2) / 3) < 1e-2
    assert abs(remainder_hemi(4, TILDE_MINUS, 10 ** 6, ctx)) < 1e-2


def test_hemisphere_4_hat_features(ctx):
    features = remainder_hemi_features(4, HAT_MINUS, 100, 2000, ctx)
    assert len(features.sign_changes) == 1
    low, high = features.sign_changes[0]
    assert remainder_hemi(4, HAT_MINUS, low, ctx) < 0 < remainder_hemi(4, HAT_MINUS, high, ctx)


@pytest.mark.slow
def test_hemisphere_4_hat_maximum(ctx):
    features = remainder_hemi_features(4, HAT_MINUS, 6000, 6900, ctx)
    assert abs(features.argmax - 6452) < 65
    assert abs(features.maximum - 0.0322267) < 1e-4


def test_hemisphere_remainder_arguments(ctx):
    with pytest.raises(ValueError):
        remainder_hemi(5, TILDE_MINUS, 3, ctx)
    with pytest.raises(ValueError):
        remainder_hemi(3, 'wide', 3, ctx)
    with pytest.raises(ValueError):
        remainder_hemi(3, TILDE_MINUS, 0, ctx)


def test_sphere_3_pieces(ctx):
    terms = sphere3_terms(1, ctx)
    assert abs(terms.A1 + terms.B1 - 0.0577504) < 1e-6
    assert abs(terms.A2 + terms.B2 - 0.00324951) < 1e-7
    assert abs(terms.A1 + terms.B1 + terms.A2 + terms.B2 - 0.0609999) < 1e-6
    with pytest.raises(ValueError):
        sphere3_terms(0, ctx)


@pytest.mark.parametrize("sign", [MINUS, PLUS])
def test_sphere_closed_forms(sign, ctx):
    for k in range(1, 80):
        assert ctx.is_close(remainder_sphere(3, sign, k, ctx), remainder_sphere_closed(3, sign, k, ctx), scale=k)
    for k in range(0, 80):
        assert ctx.is_close(remainder_sphere(4, sign, k, ctx), remainder_sphere_closed(4, sign, k, ctx), scale=k)


def test_sphere_3_monotone_and_negative(ctx):
    minus = [remainder_sphere(3, MINUS, k, ctx) for k in range(1, 800)]
    plus = [remainder_sphere(3, PLUS, k, ctx) for k in range(1, 800)]
    assert all(v < 0 for v in minus + plus)
    assert all(b < a for a, b in zip(minus, minus[1:]))
    assert all(b > a for a, b in zip(plus, plus[1:]))


def test_sphere_3_at_zero(ctx):
    cw = weyl_constant(Manifold(SPHERE, 3), ctx)
    assert ctx.sign(remainder_sphere(3, MINUS, 0, ctx)) == 0
    assert ctx.is_close(remainder_sphere(3, PLUS, 0, ctx), -cw + ctx.sqrt(cw))


def test_sphere_4_at_zero(ctx):
    minus, plus = sphere4_terms(0, ctx)
    assert ctx.sign(minus) == 0
    assert ctx.sign(remainder_sphere(4, MINUS, 0, ctx)) == 0
    root_cw = ctx.sqrt(12)
    expected = -root_cw + ctx.sqrt(root_cw)
    assert ctx.is_close(remainder_sphere(4, PLUS, 0, ctx), expected)
    assert ctx.is_close(plus, expected)


@pytest.mark.slow
def test_sphere_limits():
    ctx = RealCtx(256)
    assert abs(remainder_sphere(3, MINUS, 10 ** 6, ctx) + ctx.mpf(7) / 12) < 1e-2
    for value in sphere4_terms(10 ** 8, ctx):
        assert abs(value + ctx.mpf(3) / 2) < 1e-2


def test_sphere_remainder_arguments(ctx):
    with pytest.raises(ValueError):
        remainder_sphere(2, MINUS, 3, ctx)
    with pytest.raises(ValueError):
        remainder_sphere(3, 'sideways', 3, ctx)
    with pytest.raises(ValueError):
        up_lo(Manifold(SPHERE, 3), -1, ctx)
    assert chain(Manifold(SPHERE, 3), 0).lam == 0
