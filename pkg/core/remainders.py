# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Sandwich bounds and remainder functions.

``lo(k) <= lambda_k <= up(k)`` where up and lo interpolate the chain values
through the real inverse of sigma; up is sharp at ``k_minus`` and lo at
``k_plus``. A remainder is what separates up (or lo) from a two-term Weyl
expression:

* hemisphere, ``tilde_minus``: ``up(k) - C_W (k-1)**(2/n) - 2 sqrt(C_W) (k-1)**(1/n)``
* hemisphere, ``hat_minus``: ``up(k) - C_W k**(2/n) - 2 sqrt(C_W) k**(1/n)``
* sphere, ``minus``: ``up(k) - C_W k**(2/n) - sqrt(C_W) k**(1/n)``
* sphere, ``plus``: ``lo(k) - C_W (k+1)**(2/n) + sqrt(C_W) (k+1)**(1/n)``

The ``*_closed`` variants evaluate the same quantities through radical
formulas in dimensions 2, 3 and 4 and serve as cross-checks.
'''

import logging
from dataclasses import dataclass
from fractions import Fraction

from utils import print_rank
from .spectrum import HEMISPHERE, SPHERE, Manifold, sigma_inverse, weyl_constant

TILDE_MINUS = 'tilde_minus'
HAT_MINUS = 'hat_minus'
MINUS = 'minus'
PLUS = 'plus'


def up_lo(m, k, ctx):
    '''``(up(k), lo(k))`` on the sphere (``k >= 0``) or hemisphere (``k >= 1``).'''
    n = m.n
    if m.kind == SPHERE:
        if k < 0:
            raise ValueError(f'sphere orders start at 0, got {k}')
        s_up = sigma_inverse(m, k, ctx)
        s_lo = sigma_inverse(m, k + 1, ctx)
    elif m.kind == HEMISPHERE:
        if k < 1:
            raise ValueError(f'hemisphere orders start at 1, got {k}')
        s_up = sigma_inverse(m, k - 1, ctx)
        s_lo = sigma_inverse(m, k, ctx)
    else:
        raise ValueError(f'no sandwich bounds on {m}')
    return (s_up + 1) * (s_up + n), s_lo * (s_lo + n - 1)


def weyl_terms(m, x, ctx):
    '''``(C_W x**(2/n), sqrt(C_W) x**(1/n))``.'''
    if x == 0:
        return ctx.mp.zero, ctx.mp.zero
    u = ctx.root(m.weyl_base * x, m.n)
    return u * u, u


def remainder_hemi(n, which, k, ctx):
    '''Hemisphere remainder ``tilde_minus`` or ``hat_minus`` at order ``k >= 1``.

    Raises:
        ValueError: n outside {2, 3, 4}, unknown ``which`` or ``k < 1``.
    '''
    if n not in (2, 3, 4):
        raise ValueError(f'hemisphere remainders are defined for n in 2, 3, 4, got {n}')
    m = Manifold(HEMISPHERE, n)
    up, _ = up_lo(m, k, ctx)
    if which == TILDE_MINUS:
        two, one = weyl_terms(m, k - 1, ctx)
    elif which == HAT_MINUS:
        two, one = weyl_terms(m, k, ctx)
    else:
        raise ValueError(f'cannot use hemisphere remainder {which}')
    return up - two - 2 * one


@dataclass(frozen=True)
class Hemi3Terms:
    '''Pieces of the 3-hemisphere remainder at ``x = k-1``; tilde is ``A + B + 2/3 + C + D``.'''
    A: object
    B: object
    C: object
    D: object

    @property
    def tilde(self):
        return self.A + self.B + self.A.context.mpf(2) / 3 + self.C + self.D


def hemi3_terms(k, ctx):
    '''Requires ``k >= 2`` so that the Cardano discriminant is nonnegative.'''
    if k < 2:
        raise ValueError(f'hemi3_terms needs k >= 2, got {k}')
    mp = ctx.mp
    x = ctx.mpf(k - 1)
    cw = weyl_constant(Manifold(HEMISPHERE, 3), ctx)
    v = (1 + mp.sqrt(1 - 3 / (27 * x) ** 2)) / 2
    A = -cw * ctx.rpow(x, Fraction(2, 3)) * (1 - ctx.rpow(v, Fraction(2, 3)))
    B = -2 * mp.sqrt(cw) * mp.cbrt(x) * (1 - mp.cbrt(v))
    L = 27 * x + mp.sqrt(729 * x ** 2 - 3)
    D = 1 / (ctx.rpow(9, Fraction(1, 3)) * ctx.rpow(L, Fraction(2, 3)))
    C = 2 * mp.sqrt(D)
    return Hemi3Terms(A, B, C, D)


def remainder_hemi_closed(n, which, k, ctx):
    '''Radical forms of :func:`remainder_hemi`; n = 3 needs ``k >= 2``.'''
    mp = ctx.mp
    kf = ctx.mpf(k)
    if n == 2:
        r2 = 2 * mp.sqrt(2)
        if which == TILDE_MINUS:
            return 1 + r2 * (mp.sqrt(kf - 1 + ctx.mpf(Fraction(1, 8))) - mp.sqrt(kf - 1))
        elif which == HAT_MINUS:
            return r2 * mp.sqrt(kf - ctx.mpf(Fraction(7, 8))) - 1 - r2 * mp.sqrt(kf)
    elif n == 3:
        terms = hemi3_terms(k, ctx)
        if which == TILDE_MINUS:
            return terms.tilde
        elif which == HAT_MINUS:
            cw = weyl_constant(Manifold(HEMISPHERE, 3), ctx)
            D = terms.D
            return (-cw * ctx.rpow(kf, Fraction(2, 3)) - 2 * mp.sqrt(cw) * mp.cbrt(kf)
                    + ctx.mpf(Fraction(2, 3)) + D + 1 / (9 * D) + 2 * (mp.sqrt(D) + 1 / (3 * mp.sqrt(D))))
    elif n == 4:
        if which == TILDE_MINUS:
            x = 24 * (kf - 1)
            T = mp.sqrt(x + 1)
            S = mp.sqrt(5 + 4 * T)
            return T + S - mp.sqrt(x) - 2 * ctx.rpow(x, Fraction(1, 4))
        elif which == HAT_MINUS:
            T = mp.sqrt(24 * kf - 23)
            return mp.sqrt(5 + 4 * T) + T - mp.sqrt(24 * kf) - 2 * ctx.rpow(24 * kf, Fraction(1, 4))
    else:
        raise ValueError(f'hemisphere remainders are defined for n in 2, 3, 4, got {n}')
    raise ValueError(f'cannot use hemisphere remainder {which}')


@dataclass
class RemainderFeatures:
    '''Sign changes and maximum of a remainder sequence over a scanned range.'''
    n: int
    which: str
    k_range: tuple
    sign_changes: list
    argmax: int
    maximum: object


def remainder_hemi_features(n, which, k_lo, k_hi, ctx):
    '''Scan ``k_lo..k_hi`` and report sign changes ``(k, k+1)`` and the maximizing order.'''
    sign_changes = []
    best_k, best = None, None
    previous = None
    for k in range(k_lo, k_hi + 1):
        value = remainder_hemi(n, which, k, ctx)
        if previous is not None and (previous < 0) != (value < 0):
            sign_changes.append((k - 1, k))
        if best is None or value > best:
            best_k, best = k, value
        previous = value
    print_rank(f'remainder {which} n={n} on [{k_lo}, {k_hi}]: max {best} at k={best_k}, '
               f'sign changes {sign_changes}', loglevel=logging.DEBUG)
    return RemainderFeatures(n, which, (k_lo, k_hi), sign_changes, best_k, best)


def remainder_sphere(n, sign, k, ctx):
    '''Sphere remainder ``minus`` (upper side) or ``plus`` (lower side) at ``k >= 0``.

    Raises:
        ValueError: n outside {3, 4}, unknown ``sign`` or ``k < 0``.
    '''
    if n not in (3, 4):
        raise ValueError(f'sphere remainders are defined for n in 3, 4, got {n}')
    m = Manifold(SPHERE, n)
    up, lo = up_lo(m, k, ctx)
    if sign == MINUS:
        two, one = weyl_terms(m, k, ctx)
        return up - two - one
    elif sign == PLUS:
        two, one = weyl_terms(m, k + 1, ctx)
        return lo - two + one
    else:
        raise ValueError(f'cannot use sphere remainder {sign}')


@dataclass(frozen=True)
class Sphere3Terms:
    '''Pieces of the 3-sphere remainders.

    ``minus = A2 + A1 - 7/12 + B1 + B2`` at k and
    ``plus = D2 + D1 - 7/12 + E1 + E2`` with the D and E terms taken at k+1.
    '''
    A1: object
    A2: object
    B1: object
    B2: object
    D1: object
    D2: object
    E1: object
    E2: object

    @property
    def minus(self):
        return self.A2 + self.A1 - self.A1.context.mpf(7) / 12 + self.B1 + self.B2

    @property
    def plus(self):
        return self.D2 + self.D1 - self.D1.context.mpf(7) / 12 + self.E1 + self.E2


def _sphere3_ab(x, ctx):
    mp = ctx.mp
    cw = weyl_constant(Manifold(SPHERE, 3), ctx)
    xf = ctx.mpf(x)
    w = xf + mp.sqrt(xf ** 2 - ctx.mpf(Fraction(1, 3888)))
    A2 = -cw * (ctx.rpow(xf, Fraction(2, 3)) - ctx.rpow(w / 2, Fraction(2, 3)))
    A1 = -mp.sqrt(cw) * (mp.cbrt(xf) - mp.cbrt(w / 2))
    B1 = ctx.rpow(2, Fraction(-5, 3)) * ctx.rpow(3, Fraction(-4, 3)) / mp.cbrt(w)
    B2 = ctx.rpow(2, Fraction(-10, 3)) * ctx.rpow(3, Fraction(-8, 3)) / ctx.rpow(w, Fraction(2, 3))
    return A1, A2, B1, B2


def sphere3_terms(k, ctx):
    if k < 1:
        raise ValueError(f'sphere3_terms needs k >= 1, got {k}')
    A1, A2, B1, B2 = _sphere3_ab(k, ctx)
    nA1, nA2, nB1, nB2 = _sphere3_ab(k + 1, ctx)
    return Sphere3Terms(A1, A2, B1, B2, -nA1, nA2, -nB1, nB2)


def sphere4_terms(k, ctx):
    '''Radical forms of the 4-sphere remainders, ``(minus, plus)``.'''
    mp = ctx.mp
    cw = weyl_constant(Manifold(SPHERE, 4), ctx)
    rc = mp.sqrt(cw)
    shift = ctx.mpf(Fraction(1, 48))
    kf = ctx.mpf(k)
    k1 = kf + 1
    half = ctx.mpf(Fraction(3, 2))
    inner = 1 / (2 * cw)
    minus = (-half + cw * (mp.sqrt(kf + shift) - mp.sqrt(kf))
             + rc * (mp.sqrt(mp.sqrt(kf + shift) + inner) - ctx.rpow(kf, Fraction(1, 4))))
    plus = (-half + cw * (mp.sqrt(k1 + shift) - mp.sqrt(k1))
            - rc * (mp.sqrt(mp.sqrt(k1 + shift) + inner) - ctx.rpow(k1, Fraction(1, 4))))
    return minus, plus


def remainder_sphere_closed(n, sign, k, ctx):
    '''Radical forms of :func:`remainder_sphere`; n = 3 needs ``k >= 1``.'''
    if n == 3:
        terms = sphere3_terms(k, ctx)
        values = {MINUS: terms.minus, PLUS: terms.plus}
    elif n == 4:
        minus, plus = sphere4_terms(k, ctx)
        values = {MINUS: minus, PLUS: plus}
    else:
        raise ValueError(f'sphere remainders are defined for n in 3, 4, got {n}')
    if sign not in values:
        raise ValueError(f'cannot use sphere remainder {sign}')
    return values[sign]
