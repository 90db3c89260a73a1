# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Functionals on distinct eigenvalues.

Each functional compares the chain value ``K(K+n-1)`` with a Weyl-type
expression at one end of the chain. Real values are computed under a
:class:`~core.realctx.RealCtx`; sign questions that decide an inequality
(Theta', Pol_j) are answered exactly by clearing the n-th root.
'''

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from utils import print_rank
from .exact import compare_power, rising_factorial, rising_factorial_poly
from .realctx import is_exact
from .spectrum import HEMISPHERE, SPHERE, Manifold, chain, sigma, weyl_constant

FUNCTIONALS = ('R', 'Phi', 'Theta', 'Omega', 'Psi', 'PolJ')


@dataclass(frozen=True)
class FunctionalValue:
    name: str
    n: int
    K: int
    value: object
    ctx_bits: int
    j: int = None


def _lam(n, K):
    return K * (K + n - 1)


def upsilon(n, K, j=1):
    '''``(K-1)^(n rising) + j n!``, i.e. ``n!`` times the order ``k_minus + j - 1``.'''
    if K < 1 or j < 1:
        raise ValueError(f'upsilon needs K >= 1 and j >= 1, got K={K}, j={j}')
    return rising_factorial(K - 1, n) + j * math.factorial(n)


@lru_cache(maxsize=None)
def _upsilon_derivative_poly(n):
    return rising_factorial_poly(n).shift(-1).derivative()


def upsilon_derivative(n, K):
    '''d/dK of ``(K-1)^(n rising)`` at integer ``K``.'''
    return _upsilon_derivative_poly(n)(K)


def R_func(n, K, ctx):
    '''``(K^(n rising))**(2/n) / (K(K+n-1))``; K may be real.'''
    if not is_exact(K):
        K = ctx.mpf(K)
    return ctx.rpow(rising_factorial(K, n), Fraction(2, n)) / _lam(n, K)


def r_prime(n, K, ctx):
    '''Derivative of :func:`R_func` in K.

    The digamma difference ``psi(n+K) - psi(K)`` telescopes to
    ``sum 1/(K+i)`` for integer n and is summed directly.
    '''
    Kf = ctx.mpf(K)
    telescoped = ctx.mp.fsum(1 / (Kf + i) for i in range(n))
    inner = 2 * telescoped / n - (2 * Kf + n - 1) / (Kf * (Kf + n - 1))
    return R_func(n, Kf, ctx) * inner


def r_prime_digamma(n, K, ctx):
    '''Same derivative through mpmath's digamma, used as an independent oracle.'''
    mp = ctx.mp
    Kf = ctx.mpf(K)
    inner = 2 * (mp.digamma(n + Kf) - mp.digamma(Kf)) / n - (2 * Kf + n - 1) / (Kf * (Kf + n - 1))
    return R_func(n, Kf, ctx) * inner


def phi(n, K, ctx):
    '''``(K^(n rising))**(2/n) - K(K+n-1)``; identically zero for n = 2.'''
    if not is_exact(K):
        K = ctx.mpf(K)
    return ctx.rpow(rising_factorial(K, n), Fraction(2, n)) - _lam(n, K)


def phi_limit(n):
    '''Limit of Phi as K grows, ``(n-1)(n-2)/6``.'''
    return Fraction((n - 1) * (n - 2), 6)


def phi_ladder(n, K_max, ctx):
    '''Rows ``(K, Phi(K), Phi(K+1) - Phi(K), increment > 2(K-1))`` for K in 1..K_max.'''
    rows = []
    current = phi(n, 1, ctx)
    for K in range(1, K_max + 1):
        following = phi(n, K + 1, ctx)
        step = following - current
        rows.append((K, current, step, step > 2 * (K - 1)))
        current = following
    return rows


def theta(n, K, ctx):
    '''Normalized two-term gap of the hemisphere at ``k_minus`` of chain K.

    With ``u = upsilon(n, K)**(1/n)`` the value is ``(K(K+n-1) - u**2) / u``.
    '''
    if K < 1:
        raise ValueError(f'theta needs K >= 1, got {K}')
    u = ctx.root(upsilon(n, K), n)
    return (_lam(n, K) - u * u) / u


def theta_closed_form_n2(K, ctx):
    return 2 * ctx.mpf(K - 1) / ctx.sqrt(K * (K - 1) + 2)


def theta_derivative_sign(n, K):
    '''Exact sign (+1, 0, -1) of d/dK Theta at integer ``K >= 1``.

    Theta' has the sign of ``D - U' U**(2/n)`` where
    ``D = n(2K+n-1) U - K(K+n-1) U'`` and ``U = upsilon(n, K)``. Since
    ``U' > 0`` a nonpositive D decides the sign; otherwise it is the sign of
    ``D**n - U'**n U**2``.
    '''
    if K < 1:
        raise ValueError(f'theta_derivative_sign needs K >= 1, got {K}')
    U = upsilon(n, K)
    dU = upsilon_derivative(n, K)
    D = n * (2 * K + n - 1) * U - _lam(n, K) * dU
    if D <= 0:
        return -1
    # D vs dU * U**(2/n)  <=>  D**n vs dU**n * U**2
    return compare_power(D, dU ** n * U ** 2, n)


def omega_func(n, K, ctx):
    '''Sphere upper functional at ``k_minus``: ``(lambda - u**2) / u``, ``u = ((n!/2) sigma(K-1))**(1/n)``.

    ``Omega(0) = 1`` by convention.
    '''
    if K < 0:
        raise ValueError(f'omega_func needs K >= 0, got {K}')
    if K == 0:
        return ctx.mpf(1)
    m = Manifold(SPHERE, n)
    u = ctx.root(m.weyl_base * sigma(m, K - 1), n)
    return (_lam(n, K) - u * u) / u


def psi_func(n, K, ctx):
    '''Sphere lower functional at ``k_plus``: ``(u**2 - lambda) / u``, ``u = ((n!/2) sigma(K))**(1/n)``.'''
    if K < 0:
        raise ValueError(f'psi_func needs K >= 0, got {K}')
    m = Manifold(SPHERE, n)
    u = ctx.root(m.weyl_base * sigma(m, K), n)
    return (u * u - _lam(n, K)) / u


def pol_j(m, K, j, ctx):
    '''Polya margin ``lambda_K - C_W k_j**(2/n)`` of the j-th member of chain K.

    Raises:
        ValueError: j outside the chain's offset range.
    '''
    c = chain(m, K)
    k = c.order(j)
    return c.lam - weyl_constant(m, ctx) * ctx.rpow(k, Fraction(2, m.n))


def pol_j_sign(m, K, j):
    '''Exact sign of :func:`pol_j`.'''
    c = chain(m, K)
    k = c.order(j)
    return compare_power(c.lam, m.weyl_base ** 2 * k ** 2, m.n)


def evaluate_functional(name, n, K, ctx, j=None, manifold=None):
    '''Dispatch by functional name and wrap the value in a :class:`FunctionalValue`.'''
    if name == 'R':
        value = R_func(n, K, ctx)
    elif name == 'Phi':
        value = phi(n, K, ctx)
    elif name == 'Theta':
        value = theta(n, K, ctx)
    elif name == 'Omega':
        value = omega_func(n, K, ctx)
    elif name == 'Psi':
        value = psi_func(n, K, ctx)
    elif name == 'PolJ':
        if j is None:
            raise ValueError('PolJ needs an offset j')
        value = pol_j(manifold or Manifold(HEMISPHERE, n), K, j, ctx)
    else:
        raise ValueError(f'cannot use functional {name}')
    print_rank(f'{name}(n={n}, K={K}) = {value}', loglevel=logging.DEBUG)
    return FunctionalValue(name, n, K, value, ctx.bits, j)
