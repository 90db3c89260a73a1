# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Closed-form Laplace-Beltrami spectra of the sphere and the Dirichlet
hemisphere.

Eigenvalues come in chains: the K-th distinct eigenvalue ``K(K+n-1)`` is
repeated ``m(K)`` times and occupies the orders ``k_minus..k_plus``. The
hemisphere starts at ``K = 1`` with order ``k = 1``; the sphere starts at
``K = 0`` (the constant eigenfunction) with order ``k = 0``. Chain offsets
``j`` are 1-based on the hemisphere and 0-based on the sphere.

Wedges only carry a Weyl constant. Their spectra are never enumerated.
'''

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from utils import print_rank
from .exact import Polynomial, compare_power, integer_root, rising_factorial, rising_factorial_poly
from .realctx import is_exact

SPHERE = 'sphere'
HEMISPHERE = 'hemisphere'
WEDGE = 'wedge'
KINDS = (SPHERE, HEMISPHERE, WEDGE)


@dataclass(frozen=True)
class Manifold:
    '''Tagged manifold selector.

    Attributes:
        kind (str): one of ``sphere``, ``hemisphere``, ``wedge``.
        n (int): dimension, at least 2.
        p (int): number of wedges tiling the hemisphere; forced to 1 unless
            ``kind`` is ``wedge``.
    '''
    kind: str
    n: int
    p: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f'cannot use manifold {self.kind}')
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f'dimension must be an integer >= 2, got {self.n}')
        if self.kind == WEDGE:
            if not isinstance(self.p, int) or self.p < 1:
                raise ValueError(f'wedge divisor must be an integer >= 1, got {self.p}')
        else:
            object.__setattr__(self, 'p', 1)

    @property
    def weyl_base(self):
        '''Exact rational whose ``2/n`` power is the Weyl constant.'''
        nf = math.factorial(self.n)
        if self.kind == SPHERE:
            return Fraction(nf, 2)
        return Fraction(self.p * nf)

    @property
    def K_min(self):
        return 0 if self.kind == SPHERE else 1

    @property
    def k_min(self):
        return 0 if self.kind == SPHERE else 1

    @property
    def j_base(self):
        return 0 if self.kind == SPHERE else 1

    def enumerable(self):
        return self.kind != WEDGE

    def __str__(self):
        if self.kind == WEDGE:
            return f'wedge(n={self.n}, p={self.p})'
        return f'{self.kind}(n={self.n})'


def select_manifold(name, n, p=1):
    if name.lower() in ('sphere', 's'):
        return Manifold(SPHERE, n)
    elif name.lower() in ('hemisphere', 'h'):
        return Manifold(HEMISPHERE, n)
    elif name.lower() in ('wedge', 'w'):
        return Manifold(WEDGE, n, p)
    else:
        raise ValueError(f'cannot use manifold {name}')


@dataclass(frozen=True)
class Chain:
    '''One distinct eigenvalue with its multiplicity and order window.'''
    manifold: Manifold = field(repr=False)
    K: int
    lam: int
    mult: int
    k_minus: int
    k_plus: int

    def offset(self, k):
        '''Chain offset ``j`` of order ``k`` in the manifold's convention.'''
        if not self.k_minus <= k <= self.k_plus:
            raise ValueError(f'order {k} outside chain K={self.K} [{self.k_minus}, {self.k_plus}]')
        return k - self.k_minus + self.manifold.j_base

    def order(self, j):
        '''Order ``k`` of offset ``j``.'''
        base = self.manifold.j_base
        if not base <= j < base + self.mult:
            raise ValueError(f'offset {j} outside chain K={self.K} of multiplicity {self.mult}')
        return self.k_minus + j - base

    def position(self, k):
        '''``k_minus``, ``k_plus``, ``both`` (single member chain) or ``interior``.'''
        if k == self.k_minus and k == self.k_plus:
            return 'both'
        if k == self.k_minus:
            return 'k_minus'
        if k == self.k_plus:
            return 'k_plus'
        return 'interior'


@dataclass(frozen=True)
class CountResult:
    count: int
    last_chain: Chain = None


def _require_enumerable(m):
    if not m.enumerable():
        raise ValueError(f'{m} spectrum is not enumerated, only its bounds are')


def _check_K(m, K, lowest=None):
    lowest = m.K_min if lowest is None else lowest
    if not isinstance(K, int) or K < lowest:
        raise ValueError(f'chain index must be an integer >= {lowest} on {m}, got {K}')


def weyl_constant(m, ctx):
    '''``C_W = weyl_base**(2/n)`` under ``ctx``.'''
    return ctx.rpow(m.weyl_base, Fraction(2, m.n))


def unit_ball_volume(n, ctx):
    '''Volume of the unit ball in R^n via ``omega_n = (2 pi / n) omega_{n-2}``.'''
    if n < 1:
        raise ValueError(f'ball dimension must be >= 1, got {n}')
    mp = ctx.mp
    omega = mp.mpf(2) if n % 2 else +mp.pi
    for d in range(3 if n % 2 else 4, n + 1, 2):
        omega = 2 * mp.pi / d * omega
    return omega


def sphere_volume(n, ctx):
    '''Surface measure of the unit n-sphere, ``(n+1) omega_{n+1}``.'''
    return (n + 1) * unit_ball_volume(n + 1, ctx)


def hemisphere_volume(n, ctx):
    return sphere_volume(n, ctx) / 2


def manifold_volume(m, ctx):
    if m.kind == SPHERE:
        return sphere_volume(m.n, ctx)
    return hemisphere_volume(m.n, ctx) / m.p


def weyl_constant_from_volume(n, volume, ctx):
    '''``4 pi**2 / (omega_n |M|)**(2/n)``.'''
    mp = ctx.mp
    return 4 * mp.pi ** 2 / ctx.rpow(unit_ball_volume(n, ctx) * volume, Fraction(2, n))


def distinct_eigenvalue(m, K):
    _require_enumerable(m)
    _check_K(m, K)
    return K * (K + m.n - 1)


def multiplicity(m, K):
    _require_enumerable(m)
    _check_K(m, K)
    n = m.n
    if m.kind == HEMISPHERE:
        return math.comb(n + K - 2, n - 1)
    return math.comb(n + K, n) - math.comb(n + K - 2, n)


def sigma(m, K):
    '''Cumulative count of eigenvalues in chains ``<= K``.

    Hemisphere: ``sigma(0) = 0``. Sphere: ``sigma(-1) = 0`` and ``sigma(0) = 1``.
    '''
    _require_enumerable(m)
    n = m.n
    if m.kind == HEMISPHERE:
        _check_K(m, K, lowest=0)
        if K == 0:
            return 0
        return math.comb(n + K - 1, K - 1)
    _check_K(m, K, lowest=-1)
    if K == -1:
        return 0
    return rising_factorial(K + 1, n - 1) * (n + 2 * K) // math.factorial(n)


@lru_cache(maxsize=None)
def sigma_poly(m):
    '''sigma as a polynomial with rational coefficients in a real variable.'''
    _require_enumerable(m)
    n = m.n
    nf = math.factorial(n)
    if m.kind == HEMISPHERE:
        return rising_factorial_poly(n) * Fraction(1, nf)
    return rising_factorial_poly(n - 1).shift(1) * Polynomial((Fraction(n, nf), Fraction(2, nf)))


def sigma_real(m, y, ctx=None):
    '''sigma extended to real arguments by the same formula.'''
    if is_exact(y):
        return sigma_poly(m)(Fraction(y))
    return sigma_poly(m).evaluate_real(ctx, y)


def chain(m, K):
    _require_enumerable(m)
    _check_K(m, K)
    lam = K * (K + m.n - 1)
    mult = multiplicity(m, K)
    if m.kind == HEMISPHERE:
        k_minus, k_plus = sigma(m, K - 1) + 1, sigma(m, K)
    else:
        k_minus, k_plus = sigma(m, K - 1), sigma(m, K) - 1
    return Chain(m, K, lam, mult, k_minus, k_plus)


def chain_of_order(m, k):
    '''The chain containing order ``k`` and the offset of ``k`` inside it.

    Exponential search for an upper chain index followed by a binary search
    on the exact values of sigma.

    Returns:
        tuple: ``(Chain, j)``.
    '''
    _require_enumerable(m)
    if not isinstance(k, int) or k < m.k_min:
        raise ValueError(f'order must be an integer >= {m.k_min} on {m}, got {k}')
    # smallest K with sigma(K) >= target
    target = k if m.kind == HEMISPHERE else k + 1
    lo = m.K_min
    hi = max(lo, 1)
    while sigma(m, hi) < target:
        lo, hi = hi, hi * 2
    while lo < hi:
        mid = (lo + hi) // 2
        if sigma(m, mid) >= target:
            hi = mid
        else:
            lo = mid + 1
    c = chain(m, lo)
    return c, c.offset(k)


def eigenvalue(m, k):
    return chain_of_order(m, k)[0].lam


def iter_chains(m, K_lo, K_hi):
    for K in range(max(K_lo, m.K_min), K_hi + 1):
        yield chain(m, K)


def iter_orders(m, k_lo, k_hi):
    '''Stream ``(k, chain, j)`` for ``k_lo <= k <= k_hi`` without a search per order.'''
    if k_hi < k_lo:
        return
    c, _ = chain_of_order(m, max(k_lo, m.k_min))
    for k in range(max(k_lo, m.k_min), k_hi + 1):
        if k > c.k_plus:
            c = chain(m, c.K + 1)
        yield k, c, c.offset(k)


def counting_function(m, threshold):
    '''Number of eigenvalues ``<= threshold`` counted with multiplicity.'''
    _require_enumerable(m)
    if threshold < 0:
        raise ValueError(f'threshold must be >= 0, got {threshold}')
    threshold = int(math.floor(threshold))
    n = m.n
    # largest K with K(K+n-1) <= threshold
    K = (integer_root((n - 1) ** 2 + 4 * threshold, 2) - (n - 1)) // 2
    while (K + 1) * (K + n) <= threshold:
        K += 1
    while K > 0 and K * (K + n - 1) > threshold:
        K -= 1
    if K < m.K_min:
        return CountResult(0, None)
    return CountResult(sigma(m, K), chain(m, K))


def polya_sign(m, k):
    '''Exact sign of ``lambda_k - C_W k**(2/n)``.

    Raising both sides to the n-th power turns the comparison into
    ``lambda_k**n`` against ``weyl_base**2 * k**2``.
    '''
    lam = eigenvalue(m, k)
    return compare_power(lam, m.weyl_base ** 2 * k ** 2, m.n)


def _closed_form_available(m, x, ctx):
    n = m.n
    if n == 2 or n == 4:
        return True
    if n == 3:
        threshold = Fraction(1, 27) if m.kind == HEMISPHERE else Fraction(1, 108)
        # x >= sqrt(3) * threshold  <=>  x**2 >= 3 * threshold**2
        if is_exact(x):
            return Fraction(x) ** 2 >= 3 * threshold ** 2
        return ctx.mpf(x) ** 2 >= 3 * ctx.mpf(threshold) ** 2
    return False


def _sigma_inverse_closed(m, x, ctx):
    mp = ctx.mp
    n = m.n
    xf = ctx.mpf(x)
    if m.kind == HEMISPHERE:
        if n == 2:
            return (-1 + mp.sqrt(8 * xf + 1)) / 2
        if n == 3:
            L = 27 * xf + mp.sqrt(729 * xf ** 2 - 3)
            return (mp.cbrt(L) / mp.cbrt(9)
                    + 1 / (mp.cbrt(3) * mp.cbrt(L)) - 1)
        return (-3 + mp.sqrt(5 + 4 * mp.sqrt(24 * xf + 1))) / 2
    if n == 2:
        return mp.sqrt(xf) - 1
    if n == 3:
        G = 108 * xf + mp.sqrt((108 * xf) ** 2 - 3)
        return (mp.cbrt(G) / (2 * mp.cbrt(9))
                + 1 / (2 * mp.cbrt(3) * mp.cbrt(G)) - mp.mpf(3) / 2)
    return (-4 + mp.sqrt(2) * mp.sqrt(1 + mp.sqrt(1 + 48 * xf))) / 2


def _sigma_inverse_root(m, x, ctx):
    mp = ctx.mp
    n = m.n
    xf = ctx.mpf(x)
    poly = sigma_poly(m)
    dpoly = poly.derivative()

    def f(y):
        return poly.evaluate_real(ctx, y) - xf

    scale = ctx.root(math.factorial(n) * xf, n)
    if m.kind == HEMISPHERE:
        lo = max(mp.zero, scale - n)
        hi = scale + 1
    else:
        lo = mp.mpf(-1)
        hi = max(mp.one, scale)
        while f(hi) < 0:
            hi *= 2

    width = mp.mpf(2) ** -8
    while hi - lo > width:
        mid = (lo + hi) / 2
        if f(mid) >= 0:
            hi = mid
        else:
            lo = mid

    # sigma is convex and increasing right of its largest root, so Newton from
    # the upper end decreases monotonically onto the root
    y = hi
    eps = mp.mpf(2) ** (8 - ctx.bits)
    for _ in range(4 * ctx.bits):
        value = f(y)
        if value <= 0:
            break
        step = value / dpoly.evaluate_real(ctx, y)
        y -= step
        if step <= eps * max(mp.one, abs(y)):
            break
    return y


def sigma_inverse(m, x, ctx, method='auto'):
    '''The real ``y`` with ``sigma(y) = x``.

    Hemisphere roots are taken in ``y >= 0`` with ``sigma_inverse(0) = 0``;
    sphere roots in ``y >= -1`` with ``sigma_inverse(0) = -1``.

    Args:
        m (Manifold): sphere or hemisphere.
        x: nonnegative int, Fraction or real.
        ctx (RealCtx): precision context.
        method (str): ``closed`` for the radical formulas (n in 2, 3, 4),
            ``root`` for bisection plus Newton, ``auto`` to pick the closed
            form whenever it applies.

    Raises:
        ValueError: negative ``x``, unknown method, or a closed form requested
            outside its real domain.
    '''
    _require_enumerable(m)
    if (ctx.mpf(x) if not is_exact(x) else x) < 0:
        raise ValueError(f'sigma_inverse of negative value {x}')
    if x == 0:
        return ctx.mpf(0 if m.kind == HEMISPHERE else -1)
    if method == 'closed':
        if m.n not in (2, 3, 4):
            raise ValueError(f'no closed form for sigma_inverse in dimension {m.n}')
        if not _closed_form_available(m, x, ctx):
            raise ValueError(f'closed form for sigma_inverse on {m} is complex at x={x}')
        return _sigma_inverse_closed(m, x, ctx)
    elif method == 'root':
        return _sigma_inverse_root(m, x, ctx)
    elif method == 'auto':
        if m.n in (2, 3, 4) and _closed_form_available(m, x, ctx):
            return _sigma_inverse_closed(m, x, ctx)
        print_rank(f'sigma_inverse on {m} at x={x} uses the root finder', loglevel=logging.DEBUG)
        return _sigma_inverse_root(m, x, ctx)
    else:
        raise ValueError(f'cannot use sigma_inverse method {method}')
