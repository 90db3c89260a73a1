# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Averages of the Polya margin ``lambda_k - C_W k**(2/n)``.

Chain averages run over one K-chain; total averages over all orders up to k.
Both are summed per chain: the eigenvalue part is exact and the Weyl part is
``C_W`` times a power sum, so a chain of any multiplicity costs a bounded
amount of work. In dimension 2 the Weyl term is linear and everything stays
rational.
'''

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from utils import print_rank
from .certificates import LOWEST_ORDER_CHAIN_K, min_polya_lowest_order_K, stable_from
from .exact import Polynomial, rising_factorial, s_hat
from .spectrum import HEMISPHERE, Manifold, chain, chain_of_order, multiplicity, weyl_constant


def j_star(n, K):
    '''Last offset of chain K on the hemisphere, the multiplicity ``m(K)``.'''
    return multiplicity(Manifold(HEMISPHERE, n), K)


def j_dagger(n, K):
    '''Polynomial approximation ``m(K) - ((n-2)/12) binom(K+n-3, n-2)`` of :func:`j_crit`.'''
    if K < 2:
        raise ValueError(f'j_dagger needs K >= 2, got {K}')
    return j_star(n, K) - Fraction(n - 2, 12) * math.comb(K + n - 3, n - 2)


@dataclass(frozen=True)
class CriticalOffset:
    '''Real root in j of ``Pol_j(K) = 0``.

    ``clamped`` is ``value`` clamped to ``[1, m(K)]``; ``in_range`` tells
    whether clamping was needed.
    '''
    K: int
    value: object
    clamped: object
    in_range: bool


def j_crit(n, K, ctx):
    '''``((K(K+n-1))**(n/2) - (K-1)^(n rising)) / n!``.

    Pol_j(K) >= 0 exactly for ``j <= j_crit``.
    '''
    if K < 2:
        raise ValueError(f'j_crit needs K >= 2, got {K}')
    lam = K * (K + n - 1)
    value = (ctx.rpow(lam, Fraction(n, 2)) - rising_factorial(K - 1, n)) / math.factorial(n)
    top = j_star(n, K)
    in_range = 1 <= value <= top
    clamped = min(max(value, ctx.mpf(1)), ctx.mpf(top))
    return CriticalOffset(K, value, clamped, in_range)


@dataclass(frozen=True)
class LemmaF:
    '''Leading coefficients of ``Pol_{j(K)}(K) = F1 y + F0 + F_1 / y + O(y**-2)``, ``y = K-1``.'''
    F1: Fraction
    F0: Fraction
    F_1: Fraction

    def verdict(self):
        '''Sign of Pol_{j(K)}(K) for large K, or 0 when the three terms vanish.'''
        for value in (self.F1, self.F0, self.F_1):
            if value != 0:
                return 1 if value > 0 else -1
        return 0


def lemma_f_coefficients(n, j_poly):
    '''Expansion coefficients for an offset ``j(K)`` given as a Polynomial in K.'''
    if j_poly.degree > n - 1:
        raise ValueError(f'offset polynomial degree {j_poly.degree} exceeds n-1={n - 1}')
    b = j_poly.shift(1)
    nf = math.factorial(n)

    def c(l):
        return (s_hat(n, l) if l <= n - 1 else 0) + nf * b[n - l]

    c1, c2, c3 = c(1), c(2), c(3)
    F1 = n + 1 - Fraction(2, n) * c1
    F0 = n - Fraction(2, n) * c2 + Fraction(n - 2, n ** 2) * c1 ** 2
    F_1 = (-Fraction(2, n) * c3 + Fraction(2 * (n - 2), n ** 2) * c1 * c2
           - Fraction(2 * (n - 1) * (n - 2), 3 * n ** 3) * c1 ** 3)
    return LemmaF(Fraction(F1), Fraction(F0), Fraction(F_1))


def lemma_f_verdict(n, j_poly):
    return lemma_f_coefficients(n, j_poly).verdict()


def average_q_poly(n):
    '''``Q(x) = sum_{l=1}^{n-3} ((2/n) s_hat_{l+2} + s_hat_{l+1}) x**l + 2 (n-1)! x**(n-2)``.'''
    coeffs = [Fraction(0)] * (n - 1)
    for l in range(1, n - 2):
        coeffs[l] = Fraction(2, n) * s_hat(n, l + 2) + s_hat(n, l + 1)
    coeffs[n - 2] += 2 * math.factorial(n - 1)
    return Polynomial(coeffs)


def average_floor(n):
    '''``T'_n = n - (2/n) s_hat_2 - s_hat_1 - Q(1)``.'''
    return n - Fraction(2, n) * s_hat(n, 2) - s_hat(n, 1) - average_q_poly(n)(1)


def chain_average_lower_bound(n, K):
    '''``(K-1) + T'_n``, a lower bound of the hemisphere chain average for K >= 2.'''
    return (K - 1) + average_floor(n)


def _weyl_block(m, k_lo, k_hi, ctx):
    '''``sum_{k_lo..k_hi} C_W k**(2/n)``; exact Fraction in dimension 2.'''
    if k_hi < k_lo:
        return Fraction(0) if m.n == 2 else ctx.mp.zero
    if m.n == 2:
        return m.weyl_base * Fraction((k_lo + k_hi) * (k_hi - k_lo + 1), 2)
    return weyl_constant(m, ctx) * ctx.power_sum(k_lo, k_hi, Fraction(2, m.n))


def chain_average(m, K, ctx):
    '''Mean Polya margin over chain K.'''
    c = chain(m, K)
    block = _weyl_block(m, c.k_minus, c.k_plus, ctx)
    value = c.lam - block / c.mult
    return ctx.mpf(value) if isinstance(value, Fraction) else value


def _margin_sum(m, k, ctx):
    '''``sum_{j<=k} (lambda_j - C_W j**(2/n))`` over orders ``1..k``.'''
    last, _ = chain_of_order(m, k)
    eig = 0
    for K in range(m.K_min, last.K):
        c = chain(m, K)
        eig += c.mult * c.lam
    eig += (k - last.k_minus + 1) * last.lam
    return eig - _weyl_block(m, 1, k, ctx)


def total_average(m, k, ctx):
    '''``(1/k) sum_{j=1}^{k} (lambda_j - C_W j**(2/n))``.

    On the sphere the order 0 term vanishes and is left out of the count.
    '''
    if k < 1:
        raise ValueError(f'total_average needs k >= 1, got {k}')
    value = _margin_sum(m, k, ctx) / k
    return ctx.mpf(value) if isinstance(value, Fraction) else value


def total_average_exact(m, k):
    '''Exact total average in dimension 2.'''
    if m.n != 2:
        raise ValueError('exact total averages exist only in dimension 2')
    return _margin_sum(m, k, None) / k


@dataclass
class DivergenceWitness:
    '''First chain end whose total average exceeds ``target``.'''
    n: int
    target: object
    K: int
    k: int
    value: object
    determined: bool


def total_average_divergence_witness(n, target, K_max, ctx):
    '''Scan hemisphere chain ends ``k = sigma(K)`` until the total average exceeds ``target``.

    Sums are carried from chain to chain, so the cost grows with K, not k.
    A witness is evidence of growth, not a proof of divergence.
    '''
    m = Manifold(HEMISPHERE, n)
    eig = 0
    weyl = ctx.mp.zero
    value = None
    for K in range(1, K_max + 1):
        c = chain(m, K)
        eig += c.mult * c.lam
        weyl += ctx.mpf(_weyl_block(m, c.k_minus, c.k_plus, ctx))
        value = (eig - weyl) / c.k_plus
        if value > target:
            print_rank(f'total average of hemisphere n={n} exceeds {target} at K={K}, k={c.k_plus}')
            return DivergenceWitness(n, target, K, c.k_plus, value, True)
    print_rank(f'total average of hemisphere n={n} stays below {target} for K <= {K_max}',
               loglevel=logging.WARNING)
    return DivergenceWitness(n, target, K_max, chain(m, K_max).k_plus, value, False)


# smallest K from which the hemisphere chain average stays positive
CHAIN_AVERAGE_CHAIN_K = {3: 2, 4: 2, 5: 2, 6: 3, 10: 10}


def expected_min_chain_K(n, mode):
    '''Published smallest chain for ``mode``, or None when no value is known for ``n``.'''
    if mode == 'lowest_order':
        return LOWEST_ORDER_CHAIN_K.get(n)
    elif mode == 'chain_average':
        return CHAIN_AVERAGE_CHAIN_K.get(n)
    else:
        raise ValueError(f'cannot use mode {mode}')


def min_polya_chain_K(n, mode, K_bound, ctx=None):
    '''Smallest K >= 2 from which a Polya predicate holds on every scanned chain.

    ``lowest_order`` uses the exact sign of ``Q_n(K)``; ``chain_average`` the
    sign of the hemisphere chain average under ``ctx``.
    '''
    if mode == 'lowest_order':
        return min_polya_lowest_order_K(n, K_bound)
    elif mode == 'chain_average':
        m = Manifold(HEMISPHERE, n)
        return stable_from(n, mode, K_bound,
                           lambda K: ctx.sign(chain_average(m, K, ctx), scale=K * (K + n - 1)) >= 0)
    else:
        raise ValueError(f'cannot use mode {mode}')


def phi_kr(K, r):
    '''Total average of the 2-sphere at order ``k = K**2 + r``: ``(r+1)(2K-r) / (2(K**2+r))``.'''
    if K < 1 or not 0 <= r <= 2 * K:
        raise ValueError(f'phi_kr needs K >= 1 and 0 <= r <= 2K, got K={K}, r={r}')
    return Fraction((r + 1) * (2 * K - r), 2 * (K * K + r))


def phi_kr_bound(K, ctx):
    '''``K**2 + K - 1/2 - sqrt(K(K**2-1)(K+2))``, an upper bound of phi_kr attained at a real r in [-1, 2K].'''
    return K * K + K - ctx.mpf(Fraction(1, 2)) - ctx.sqrt(K * (K * K - 1) * (K + 2))


def hemi2_sum_profile(K, r):
    '''Exact margin sum of the 2-hemisphere up to order ``K(K-1)/2 + r``, ``1 <= r <= K``.

    Equals ``K(K-1)(K-2)/3 + r(2K-r-1)``.
    '''
    if K < 1 or not 1 <= r <= K:
        raise ValueError(f'hemi2_sum_profile needs K >= 1 and 1 <= r <= K, got K={K}, r={r}')
    return K * (K - 1) * (K - 2) // 3 + r * (2 * K - r - 1)
