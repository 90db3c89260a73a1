# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Exact polynomial certificates.

A certificate is a polynomial with rational coefficients whose sign on the
integers decides an eigenvalue inequality:

* ``qn``: ``Q_n(K) = (K(K+n-1))**n - ((K-1)^(n rising) + n!)**2``, nonnegative
  exactly when Polya's inequality holds at the first order of chain K.
* ``qtheta``: ``Q(y)`` in ``y = K-1``, positive exactly when Theta increases at K.
* ``mr``: the Taylor certificate. Replacing ``H**(2/n)`` by an odd-order
  Taylor upper bound turns the Theta' inequality into ``M(y) > sum R_r y**-r``;
  the smallest integer ``y*`` beyond which ``M(y) > sum |R_r|`` witnesses that
  Theta increases for all ``K >= y* + 1``.
'''

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from utils import print_rank
from .exact import (Polynomial, lambda_coefficient, rising_factorial_poly, root_bound,
                    s_hat, sign_changes, sturm_sequence)
from .functionals import theta_derivative_sign

QN = 'qn'
QTHETA = 'qtheta'
MR = 'mr'


@dataclass(frozen=True)
class Certificate:
    '''Exact certificate polynomial with kind specific metadata.

    Attributes:
        n (int): dimension.
        kind (str): ``qn``, ``qtheta`` or ``mr``.
        poly (Polynomial): the certificate; ``M(y)`` for ``mr``.
        metadata (dict): for ``mr`` the keys ``l``, ``M``, ``R``, ``R_abs_sum``,
            ``y_star``, ``K_witness`` and ``determined``.
    '''
    n: int
    kind: str
    poly: Polynomial
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def signs(self):
        return [(c > 0) - (c < 0) for c in self.poly.coefficients]

    def all_positive(self):
        return all(c > 0 for c in self.poly.coefficients)


def _check_n(n):
    if not isinstance(n, int) or n < 2:
        raise ValueError(f'dimension must be an integer >= 2, got {n}')


@lru_cache(maxsize=None)
def q_n_poly(n):
    _check_n(n)
    K = Polynomial.x()
    lam = K * (K + (n - 1))
    ups = rising_factorial_poly(n).shift(-1) + math.factorial(n)
    return Certificate(n, QN, lam ** n - ups ** 2)


def q_n_value(n, K):
    '''``Q_n(K)`` in integer arithmetic.'''
    ups = math.factorial(n)
    prod = 1
    for i in range(n):
        prod *= K - 1 + i
    return (K * (K + n - 1)) ** n - (prod + ups) ** 2


def phi_n_constant(n):
    '''``(2 n!)**2 - (n+1)**n 2**n``, which equals ``-Q_n(2)``.'''
    return (2 * math.factorial(n)) ** 2 - (n + 1) ** n * 2 ** n


@lru_cache(maxsize=None)
def q_theta_poly(n):
    '''``Q(y) = (P1 H - P2 H')**n - H'**n H**2`` with ``H(y) = y^(n rising) + n!``.'''
    _check_n(n)
    y = Polynomial.x()
    H = rising_factorial_poly(n) + math.factorial(n)
    dH = H.derivative()
    P1 = Polynomial((n * (n + 1), 2 * n))
    P2 = Polynomial((n, n + 1, 1))
    D = P1 * H - P2 * dH
    return Certificate(n, QTHETA, D ** n - dH ** n * H ** 2)


def _taylor_b(n, l):
    '''Coefficients ``B_tau`` of ``sum_{s<=l} Lambda_s(2) (sum_j s_hat_j z**j)**s``.'''
    inner = Polynomial([0] + [s_hat(n, j) for j in range(1, n + 1)])
    total = Polynomial()
    power = Polynomial.constant(1)
    for s in range(1, l + 1):
        power = power * inner
        total = total + power * lambda_coefficient(2, n, s)
    return total


def _smallest_witness(P):
    '''Smallest integer ``y >= 1`` with ``P(y) > 0`` and no real root of P beyond y.'''
    if P.is_zero() or P.leading <= 0:
        return None
    if P.degree == 0:
        return 1
    sequence = sturm_sequence(P)
    at_infinity = sign_changes([p.sign_at_infinity() for p in sequence])

    def holds(y):
        if P(y) <= 0:
            return False
        return sign_changes([p(Fraction(y)) for p in sequence]) == at_infinity

    lo, hi = 1, max(1, math.ceil(root_bound(P)) + 1)
    while not holds(hi):
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if holds(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


@lru_cache(maxsize=None)
def mr_taylor_certificate(n, l):
    '''Taylor certificate of order ``l`` for Theta increasing in dimension n.

    Raises:
        ValueError: ``l`` even or smaller than 1.
    '''
    _check_n(n)
    if not isinstance(l, int) or l < 1 or l % 2 == 0:
        raise ValueError(f'Taylor order must be odd and >= 1, got {l}')

    B = _taylor_b(n, l)
    # C[mu] multiplies y**-mu in P2 + (Taylor bound of H**(2/n)), mu >= -2
    top = n * l - 2
    C = {-2: Fraction(2), -1: Fraction(n + 1) + B[1], 0: Fraction(n) + B[2]}
    for mu in range(1, top + 1):
        C[mu] = B[mu + 2]
    # A[n-j] is the coefficient of y**(n-j) in H'
    A = {n - j: (n - j + 1) * Fraction(s_hat(n, j - 1)) for j in range(1, n + 1)}

    def convolution(s):
        return sum((A[n - j] * C[s - 1 - j] for j in range(1, n + 1) if -2 <= s - 1 - j <= top),
                   Fraction(0))

    M = [Fraction(0)] * (n + 2)
    for s in range(0, n + 2):
        M[n - s + 1] = (2 * n * s_hat(n, s) + n * (n + 1) * (s_hat(n, s - 1) if s >= 1 else 0)
                        - convolution(s))
    R = {}
    for s in range(n + 2, n * (l + 1)):
        R[s - (n + 1)] = convolution(s)

    poly = Polynomial(M)
    r_abs = sum((abs(r) for r in R.values()), Fraction(0))
    y_star = _smallest_witness(poly - r_abs)
    metadata = {
        'l': l,
        'M': tuple(M),
        'R': dict(R),
        'R_abs_sum': r_abs,
        'y_star': y_star,
        'K_witness': None if y_star is None else y_star + 1,
        'determined': y_star is not None,
    }
    print_rank(f'Taylor certificate n={n} l={l}: witness y*={y_star}', loglevel=logging.DEBUG)
    return Certificate(n, MR, poly, metadata)


@dataclass
class IncreasingCertificate:
    '''Result of :func:`certify_theta_increasing`.

    ``K_from`` is the first K from which Theta is certified increasing: exact
    Theta' signs cover ``[1, K_witness)`` and the Taylor certificate covers the
    rest. ``signs`` lists ``(K, sign)`` for the exactly checked range.
    '''
    n: int
    l: int
    K_witness: int
    K_from: int
    signs: list
    determined: bool


def certify_theta_increasing(n, l=3):
    cert = mr_taylor_certificate(n, l)
    if not cert.metadata['determined']:
        return IncreasingCertificate(n, l, None, None, [], False)
    K_witness = cert.metadata['K_witness']
    signs = [(K, theta_derivative_sign(n, K)) for K in range(1, K_witness)]
    K_from = K_witness
    for K, s in reversed(signs):
        if s <= 0:
            break
        K_from = K
    return IncreasingCertificate(n, l, K_witness, K_from, signs, True)


@dataclass
class MinChainResult:
    '''Smallest chain index from which a predicate holds up to a scan bound.

    ``K`` is None and ``determined`` False when the predicate fails at the
    bound itself. ``failures`` lists every K in ``[2, K_bound]`` where the
    predicate fails.
    '''
    n: int
    mode: str
    K: int
    K_bound: int
    failures: list
    determined: bool


def stable_from(n, mode, K_bound, predicate):
    failures = [K for K in range(2, K_bound + 1) if not predicate(K)]
    if K_bound in failures:
        print_rank(f'{mode} for n={n} undetermined within K <= {K_bound}', loglevel=logging.WARNING)
        return MinChainResult(n, mode, None, K_bound, failures, False)
    K = failures[-1] + 1 if failures else 2
    return MinChainResult(n, mode, K, K_bound, failures, True)


# smallest K from which the lowest order of each hemisphere chain satisfies Polya
LOWEST_ORDER_CHAIN_K = {3: 2, 4: 2, 5: 2, 6: 2, 7: 2, 8: 2, 9: 3}


def min_polya_lowest_order_K(n, K_bound=1000):
    '''Smallest K >= 2 with ``Q_n(K') >= 0`` for every scanned ``K' >= K``.'''
    return stable_from(n, 'lowest_order', K_bound, lambda K: q_n_value(n, K) >= 0)
