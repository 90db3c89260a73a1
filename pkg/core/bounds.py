# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Eigenvalue bounds and their verification.

A :class:`BoundSpec` names one bound on one manifold. :func:`eval_bound`
evaluates it at an order k against the exact eigenvalue and returns a
:class:`BoundReport`. Bounds that involve a single radical (Polya, the
one-term bound and the constant-shift bound) get an exact verdict by
comparing n-th powers; the others are decided under the context tolerance
``2**-(bits/2)`` scaled by the bound value.

Available names:

=====================  ==========  ===========================================
name                   side        bound
=====================  ==========  ===========================================
``polya_lower``        lower       ``C_W k**(2/n)``
``thmB_lower``         lower       ``C_W k**(2/n) - (n-1)(n-2)/6``
``thmC_upper``         upper       ``C_W k**(2/n) + 2 sqrt(C_W) k**(1/n)``
``thmD_upper``         upper       ``C_W k**(2/n) + c_n k**(1/n)``, n in 3, 4
``one_term_lower``     lower       ``n k**(2/n)``
``hemi_sharp_upper``   upper       ``up(k)`` (two-term part plus tilde remainder)
``hemi_sharp_lower``   lower       ``lo(k)``
``sphere_lower``       lower       ``C_W (k+1)**(2/n) - sqrt(C_W) (k+1)**(1/n)``
``sphere_upper``       upper       ``C_W k**(2/n) + sqrt(C_W) k**(1/n)``
``sphere_sharp_lower`` lower       ``lo(k)`` (two-term part plus plus remainder)
``sphere_sharp_upper`` upper       ``up(k)`` (two-term part plus minus remainder)
=====================  ==========  ===========================================
'''

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from utils import print_rank
from .exact import compare_power, exact_root
from .functionals import phi_limit, theta, theta_derivative_sign
from .remainders import up_lo, weyl_terms
from .spectrum import HEMISPHERE, SPHERE, Manifold, chain, chain_of_order, iter_chains, iter_orders

LOWER = 'lower'
UPPER = 'upper'

# orders quoted in the literature as the equality cases of thmD_upper
REFERENCE_EQUALITY_ORDERS = {3: 1092, 4: 12240}


@dataclass(frozen=True)
class BoundDef:
    name: str
    side: str
    kinds: tuple
    dims: tuple = None


def select_bound(name):
    if name == 'polya_lower':
        return BoundDef(name, LOWER, (HEMISPHERE, SPHERE))
    elif name == 'thmB_lower':
        return BoundDef(name, LOWER, (HEMISPHERE,))
    elif name == 'thmC_upper':
        return BoundDef(name, UPPER, (HEMISPHERE,))
    elif name == 'thmD_upper':
        return BoundDef(name, UPPER, (HEMISPHERE,), (3, 4))
    elif name == 'one_term_lower':
        return BoundDef(name, LOWER, (HEMISPHERE,))
    elif name == 'hemi_sharp_upper':
        return BoundDef(name, UPPER, (HEMISPHERE,))
    elif name == 'hemi_sharp_lower':
        return BoundDef(name, LOWER, (HEMISPHERE,))
    elif name == 'sphere_lower':
        return BoundDef(name, LOWER, (SPHERE,))
    elif name == 'sphere_upper':
        return BoundDef(name, UPPER, (SPHERE,))
    elif name == 'sphere_sharp_lower':
        return BoundDef(name, LOWER, (SPHERE,))
    elif name == 'sphere_sharp_upper':
        return BoundDef(name, UPPER, (SPHERE,))
    else:
        raise ValueError(f'cannot use bound {name}')


BOUND_NAMES = ('polya_lower', 'thmB_lower', 'thmC_upper', 'thmD_upper', 'one_term_lower',
               'hemi_sharp_upper', 'hemi_sharp_lower', 'sphere_lower', 'sphere_upper',
               'sphere_sharp_lower', 'sphere_sharp_upper')


@dataclass(frozen=True)
class BoundSpec:
    '''A named bound on a manifold.

    Attributes:
        manifold (Manifold): sphere or hemisphere.
        name (str): one of :data:`BOUND_NAMES`.
        params (dict): extra constants; ``thmD_upper`` needs ``c_n``.
    '''
    manifold: Manifold
    name: str
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        definition = select_bound(self.name)
        if self.manifold.kind not in definition.kinds:
            raise ValueError(f'bound {self.name} is not defined on {self.manifold}')
        if definition.dims is not None and self.manifold.n not in definition.dims:
            raise ValueError(f'bound {self.name} is defined for n in {definition.dims}, got {self.manifold.n}')
        if self.name == 'thmD_upper' and 'c_n' not in self.params:
            raise ValueError('thmD_upper needs the constant c_n, see c_n_constant')

    @property
    def side(self):
        return select_bound(self.name).side


@dataclass(frozen=True)
class BoundReport:
    '''Evaluation of one bound at one order.

    ``margin`` is oriented so that ``margin >= 0`` means the bound holds;
    ``exact`` tells whether the verdict came from integer arithmetic.
    '''
    name: str
    k: int
    K: int
    eigenvalue: int
    bound_value: object
    margin: object
    holds: bool
    is_equality: bool
    at_chain_extreme: str
    exact: bool = False


def bound_value(spec, k, ctx):
    '''Value of the bound at order k under ctx.'''
    m, name = spec.manifold, spec.name
    n = m.n
    if name == 'polya_lower':
        return weyl_terms(m, k, ctx)[0]
    elif name == 'thmB_lower':
        return weyl_terms(m, k, ctx)[0] - ctx.mpf(phi_limit(n))
    elif name == 'thmC_upper':
        two, one = weyl_terms(m, k, ctx)
        return two + 2 * one
    elif name == 'thmD_upper':
        two, _ = weyl_terms(m, k, ctx)
        return two + spec.params['c_n'] * ctx.root(k, n)
    elif name == 'one_term_lower':
        return n * ctx.rpow(k, Fraction(2, n))
    elif name in ('hemi_sharp_upper', 'sphere_sharp_upper'):
        return up_lo(m, k, ctx)[0]
    elif name in ('hemi_sharp_lower', 'sphere_sharp_lower'):
        return up_lo(m, k, ctx)[1]
    elif name == 'sphere_lower':
        two, one = weyl_terms(m, k + 1, ctx)
        return two - one
    elif name == 'sphere_upper':
        two, one = weyl_terms(m, k, ctx)
        return two + one
    raise ValueError(f'cannot use bound {name}')


def _exact_sign(spec, k, lam):
    '''Sign of the margin in integer arithmetic, or None when no exact rule applies.'''
    m, name = spec.manifold, spec.name
    n = m.n
    if name == 'polya_lower':
        return compare_power(lam, m.weyl_base ** 2 * k ** 2, n)
    elif name == 'thmB_lower':
        return compare_power(lam + phi_limit(n), m.weyl_base ** 2 * k ** 2, n)
    elif name == 'one_term_lower':
        return compare_power(lam, Fraction(n ** n * k ** 2), n)
    elif name == 'sphere_upper':
        return _sphere_sign(m, k, lam, upper=True)
    elif name == 'sphere_lower':
        return _sphere_sign(m, k + 1, lam, upper=False)
    return None


def _sphere_sign(m, x, lam, upper):
    '''Exact sign of ``u**2 + u - lam`` (upper) or ``lam - u**2 + u`` (lower), ``u = (weyl_base x)**(1/n)``.

    Exact when ``n == 2`` or when ``weyl_base * x`` is a perfect n-th power.
    '''
    base = Fraction(m.weyl_base * x)
    if m.n == 2:
        # u**2 == base, so the margin compares a rational with sqrt(base)
        return -compare_power(lam - base if upper else base - lam, base, 2)
    u = exact_root(base, m.n)
    if u is None:
        return None
    margin = u * u + u - lam if upper else lam - u * u + u
    return (margin > 0) - (margin < 0)


def eval_bound(spec, k, ctx, tol=None, chain_info=None):
    '''Evaluate ``spec`` at order ``k``.

    Args:
        spec (BoundSpec): the bound.
        k (int): order in the manifold's range.
        ctx (RealCtx): precision context.
        tol: absolute tolerance before scaling; defaults to ``ctx.tolerance``.
        chain_info (tuple): optional ``(Chain, j)`` of k, saves a search.

    Returns:
        BoundReport
    '''
    c, _ = chain_info if chain_info is not None else chain_of_order(spec.manifold, k)
    lam = c.lam
    value = bound_value(spec, k, ctx)
    if spec.side == LOWER:
        margin = lam - value
    else:
        margin = value - lam
    sign = _exact_sign(spec, k, lam)
    if sign is not None:
        holds, equal, exact = sign >= 0, sign == 0, True
    else:
        s = ctx.sign(margin, scale=value, tol=tol)
        holds, equal, exact = s >= 0, s == 0, False
    return BoundReport(spec.name, k, c.K, lam, value, margin, holds, equal, c.position(k), exact)


def scan_bound(spec, k_lo, k_hi, ctx, tol=None):
    '''Reports for every order in ``k_lo..k_hi``.'''
    return [eval_bound(spec, k, ctx, tol, (c, j)) for k, c, j in iter_orders(spec.manifold, k_lo, k_hi)]


@dataclass(frozen=True)
class CnConstant:
    '''Largest Theta over the scanned chains.

    ``c_n = sqrt(C_W) * max Theta``; ``ratio = c_n / (2 sqrt(C_W))``; the
    maximum sits at chain ``K_argmax`` whose first order is ``argmax_k``.
    '''
    n: int
    c_n: object
    ratio: object
    K_argmax: int
    argmax_k: int
    reference_k: int


def c_n_constant(n, ctx, K_bound=300):
    '''Raises ValueError when Theta is still increasing at ``K_bound``.'''
    if n not in (3, 4):
        raise ValueError(f'c_n is defined for n in 3, 4, got {n}')
    if theta_derivative_sign(n, K_bound) >= 0:
        raise ValueError(f'Theta is still increasing at K={K_bound}, raise the bound')
    best_K, best = 1, theta(n, 1, ctx)
    for K in range(2, K_bound + 1):
        value = theta(n, K, ctx)
        if value > best:
            best_K, best = K, value
    m = Manifold(HEMISPHERE, n)
    root_cw = ctx.root(m.weyl_base, n)
    argmax_k = chain(m, best_K).k_minus
    print_rank(f'c_{n}: max Theta {best} at K={best_K} (k={argmax_k}, reference k={REFERENCE_EQUALITY_ORDERS[n]})')
    return CnConstant(n, root_cw * best, best / 2, best_K, argmax_k, REFERENCE_EQUALITY_ORDERS[n])


def make_bound_spec(manifold, name, ctx=None, K_bound=300):
    '''Build a BoundSpec, computing ``c_n`` for ``thmD_upper``.'''
    params = {}
    if name == 'thmD_upper':
        params['c_n'] = c_n_constant(manifold.n, ctx, K_bound).c_n
    return BoundSpec(manifold, name, params)


def normalized_gap(spec, k, lam, ctx):
    '''Gap of the bound rescaled so that its limit along the sharp subsequence is finite.

    Returns None when the normalization vanishes (order 0 on the sphere).
    '''
    m, name = spec.manifold, spec.name
    two, one = weyl_terms(m, k, ctx)
    if name in ('thmB_lower', 'polya_lower'):
        return lam - two
    elif name == 'thmC_upper':
        return None if one == 0 else (lam - two) / (2 * one)
    elif name == 'thmD_upper':
        return None if one == 0 else (lam - two) / (spec.params['c_n'] * ctx.root(k, m.n))
    elif name == 'sphere_upper':
        return None if one == 0 else (lam - two) / one
    elif name == 'sphere_lower':
        two1, one1 = weyl_terms(m, k + 1, ctx)
        return (two1 - lam) / one1
    elif name == 'one_term_lower':
        return lam - m.n * ctx.rpow(k, Fraction(2, m.n))
    value = bound_value(spec, k, ctx)
    return lam - value if spec.side == LOWER else value - lam


@dataclass
class SharpnessScan:
    '''Normalized gaps ``(K, k, gap)`` along a chain subsequence.

    ``trend`` is ``increasing``, ``decreasing``, ``constant`` or ``mixed``
    (strict, outside tolerance).
    '''
    name: str
    subsequence: str
    rows: list
    trend: str

    @property
    def last(self):
        return self.rows[-1][2] if self.rows else None


def _trend(values, ctx):
    signs = set()
    for a, b in zip(values, values[1:]):
        signs.add(ctx.sign(b - a, scale=max(abs(a), abs(b))))
    if not signs or signs == {0}:
        return 'constant'
    if signs == {1}:
        return 'increasing'
    if signs == {-1}:
        return 'decreasing'
    return 'mixed'


def sharpness_scan(spec, subsequence, K_max, ctx, K_min=None):
    '''Normalized gaps along ``k_minus``, ``k_plus`` or all orders of chains up to ``K_max``.'''
    if K_max < 2:
        raise ValueError(f'sharpness_scan needs K_max >= 2, got {K_max}')
    m = spec.manifold
    K_min = m.K_min if K_min is None else K_min
    rows = []
    for c in iter_chains(m, K_min, K_max):
        if subsequence == 'k_minus':
            orders = (c.k_minus,)
        elif subsequence == 'k_plus':
            orders = (c.k_plus,)
        elif subsequence == 'all':
            orders = range(c.k_minus, c.k_plus + 1)
        else:
            raise ValueError(f'cannot use subsequence {subsequence}')
        for k in orders:
            gap = normalized_gap(spec, k, c.lam, ctx)
            if gap is not None:
                rows.append((c.K, k, gap))
    trend = _trend([r[2] for r in rows], ctx)
    print_rank(f'{spec.name} along {subsequence} up to K={K_max}: {trend}', loglevel=logging.DEBUG)
    return SharpnessScan(spec.name, subsequence, rows, trend)


@dataclass
class TailReport:
    '''Rows ``(K, k_minus, gap, theta - 2, theta' sign)`` and the first K where Theta decreases.'''
    n: int
    rows: list
    turning_K: int


def thmD_positivity_tail(n, K_lo, K_hi, ctx):
    m = Manifold(HEMISPHERE, n)
    spec = BoundSpec(m, 'thmC_upper')
    rows = []
    for c in iter_chains(m, K_lo, K_hi):
        gap = c.lam - bound_value(spec, c.k_minus, ctx)
        rows.append((c.K, c.k_minus, gap, theta(n, c.K, ctx) - 2, theta_derivative_sign(n, c.K)))
    turning = None
    K = 1
    while turning is None and K <= K_hi:
        if theta_derivative_sign(n, K) < 0:
            turning = K
        K += 1
    return TailReport(n, rows, turning)


@dataclass
class ThresholdResult:
    '''Empirical threshold for thmC_upper: Theta(K) < 2 for every scanned K >= K.'''
    n: int
    K: int
    k: int
    K_bound: int
    failures: int
    determined: bool


def thmC_threshold(n, K_bound, ctx):
    '''Smallest chain from which ``Theta < 2`` persists through ``K_bound``.'''
    m = Manifold(HEMISPHERE, n)
    last_failure = 0
    failures = 0
    for K in range(1, K_bound + 1):
        if ctx.sign(theta(n, K, ctx) - 2, scale=2) >= 0:
            last_failure = K
            failures += 1
    if last_failure == K_bound:
        print_rank(f'thmC threshold for n={n} undetermined within K <= {K_bound}', loglevel=logging.WARNING)
        return ThresholdResult(n, None, None, K_bound, failures, False)
    K = last_failure + 1
    return ThresholdResult(n, K, chain(m, K).k_minus, K_bound, failures, True)
