# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Tiling transfer for wedges.

When p non-overlapping copies of a domain sit inside a larger one, the
k-th Dirichlet eigenvalue of the copy dominates the (pk)-th eigenvalue of
the larger domain. For the wedge of angle pi/p inside the hemisphere this
turns every hemisphere lower bound into a wedge lower bound with Weyl
constant ``(p n!)**(2/n)``. Wedge spectra are never computed here; at
``p = 1`` the wedge is the hemisphere and the bounds are checked against its
spectrum.
'''

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from utils import print_rank
from .bounds import BoundReport
from .exact import compare_power, exact_root
from .functionals import phi_limit
from .spectrum import HEMISPHERE, WEDGE, Manifold, chain_of_order, manifold_volume, weyl_constant


@dataclass(frozen=True)
class TilingPair:
    '''``tiles`` copies of a subdomain inside ``outer``.

    Attributes:
        outer (Manifold): the tiled domain, a hemisphere for wedges.
        tiles (int): number of copies p.
    '''
    outer: Manifold
    tiles: int

    def __post_init__(self):
        if not isinstance(self.tiles, int) or self.tiles < 1:
            raise ValueError(f'tiling needs at least one tile, got {self.tiles}')

    @property
    def inner(self):
        if self.outer.kind == HEMISPHERE:
            return Manifold(WEDGE, self.outer.n, self.tiles)
        raise ValueError(f'no named subdomain for tilings of {self.outer}')

    def weyl_constant(self, ctx):
        '''Weyl constant of one tile: the outer constant times ``p**(2/n)``.'''
        return weyl_constant(self.outer, ctx) * ctx.rpow(self.tiles, Fraction(2, self.outer.n))

    def wedge_volume(self, ctx):
        return manifold_volume(self.outer, ctx) / self.tiles

    def transferred_order(self, k):
        '''Order in the outer domain bounded by the k-th eigenvalue of a tile.'''
        return self.tiles * k


def _check(n, p, k):
    if n < 2 or p < 1 or k < 1:
        raise ValueError(f'wedge bounds need n >= 2, p >= 1, k >= 1, got n={n}, p={p}, k={k}')


def _hemisphere_report(name, k, value, lam_rhs_sign, c):
    '''BoundReport against the hemisphere spectrum for p = 1.'''
    lam = c.lam
    return BoundReport(name, k, c.K, lam, value, lam - value, lam_rhs_sign >= 0,
                       lam_rhs_sign == 0, c.position(k), True)


def wedge_lower_bound(n, p, k, ctx):
    '''``(p k n!)**(2/n) - (n-1)(n-2)/6``.

    For ``p = 1`` the report carries the verdict against the hemisphere;
    otherwise only the bound value is set.
    '''
    _check(n, p, k)
    rhs = (p * k * math.factorial(n)) ** 2
    value = ctx.root(rhs, n) - ctx.mpf(phi_limit(n))
    if p == 1:
        c, _ = chain_of_order(Manifold(HEMISPHERE, n), k)
        sign = compare_power(c.lam + phi_limit(n), rhs, n)
        return _hemisphere_report('wedge_lower', k, value, sign, c)
    return BoundReport('wedge_lower', k, None, None, value, None, None, None, None, False)


def wedge_one_term_bound(n, p, k, ctx):
    '''``n (p k)**(2/n)``, exact when ``(p k)**2`` is a perfect n-th power.'''
    _check(n, p, k)
    root = exact_root((p * k) ** 2, n)
    exact = root is not None
    value = n * root if exact else n * ctx.root((p * k) ** 2, n)
    if p == 1:
        c, _ = chain_of_order(Manifold(HEMISPHERE, n), k)
        sign = compare_power(c.lam, Fraction(n ** n * k ** 2), n)
        return _hemisphere_report('wedge_one_term', k, value, sign, c)
    return BoundReport('wedge_one_term', k, None, None, value, None, None, None, None, exact)


@dataclass(frozen=True)
class TransferRow:
    '''``lambda_{pk}`` of the hemisphere against the wedge floor ``(p k n!)**(2/n) - c(n)``.'''
    k: int
    pk: int
    eigenvalue: int
    floor: object
    holds: bool
    is_equality: bool


def tiling_transfer_check(n, p, k_max, ctx, k_min=1):
    '''Rows for ``k = k_min..k_max``; verdicts are exact.'''
    _check(n, p, k_min)
    pair = TilingPair(Manifold(HEMISPHERE, n), p)
    shift = phi_limit(n)
    rows = []
    for k in range(k_min, k_max + 1):
        pk = pair.transferred_order(k)
        c, _ = chain_of_order(pair.outer, pk)
        rhs = (pk * math.factorial(n)) ** 2
        sign = compare_power(c.lam + shift, rhs, n)
        floor = ctx.root(rhs, n) - ctx.mpf(shift)
        rows.append(TransferRow(k, pk, c.lam, floor, sign >= 0, sign == 0))
    failures = [r.k for r in rows if not r.holds]
    if failures:
        print_rank(f'tiling transfer n={n} p={p} fails at k={failures[:10]}', loglevel=logging.WARNING)
    return rows
