# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Subcommands of the verifier.

Each ``cmd_*`` takes a resolved :class:`~core.config.RunConfig` and returns a
:class:`CommandResult` holding the table rows, their columns, a summary and
the list of verified claims that failed. Range scans are cut into contiguous
slices mapped over a worker pool; slices come back in submission order and
reals are rendered inside the workers, so the output does not depend on the
number of jobs.
'''

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from utils import freeze_row, ordered_map, print_rank, split_range
from .averages import (chain_average, chain_average_lower_bound, expected_min_chain_K, hemi2_sum_profile,
                       j_crit, j_dagger, min_polya_chain_K, phi_kr, phi_kr_bound, total_average,
                       total_average_exact)
from .bounds import (BOUND_NAMES, REFERENCE_EQUALITY_ORDERS, BoundSpec, c_n_constant, eval_bound,
                     make_bound_spec, select_bound, sharpness_scan, thmC_threshold, thmD_positivity_tail)
from .certificates import (MR, QN, QTHETA, certify_theta_increasing, min_polya_lowest_order_K,
                           mr_taylor_certificate, phi_n_constant, q_n_poly, q_n_value, q_theta_poly)
from .exact import compare_power
from .functionals import evaluate_functional, phi, phi_ladder, phi_limit, pol_j_sign, theta, theta_derivative_sign
from .realctx import RealCtx
from .remainders import (HAT_MINUS, MINUS, PLUS, TILDE_MINUS, remainder_hemi, remainder_hemi_closed,
                         remainder_hemi_features, remainder_sphere, remainder_sphere_closed, weyl_terms)
from .spectrum import (HEMISPHERE, SPHERE, WEDGE, Manifold, chain, iter_chains, iter_orders, sigma, weyl_constant,
                       weyl_constant_from_volume)
from .wedges import TilingPair, tiling_transfer_check, wedge_lower_bound, wedge_one_term_bound

@dataclass
class CommandResult:
    '''Output of one subcommand.

    Attributes:
        rows (list): dicts keyed by column name.
        columns (list): column order of the table.
        summary (dict): scalar facts about the whole scan.
        failed_claims (list): messages for every verified claim that failed.
    '''
    rows: list
    columns: list
    summary: dict = field(default_factory=dict)
    failed_claims: list = field(default_factory=list)

    @property
    def claims_ok(self):
        return not self.failed_claims

    def claim(self, ok, message):
        if not ok:
            print_rank(f'claim failed: {message}', loglevel=logging.WARNING)
            self.failed_claims.append(message)
        return ok


@dataclass(frozen=True)
class Slice:
    '''One contiguous piece of a scan, shipped to a worker.'''
    kind: str
    n: int
    p: int
    lo: int
    hi: int
    bits: int
    tol: float = None
    extra: tuple = ()

    def manifold(self):
        return Manifold(self.kind, self.n, self.p)

    def ctx(self):
        return RealCtx(self.bits)


def _map_slices(worker, config, lo, hi, extra=()):
    m = config.manifold
    slices = [Slice(m.kind, m.n, m.p, a, b, config.bits, config.tol, extra)
              for a, b in split_range(lo, hi, config.jobs)]
    rows = []
    for part in ordered_map(worker, slices, config.jobs):
        rows.extend(part)
    return rows


def _order_range(config, m, lowest=None):
    '''Order range from ``--k``, or the orders spanned by the chains of ``--K``.'''
    lowest = m.k_min if lowest is None else lowest
    if config.k_bounds is not None:
        lo, hi = config.k_bounds
        if lo < lowest:
            raise ValueError(f'{config.command} on {m} needs orders >= {lowest}, got {config.k_range}')
        return lo, hi
    if config.K_bounds is not None:
        K_lo, K_hi = _chain_range(config, m)
        return max(lowest, chain(m, K_lo).k_minus), chain(m, K_hi).k_plus
    raise ValueError(f'{config.command} needs an order range --k or a chain range --K')


def _chain_range(config, m, lowest=None):
    lowest = m.K_min if lowest is None else lowest
    if config.K_bounds is None:
        raise ValueError(f'{config.command} needs a chain range --K')
    lo, hi = config.K_bounds
    if lo < lowest:
        raise ValueError(f'{config.command} on {m} needs chains >= {lowest}, got {config.K_range}')
    return lo, hi


def _ctx(config):
    return RealCtx(config.bits)


def _spectrum_slice(s):
    m = s.manifold()
    return [{'k': k, 'K': c.K, 'j': j, 'lambda': c.lam, 'mult': c.mult,
             'k_minus': c.k_minus, 'k_plus': c.k_plus}
            for k, c, j in iter_orders(m, s.lo, s.hi)]


def _chain_slice(s):
    m = s.manifold()
    return [{'K': c.K, 'lambda': c.lam, 'mult': c.mult, 'sigma': sigma(m, c.K),
             'k_minus': c.k_minus, 'k_plus': c.k_plus}
            for c in iter_chains(m, s.lo, s.hi)]


def cmd_spectrum(config):
    m = config.manifold.build()
    if not m.enumerable():
        raise ValueError(f'{m} spectrum is not enumerated, only its bounds are')
    if config.k_bounds is not None:
        lo, hi = _order_range(config, m)
        rows = _map_slices(_spectrum_slice, config, lo, hi)
        columns = ['k', 'K', 'j', 'lambda', 'mult', 'k_minus', 'k_plus']
    else:
        lo, hi = _chain_range(config, m)
        rows = _map_slices(_chain_slice, config, lo, hi)
        columns = ['K', 'lambda', 'mult', 'sigma', 'k_minus', 'k_plus']
    return CommandResult(rows, columns, {'manifold': str(m), 'rows': len(rows)})


def _polya_slice(s):
    m, ctx = s.manifold(), s.ctx()
    rows = []
    for k, c, _ in iter_orders(m, s.lo, s.hi):
        weyl, _ = weyl_terms(m, k, ctx)
        sign = compare_power(c.lam, m.weyl_base ** 2 * k ** 2, m.n)
        rows.append(freeze_row({'k': k, 'K': c.K, 'lambda': c.lam, 'weyl_term': weyl,
                                'margin': c.lam - weyl, 'verdict': sign >= 0,
                                'chain_position': c.position(k)}, s.bits))
    return rows


def _first(rows, predicate, key):
    for row in rows:
        if predicate(row):
            return row[key]
    return None


def cmd_check_polya(config):
    m = config.manifold.build()
    lo, hi = _order_range(config, m)
    rows = _map_slices(_polya_slice, config, lo, hi)
    columns = ['k', 'K', 'lambda', 'weyl_term', 'margin', 'verdict', 'chain_position']
    result = CommandResult(rows, columns)
    summary = result.summary
    summary['failures'] = sum(1 for r in rows if not r['verdict'])
    summary['first_failure_k'] = _first(rows, lambda r: not r['verdict'], 'k')
    for mode in ('k_minus', 'k_plus'):
        extremes = [r for r in rows if r['chain_position'] in (mode, 'both')]
        summary[f'{mode}.first_failure_K'] = _first(extremes, lambda r: not r['verdict'], 'K')
        summary[f'{mode}.first_success_K'] = _first(extremes, lambda r: r['verdict'], 'K')
    if m.kind == HEMISPHERE and m.n == 2:
        result.claim(summary['failures'] == 0, 'Polya holds for every order of the 2-hemisphere')
    elif m.kind == HEMISPHERE:
        result.claim(all(not r['verdict'] for r in rows if r['chain_position'] == 'k_plus'),
                     f'Polya fails at every k_plus of the {m.n}-hemisphere')
    print_rank(f'check-polya {m}: {summary["failures"]} failures in [{lo}, {hi}]')
    return result


def _applicable(m, name):
    definition = select_bound(name)
    return m.kind in definition.kinds and (definition.dims is None or m.n in definition.dims)


def _claimed(m, name):
    '''Whether the bound is asserted to hold at every order of ``m``.'''
    if name == 'polya_lower':
        return m.kind == HEMISPHERE and m.n == 2
    if name == 'one_term_lower':
        return m.n <= 9
    return name != 'thmC_upper'


def _bounds_slice(s):
    m, ctx = s.manifold(), s.ctx()
    name, c_n = s.extra
    params = {} if c_n is None else {'c_n': ctx.mp.make_mpf(c_n)}
    spec = BoundSpec(m, name, params)
    rows = []
    for k, c, j in iter_orders(m, s.lo, s.hi):
        report = eval_bound(spec, k, ctx, s.tol, (c, j))
        rows.append(freeze_row({'name': name, 'k': k, 'K': report.K, 'lambda': report.eigenvalue,
                                'bound': report.bound_value, 'margin': report.margin,
                                'holds': report.holds, 'equality': report.is_equality,
                                'chain_position': report.at_chain_extreme, 'exact': report.exact},
                               s.bits))
    return rows


def _sharpness(config, m, names):
    '''Normalized gaps of each bound along the ``--sharpness`` subsequence of the chain range.'''
    K_lo, K_hi = _chain_range(config, m)
    ctx = _ctx(config)
    rows, summary = [], {'subsequence': config.sharpness}
    for name in names:
        spec = make_bound_spec(m, name, ctx, config.K_bound)
        scan = sharpness_scan(spec, config.sharpness, K_hi, ctx, K_min=K_lo)
        rows.extend(freeze_row({'name': name, 'K': K, 'k': k, 'gap': gap}, config.bits)
                    for K, k, gap in scan.rows)
        summary[f'{name}.trend'] = scan.trend
        summary[f'{name}.last'] = scan.last
    return CommandResult(rows, ['name', 'K', 'k', 'gap'], summary)


def cmd_bounds(config):
    m = config.manifold.build()
    names = list(config.names) or [name for name in BOUND_NAMES if _applicable(m, name)]
    for name in names:
        if not _applicable(m, name):
            raise ValueError(f'bound {name} is not defined on {m}')
    if config.sharpness is not None:
        return _sharpness(config, m, names)
    lo, hi = _order_range(config, m)
    ctx = _ctx(config)
    rows = []
    summary = {}
    for name in names:
        c_n = None
        if name == 'thmD_upper':
            constant = c_n_constant(m.n, ctx, config.K_bound)
            c_n = constant.c_n._mpf_
            summary['thmD_upper.c_n'] = constant.c_n
            summary['thmD_upper.argmax_k'] = constant.argmax_k
        rows.extend(_map_slices(_bounds_slice, config, lo, hi, (name, c_n)))
    result = CommandResult(rows, ['name', 'k', 'K', 'lambda', 'bound', 'margin', 'holds', 'equality',
                                  'chain_position', 'exact'], summary)
    for name in names:
        own = [r for r in rows if r['name'] == name]
        failures = [r['k'] for r in own if not r['holds']]
        summary[f'{name}.failures'] = len(failures)
        summary[f'{name}.first_failure_k'] = failures[0] if failures else None
        summary[f'{name}.equalities'] = ' '.join(str(r['k']) for r in own if r['equality'])
        if _claimed(m, name):
            result.claim(not failures, f'{name} holds on {m} for k in [{lo}, {hi}]')
    return result


def _coefficient_rows(term, coefficients):
    return [{'term': term, 'power': i, 'coefficient': c, 'sign': (c > 0) - (c < 0)}
            for i, c in enumerate(coefficients)]


def cmd_certify(config):
    n = config.manifold.n
    which = config.certificate
    columns = ['term', 'power', 'coefficient', 'sign']
    if which == QN:
        cert = q_n_poly(n)
        result = CommandResult(_coefficient_rows('Q_n', cert.poly.coefficients), columns)
        phi_n = phi_n_constant(n)
        lowest = min_polya_lowest_order_K(n, config.K_bound)
        result.summary.update({'n': n, 'degree': cert.poly.degree, 'phi_n': phi_n,
                               'Q_n(2)': q_n_value(n, 2), 'min_K': lowest.K,
                               'determined': lowest.determined})
        result.claim(q_n_value(n, 2) == -phi_n, f'Q_{n}(2) equals -phi({n})')
        if n <= 40:
            result.claim((phi_n > 0) == (n >= 9), f'phi({n}) changes sign between 8 and 9')
        expected = expected_min_chain_K(n, 'lowest_order')
        if expected is not None and lowest.determined:
            result.claim(lowest.K == expected, f'lowest order Polya chain for n={n}')
    elif which == QTHETA:
        cert = q_theta_poly(n)
        result = CommandResult(_coefficient_rows('Q', cert.poly.coefficients), columns)
        result.summary.update({'n': n, 'degree': cert.poly.degree, 'constant': cert.poly[0],
                               'all_positive': cert.all_positive()})
        if n in (5, 6):
            result.claim(cert.all_positive(), f'every coefficient of Q(y) is positive for n={n}')
    elif which == MR:
        cert = mr_taylor_certificate(n, config.order)
        meta = cert.metadata
        rows = _coefficient_rows('M', meta['M'])
        rows += [{'term': 'R', 'power': -r, 'coefficient': c, 'sign': (c > 0) - (c < 0)}
                 for r, c in sorted(meta['R'].items())]
        result = CommandResult(rows, columns)
        increasing = certify_theta_increasing(n, config.order)
        result.summary.update({'n': n, 'l': meta['l'], 'R_abs_sum': meta['R_abs_sum'],
                               'y_star': meta['y_star'], 'K_witness': meta['K_witness'],
                               'K_from': increasing.K_from, 'determined': meta['determined']})
        if meta['l'] >= 3:
            result.claim(meta['M'][n + 1] == 0 and meta['M'][n] == 0,
                         f'the two leading coefficients of M vanish for n={n}')
    else:
        raise ValueError(f'cannot use certificate {which}')
    return result


def _chain_average_slice(s):
    m, ctx = s.manifold(), s.ctx()
    rows = []
    for c in iter_chains(m, s.lo, s.hi):
        row = {'K': c.K, 'lambda': c.lam, 'mult': c.mult, 'chain_average': chain_average(m, c.K, ctx)}
        if m.kind == HEMISPHERE and c.K >= 2:
            floor = chain_average_lower_bound(m.n, c.K)
            crit = j_crit(m.n, c.K, ctx)
            row.update({'lower_bound': floor,
                        'above_bound': ctx.sign(row['chain_average'] - ctx.mpf(floor), scale=c.lam, tol=s.tol) >= 0,
                        'j_crit': crit.value, 'j_dagger': j_dagger(m.n, c.K)})
        rows.append(freeze_row(row, s.bits))
    return rows


def _total_average_slice(s):
    m, ctx = s.manifold(), s.ctx()
    exact = m.n == 2
    running = total_average(m, s.lo, ctx) * s.lo
    running_exact = total_average_exact(m, s.lo) * s.lo if exact else None
    rows = []
    for k, c, j in iter_orders(m, s.lo, s.hi):
        if k > s.lo:
            running += c.lam - weyl_terms(m, k, ctx)[0]
            if exact:
                running_exact += c.lam - m.weyl_base * k
        row = {'k': k, 'K': c.K, 'lambda': c.lam, 'chain_position': c.position(k),
               'total_average': running / k,
               'exact_average': running_exact / k if exact else None}
        rows.append(freeze_row(row, s.bits))
    return rows


def _check_total_averages(result, m, rows, ctx):
    if m.n != 2:
        return
    profile_ok, bound_ok = True, True
    for r in rows:
        K, k, average = r['K'], r['k'], r['exact_average']
        if m.kind == HEMISPHERE:
            profile_ok = profile_ok and average * k == hemi2_sum_profile(K, k - K * (K - 1) // 2)
            if r['chain_position'] in ('k_plus', 'both'):
                expected = Fraction(2, 3) * (K - 1)
            else:
                continue
        elif m.kind == SPHERE and K >= 1:
            expected = phi_kr(K, k - K * K)
            bound_ok = bound_ok and ctx.sign(phi_kr_bound(K, ctx) - ctx.mpf(average), scale=K) >= 0
        else:
            continue
        if not result.claim(average == expected, f'exact total average of {m} at k={k}'):
            return
    if m.kind == HEMISPHERE:
        result.claim(profile_ok, f'margin sums of {m} follow K(K-1)(K-2)/3 + r(2K-r-1)')
    else:
        result.claim(bound_ok, f'total averages of {m} stay below the phi_kr envelope')


def cmd_averages(config):
    m = config.manifold.build()
    if m.kind == WEDGE:
        raise ValueError('averages need the sphere or the hemisphere')
    ctx = _ctx(config)
    if config.mode == 'chain':
        lo, hi = _chain_range(config, m)
        rows = _map_slices(_chain_average_slice, config, lo, hi)
        result = CommandResult(rows, ['K', 'lambda', 'mult', 'chain_average', 'lower_bound',
                                      'above_bound', 'j_crit', 'j_dagger'])
        if m.kind == HEMISPHERE:
            result.claim(all(r['above_bound'] for r in rows if 'above_bound' in r),
                         f'chain averages of {m} stay above (K-1) + T\'_n')
        elif m.n == 2:
            result.claim(all(ctx.sign(ctx.mpf(r['chain_average'])) == 0 for r in rows),
                         'chain averages of the 2-sphere vanish')
    elif config.mode == 'total':
        lo, hi = _order_range(config, m, lowest=1)
        rows = _map_slices(_total_average_slice, config, lo, hi)
        result = CommandResult(rows, ['k', 'K', 'lambda', 'chain_position', 'total_average',
                                      'exact_average'])
        _check_total_averages(result, m, rows, ctx)
    elif config.mode == 'min-chain':
        n = m.n
        rows = []
        for mode in ('lowest_order', 'chain_average'):
            found = min_polya_chain_K(n, mode, config.K_bound, ctx)
            rows.append({'mode': mode, 'K': found.K, 'K_bound': found.K_bound,
                         'failures': len(found.failures), 'determined': found.determined})
        result = CommandResult(rows, ['mode', 'K', 'K_bound', 'failures', 'determined'])
        for row in rows:
            expected = expected_min_chain_K(n, row['mode'])
            if expected is not None and row['determined']:
                result.claim(row['K'] == expected, f'minimal {row["mode"]} chain for n={n}')
    else:
        raise ValueError(f'cannot use averages mode {config.mode}')
    result.summary.update({'manifold': str(m), 'mode': config.mode, 'rows': len(result.rows)})
    return result


def _theta_slice(s):
    ctx = s.ctx()
    m = Manifold(HEMISPHERE, s.n)
    rows = []
    for c in iter_chains(m, s.lo, s.hi):
        value = theta(s.n, c.K, ctx)
        rows.append({'K': c.K, 'k_minus': c.k_minus, 'theta': value, 'theta_minus_2': value - 2,
                     'dtheta_sign': theta_derivative_sign(s.n, c.K), 'phi': phi(s.n, c.K, ctx)})
    # argmax is taken on the full precision values before rendering
    best = max(rows, key=lambda r: r['theta']) if rows else None
    frozen = [freeze_row(r, s.bits) for r in rows]
    return [(frozen, None if best is None else (best['K'], best['theta']._mpf_))]


def cmd_scan_theta(config):
    m = config.manifold.build()
    if m.kind != HEMISPHERE:
        raise ValueError('scan-theta runs on the hemisphere')
    n = m.n
    ctx = _ctx(config)
    lo, hi = _chain_range(config, m) if config.K_bounds is not None else (1, config.K_bound)
    rows, best = [], None
    for part in _map_slices(_theta_slice, config, lo, hi):
        part_rows, part_best = part
        rows.extend(part_rows)
        if part_best is not None:
            K, value = part_best[0], ctx.mp.make_mpf(part_best[1])
            if best is None or value > best[1]:
                best = (K, value)
    result = CommandResult(rows, ['K', 'k_minus', 'theta', 'theta_minus_2', 'dtheta_sign', 'phi'])
    tail = thmD_positivity_tail(n, lo, hi, ctx)
    threshold = thmC_threshold(n, hi, ctx)
    thmC_failures = sum(1 for row in tail.rows if ctx.sign(row[2], scale=row[0] ** 2) > 0)
    result.summary.update({'n': n, 'argmax_K': best[0], 'argmax_k': chain(m, best[0]).k_minus,
                           'max_theta': best[1], 'ratio': best[1] / 2, 'turning_K': tail.turning_K,
                           'thmC_upper.failures': thmC_failures,
                           'thmC_upper.threshold_K': threshold.K, 'thmC_upper.threshold_k': threshold.k,
                           'thmC_upper.determined': threshold.determined,
                           'reference_k': REFERENCE_EQUALITY_ORDERS.get(n)})
    result.claim(all((row[2] > 0) == (row[3] > 0) for row in tail.rows if ctx.sign(row[3], scale=2) != 0),
                 f'thmC_upper fails at k_minus exactly where Theta exceeds 2 for n={n}')
    if n in (2, 5, 6):
        result.claim(best[1] < 2, f'Theta stays below 2 for n={n}')
    print_rank(f'scan-theta n={n}: max Theta {best[1]} at K={best[0]}')
    return result


def _wedge_slice(s):
    ctx = s.ctx()
    rows = []
    for t in tiling_transfer_check(s.n, s.p, s.hi, ctx, k_min=s.lo):
        lower = wedge_lower_bound(s.n, s.p, t.k, ctx)
        one_term = wedge_one_term_bound(s.n, s.p, t.k, ctx)
        rows.append(freeze_row({'k': t.k, 'pk': t.pk, 'lambda_pk': t.eigenvalue, 'floor': t.floor,
                                'holds': t.holds, 'equality': t.is_equality,
                                'wedge_lower': lower.bound_value, 'wedge_lower_holds': lower.holds,
                                'wedge_one_term': one_term.bound_value,
                                'wedge_one_term_holds': one_term.holds}, s.bits))
    return rows


def cmd_wedge(config):
    m = config.manifold.build()
    if m.kind == SPHERE:
        raise ValueError('wedge bounds tile the hemisphere, not the sphere')
    lo, hi = _order_range(config, Manifold(HEMISPHERE, m.n), lowest=1)
    rows = _map_slices(_wedge_slice, config, lo, hi)
    result = CommandResult(rows, ['k', 'pk', 'lambda_pk', 'floor', 'holds', 'equality', 'wedge_lower',
                                  'wedge_lower_holds', 'wedge_one_term', 'wedge_one_term_holds'])
    result.summary.update({'n': m.n, 'p': m.p,
                           'equalities': ' '.join(str(r['pk']) for r in rows if r['equality'])})
    ctx = _ctx(config)
    pair = TilingPair(Manifold(HEMISPHERE, m.n), m.p)
    tile_constant = pair.weyl_constant(ctx)
    result.summary.update({'tile': str(pair.inner), 'tile_volume': pair.wedge_volume(ctx),
                           'tile_weyl_constant': tile_constant})
    result.claim(ctx.is_close(tile_constant, weyl_constant(pair.inner, ctx))
                 and ctx.is_close(tile_constant, weyl_constant_from_volume(m.n, pair.wedge_volume(ctx), ctx)),
                 f'Weyl constant of {pair.inner} matches its volume')
    result.claim(all(r['holds'] for r in rows), f'tiling transfer holds for {m}')
    if m.p == 1:
        result.claim(all(r['wedge_lower_holds'] for r in rows), 'wedge lower bound holds at p=1')
        if m.n <= 9:
            result.claim(all(r['wedge_one_term_holds'] for r in rows), 'wedge one-term bound holds at p=1')
    return result


def _remainder_slice(s):
    m, ctx = s.manifold(), s.ctx()
    which = s.extra[0]
    hemisphere = m.kind == HEMISPHERE
    rows = []
    for k, c, _ in iter_orders(m, s.lo, s.hi):
        if hemisphere:
            value = remainder_hemi(m.n, which, k, ctx)
            closed = remainder_hemi_closed(m.n, which, k, ctx) if k >= 2 else None
        else:
            value = remainder_sphere(m.n, which, k, ctx)
            closed = remainder_sphere_closed(m.n, which, k, ctx) if k >= 1 else None
        agree = None if closed is None else ctx.is_close(value, closed, scale=k, tol=s.tol)
        rows.append(freeze_row({'k': k, 'K': c.K, 'chain_position': c.position(k), 'remainder': value,
                                'sign': ctx.sign(value, scale=max(k, 1), tol=s.tol), 'closed_form': closed,
                                'agree': agree}, s.bits))
    return rows


def cmd_remainders(config):
    m = config.manifold.build()
    if m.kind == HEMISPHERE:
        allowed, dims = (TILDE_MINUS, HAT_MINUS), (2, 3, 4)
    elif m.kind == SPHERE:
        allowed, dims = (MINUS, PLUS), (3, 4)
    else:
        raise ValueError('remainders are defined on the sphere and the hemisphere')
    which = config.remainder or allowed[0]
    if which not in allowed:
        raise ValueError(f'cannot use remainder {which} on {m}')
    if m.n not in dims:
        raise ValueError(f'remainders on the {m.kind} are defined for n in {dims}, got {m.n}')
    lo, hi = _order_range(config, m, lowest=1 if m.kind == HEMISPHERE else 0)
    rows = _map_slices(_remainder_slice, config, lo, hi, (which,))
    result = CommandResult(rows, ['k', 'K', 'chain_position', 'remainder', 'sign', 'closed_form', 'agree'],
                           {'manifold': str(m), 'remainder': which, 'rows': len(rows)})
    result.claim(all(r['agree'] is not False for r in rows), f'closed form of {which} matches on {m}')
    if m.kind == HEMISPHERE:
        features = remainder_hemi_features(m.n, which, lo, hi, _ctx(config))
        result.summary.update({'sign_changes': ' '.join(f'{a}..{b}' for a, b in features.sign_changes),
                               'argmax_k': features.argmax, 'maximum': features.maximum})
    elif m.n == 3:
        result.claim(all(r['sign'] < 0 for r in rows if r['k'] >= 1), f'{which} remainder of {m} is negative')
    return result


def _functional_slice(s):
    m, ctx = s.manifold(), s.ctx()
    name, offset = s.extra
    rows = []
    for c in iter_chains(m, s.lo, s.hi):
        if name == 'PolJ':
            offsets = range(m.j_base, m.j_base + c.mult)
            if offset is not None:
                offsets = [offset] if offset in offsets else []
            for j in offsets:
                value = evaluate_functional(name, m.n, c.K, ctx, j=j, manifold=m)
                rows.append(freeze_row({'K': c.K, 'j': j, 'k': c.order(j), 'value': value.value,
                                        'sign': pol_j_sign(m, c.K, j)}, s.bits))
        else:
            value = evaluate_functional(name, m.n, c.K, ctx)
            rows.append(freeze_row({'K': c.K, 'j': None, 'k': c.k_minus, 'value': value.value,
                                    'sign': ctx.sign(value.value, scale=c.lam or 1, tol=s.tol)}, s.bits))
    return rows


def _phi_rows(config, m, lo, hi):
    '''Phi with its chain increments; the increments need Phi at ``K + 1`` too.'''
    ctx = _ctx(config)
    ladder = phi_ladder(m.n, hi, ctx)[lo - 1:]
    rows = [freeze_row({'K': K, 'j': None, 'k': chain(m, K).k_minus, 'value': value, 'step': step,
                        'step_above_chain': above}, config.bits)
            for K, value, step, above in ladder]
    summary = {'limit': phi_limit(m.n)}
    result = CommandResult(rows, ['K', 'j', 'k', 'value', 'step', 'step_above_chain'], summary)
    if m.n >= 3:
        limit = ctx.mpf(phi_limit(m.n))
        result.claim(all(step > 0 and value < limit for _, value, step, _ in ladder),
                     f'Phi increases below its limit for n={m.n}')
    return result


def cmd_functional(config):
    m = config.manifold.build()
    name = config.functional
    if name in ('R', 'Phi', 'Theta') and m.kind != HEMISPHERE:
        raise ValueError(f'{name} is a hemisphere functional')
    if name in ('Omega', 'Psi') and m.kind != SPHERE:
        raise ValueError(f'{name} is a sphere functional')
    if not m.enumerable():
        raise ValueError(f'{m} spectrum is not enumerated')
    lo, hi = _chain_range(config, m)
    if name == 'Phi':
        result = _phi_rows(config, m, lo, hi)
    else:
        rows = _map_slices(_functional_slice, config, lo, hi, (name, config.offset))
        result = CommandResult(rows, ['K', 'j', 'k', 'value', 'sign'])
        if name == 'PolJ' and config.offset is None:
            # offsets of a chain arrive in increasing order
            last, ordered = {}, True
            for r in rows:
                ordered = ordered and r['sign'] <= last.get(r['K'], r['sign'])
                last[r['K']] = r['sign']
            result.claim(ordered, f'Pol_j does not increase along the chains of {m}')
    result.summary.update({'manifold': str(m), 'functional': name, 'rows': len(result.rows)})
    return result


def select_command(name):
    if name == 'spectrum':
        return cmd_spectrum
    elif name == 'check-polya':
        return cmd_check_polya
    elif name == 'bounds':
        return cmd_bounds
    elif name == 'certify':
        return cmd_certify
    elif name == 'averages':
        return cmd_averages
    elif name == 'scan-theta':
        return cmd_scan_theta
    elif name == 'wedge':
        return cmd_wedge
    elif name == 'remainders':
        return cmd_remainders
    elif name == 'functional':
        return cmd_functional
    else:
        raise ValueError(f'cannot use command {name}')
