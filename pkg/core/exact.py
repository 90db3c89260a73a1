# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Exact arithmetic layer.

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator, division by zero raises ``ZeroDivisionError``).
:class:`Polynomial` wraps a ``sympy.Poly`` over QQ and exposes its
coefficients as Fractions. Sturm chains come from ``sympy.Poly.sturm``. On
top of these live the symmetric functions, rising factorials and the Taylor
coefficients of ``(1+x)**(a/n)``.
'''

import math
from fractions import Fraction
from functools import lru_cache

import sympy

BigRational = Fraction


def integer_root(value, d):
    """Floor of the ``d``-th root of a nonnegative integer."""
    if value < 0:
        raise ValueError(f'integer_root of negative value {value}')
    if d < 1:
        raise ValueError(f'root degree must be positive, got {d}')
    if value < 2 or d == 1:
        return value
    if d == 2:
        return math.isqrt(value)
    x = 1 << ((value.bit_length() + d - 1) // d)
    while True:
        y = ((d - 1) * x + value // x ** (d - 1)) // d
        if y >= x:
            return x
        x = y


def exact_root(value, d):
    """The exact rational ``d``-th root of ``value >= 0``, or None if irrational."""
    value = Fraction(value)
    if value < 0:
        raise ValueError(f'exact_root of negative value {value}')
    num = integer_root(value.numerator, d)
    if num ** d != value.numerator:
        return None
    den = integer_root(value.denominator, d)
    if den ** d != value.denominator:
        return None
    return Fraction(num, den)


def compare_power(lhs, rhs, d):
    """Sign of ``lhs - rhs**(1/d)`` for rationals ``lhs`` and ``rhs >= 0``.

    Decided without rounding by raising both sides to the ``d``-th power.
    """
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    if rhs < 0:
        raise ValueError(f'cannot take root of negative {rhs}')
    if lhs < 0:
        return -1
    diff = lhs ** d - rhs
    return (diff > 0) - (diff < 0)


_X = sympy.Symbol('x')


def _rational(value):
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _fraction(value):
    return Fraction(int(value.p), int(value.q))


class Polynomial:
    """Univariate polynomial over the rationals, backed by ``sympy.Poly`` on QQ.

    ``coefficients[i]`` is the coefficient of ``x**i`` as a Fraction. Trailing
    zeros are trimmed so equal polynomials have equal representations; the
    zero polynomial has degree -1.
    """

    __slots__ = ('_poly', '_coeffs')

    def __init__(self, coefficients=()):
        if isinstance(coefficients, sympy.Poly):
            poly = coefficients
        else:
            coeffs = [_rational(c) for c in coefficients]
            poly = sympy.Poly.from_list(coeffs[::-1] or [0], _X, domain=sympy.QQ)
        self._poly = poly
        self._coeffs = () if poly.is_zero else tuple(_fraction(c) for c in reversed(poly.all_coeffs()))

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def monomial(cls, power, coefficient=1):
        return cls([0] * power + [coefficient])

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots):
        poly = sympy.Poly(1, _X, domain=sympy.QQ)
        for r in roots:
            poly = poly * sympy.Poly(_X - _rational(r), _X, domain=sympy.QQ)
        return cls(poly)

    @property
    def poly(self):
        """The underlying ``sympy.Poly``."""
        return self._poly

    @property
    def coefficients(self):
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1

    @property
    def leading(self):
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self):
        return not self._coeffs

    def __getitem__(self, power):
        if 0 <= power < len(self._coeffs):
            return self._coeffs[power]
        return Fraction(0)

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = _as_poly(other)
            if other is None:
                return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f'Polynomial({self._poly.as_expr()})'

    def __neg__(self):
        return Polynomial(-self._poly)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return Polynomial(self._poly + other._poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return Polynomial(self._poly - other._poly)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return Polynomial(other._poly - self._poly)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return Polynomial(self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f'polynomial powers need a nonnegative integer, got {exponent}')
        return Polynomial(self._poly ** exponent)

    def __call__(self, value):
        """Exact evaluation for int/Fraction arguments, Horner otherwise."""
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return _fraction(self._poly.eval(_rational(value)))
        mp = value.context
        result = mp.zero
        for c in reversed(self._coeffs):
            result = result * value + mp.mpf(c.numerator) / c.denominator
        return result

    def evaluate_real(self, ctx, value):
        """Horner evaluation with coefficients rounded into ``ctx``."""
        value = ctx.mpf(value)
        result = ctx.mp.zero
        for c in reversed(self._coeffs):
            result = result * value + ctx.mpf(c)
        return result

    def compose(self, other):
        """``self(other(x))``."""
        return Polynomial(self._poly.compose(_as_poly(other)._poly))

    def shift(self, a):
        """``self(x + a)``; ``shift(-1)`` is the substitution K -> K-1."""
        return Polynomial(self._poly.shift(_rational(a)))

    def derivative(self):
        return Polynomial(self._poly.diff(_X))

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError('polynomial division by zero')
        quotient, remainder = self._poly.div(other._poly)
        return Polynomial(quotient), Polynomial(remainder)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def sign_at_infinity(self, negative=False):
        if self.is_zero():
            return 0
        s = 1 if self.leading > 0 else -1
        if negative and self.degree % 2:
            s = -s
        return s


def _as_poly(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Polynomial.constant(value)
    return None


def sturm_sequence(poly):
    """Sturm chain of the square-free part of ``poly`` (``sympy.Poly.sturm``)."""
    if poly.is_zero():
        raise ValueError('Sturm sequence of the zero polynomial')
    return [Polynomial(p) for p in poly.poly.sturm()]


def sign_changes(values):
    """Sign changes in a sequence, zeros skipped."""
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(poly, a, b=None):
    """Number of distinct real roots of ``poly`` in ``(a, b]``; ``b=None`` means ``(a, inf)``."""
    sequence = sturm_sequence(poly)
    at_a = sign_changes([p(Fraction(a)) for p in sequence])
    if b is None:
        at_b = sign_changes([p.sign_at_infinity() for p in sequence])
    else:
        at_b = sign_changes([p(Fraction(b)) for p in sequence])
    return at_a - at_b


def root_bound(poly):
    """Cauchy bound: every real root lies in ``[-bound, bound]``."""
    if poly.degree < 1:
        return Fraction(0)
    lead = abs(poly.leading)
    return 1 + max(abs(c) / lead for c in poly.coefficients[:-1])


def elementary_symmetric(values, j):
    """Exact ``sigma_j`` of the multiset ``values``; ``sigma_0 = 1``.

    Raises:
        ValueError: ``j`` outside ``[0, len(values)]``.
    """
    values = list(values)
    if not 0 <= j <= len(values):
        raise ValueError(f'elementary_symmetric order {j} outside [0, {len(values)}]')
    # e[i] holds sigma_i of the values seen so far
    e = [1] + [0] * j
    for v in values:
        for i in range(j, 0, -1):
            e[i] += e[i - 1] * v
    return e[j]


def s_constant(j, m):
    """Closed forms of ``s_j(m) = sigma_j(1, ..., m)`` for j in {1, 2, 3}."""
    if m < 0:
        raise ValueError(f's_constant needs m >= 0, got {m}')
    if j == 1:
        return m * (m + 1) // 2
    elif j == 2:
        return (m - 1) * m * (m + 1) * (3 * m + 2) // 24
    elif j == 3:
        return (m - 2) * (m - 1) * m ** 2 * (m + 1) ** 2 // 48
    else:
        raise ValueError(f'no closed form for s_{j}, use elementary_symmetric')


@lru_cache(maxsize=None)
def s_hat(n, l):
    """``s_l(n-1)`` for ``0 <= l <= n-1``, ``n!`` at ``l = n``, zero elsewhere."""
    if 0 <= l <= n - 1:
        return elementary_symmetric(range(1, n), l)
    if l == n:
        return math.factorial(n)
    return 0


def rising_factorial(x, n):
    """``x (x+1) ... (x+n-1)``; exact for int/Fraction, real for mpf."""
    if n < 0:
        raise ValueError(f'rising factorial order must be >= 0, got {n}')
    result = 1
    for i in range(n):
        result = result * (x + i)
    return result


@lru_cache(maxsize=None)
def rising_factorial_poly(n):
    """``K^(n rising)`` expanded in K; coefficient of ``K**(n-j)`` is ``s_j(n-1)``."""
    if n < 0:
        raise ValueError(f'rising factorial order must be >= 0, got {n}')
    return Polynomial.from_roots(-i for i in range(n))


def taylor_coefficient(alpha, s):
    """Binomial series coefficient ``alpha (alpha-1) ... (alpha-s+1) / s!``."""
    alpha = Fraction(alpha)
    result = Fraction(1)
    for i in range(s):
        result *= (alpha - i) / (i + 1)
    return result


def lambda_coefficient(a, n, s):
    """Taylor coefficient of ``x**s`` in ``(1+x)**(a/n)``."""
    if a not in (1, 2):
        raise ValueError(f'lambda_coefficient needs a in {{1, 2}}, got {a}')
    if n < 2:
        raise ValueError(f'lambda_coefficient needs n >= 2, got {n}')
    if s < 1:
        raise ValueError(f'lambda_coefficient needs s >= 1, got {s}')
    return taylor_coefficient(Fraction(a, n), s)


def taylor_partial_sum(a, n, l, x, alternating=False):
    """``sum_{s<=l} (+-1)**s Lambda_s x**s``, exact for rational ``x``.

    For even ``l`` and ``x > 0`` this is a lower bound of ``(1+x)**(a/n)`` and
    the sum to ``l-1`` an upper bound. With ``alternating`` it bounds
    ``(1-x)**(a/n)`` from above for ``0 < x < 1``.
    """
    total = 1
    for s in range(1, l + 1):
        term = lambda_coefficient(a, n, s) * x ** s
        total = total + (-term if alternating and s % 2 else term)
    return total


def stirling_bracket(n, ctx):
    """``(sqrt(2 pi) e**-n n**(n+1/2), e**(1-n) n**(n+1/2))`` around ``n!``."""
    mp = ctx.mp
    base = ctx.rpow(n, Fraction(2 * n + 1, 2))
    lower = mp.sqrt(2 * mp.pi) * mp.exp(-n) * base
    upper = mp.exp(1 - n) * base
    return lower, upper


def mother_bracket(n, K, ctx):
    """``(K(K+n-1), (K^(n rising))**(2/n), (K+(n-1)/2)**2)`` at real ``K > 0``."""
    K = ctx.mpf(K)
    middle = ctx.rpow(rising_factorial(K, n), Fraction(2, n))
    return K * (K + n - 1), middle, (K + ctx.mpf(Fraction(n - 1, 2))) ** 2
