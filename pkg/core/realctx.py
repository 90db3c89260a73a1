# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

'''
Configurable-precision real arithmetic.

A :class:`RealCtx` owns a private mpmath context whose working precision is
``bits`` mantissa bits. Every real quantity in the package is produced through
one of these contexts, so two scans with different precision never interfere.
Each elementary step (``+ - * /``, ``exp``, ``log``, ``sqrt``) is correctly
rounded by mpmath to within one ulp, i.e. a relative error of at most
``2**(1-bits)``; fractional powers go through ``exp(p*log(x))`` and stay within
``2**(4-bits)`` relative error for the magnitudes used here.

Comparisons never use hidden epsilons: :attr:`RealCtx.tolerance` is
``2**-(bits//2)`` and is scaled by the magnitude of the compared quantity.
'''

from fractions import Fraction

from mpmath.ctx_mp import MPContext

from .exact import exact_root

DEFAULT_BITS = 192
MIN_BITS = 53


def is_exact(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class RealCtx:
    """Real arithmetic at a fixed number of mantissa bits.

    Args:
        bits (int): mantissa bits, at least 53.

    Raises:
        ValueError: precision below 53 bits.
    """

    def __init__(self, bits=DEFAULT_BITS):
        bits = int(bits)
        if bits < MIN_BITS:
            raise ValueError(f'precision must be at least {MIN_BITS} bits, got {bits}')
        self.bits = bits
        self.mp = MPContext()
        self.mp.prec = bits

    def __reduce__(self):
        return (RealCtx, (self.bits,))

    def __repr__(self):
        return f'RealCtx(bits={self.bits})'

    def __eq__(self, other):
        return isinstance(other, RealCtx) and other.bits == self.bits

    def __hash__(self):
        return hash(('RealCtx', self.bits))

    @property
    def tolerance(self):
        return self.mp.mpf(2) ** (-(self.bits // 2))

    @property
    def pi(self):
        return +self.mp.pi

    def mpf(self, value):
        """Convert an int, Fraction, string or mpf into this context."""
        if isinstance(value, Fraction):
            return self.mp.mpf(value.numerator) / value.denominator
        return self.mp.mpf(value)

    def rpow(self, base, p):
        """``base ** p`` for a rational exponent ``p``.

        Integer exponents and perfect powers of rational bases are computed
        exactly before rounding; everything else uses ``exp(p*log(base))``.
        """
        p = Fraction(p)
        if is_exact(base):
            base = Fraction(base)
            if base < 0:
                raise ValueError(f'negative base {base} for fractional power {p}')
            if base == 0:
                if p <= 0:
                    raise ValueError('zero base with non-positive exponent')
                return self.mp.zero
            if p.denominator == 1:
                return self.mpf(base ** p.numerator)
            root = exact_root(base, p.denominator)
            if root is not None:
                return self.mpf(root ** p.numerator)
            log_base = self.mp.log(base.numerator) - self.mp.log(base.denominator)
            return self.mp.exp(self.mpf(p) * log_base)
        base = self.mpf(base)
        if base < 0:
            raise ValueError(f'negative base {base} for fractional power {p}')
        if base == 0:
            return self.mp.zero
        if p.denominator == 1:
            return base ** p.numerator
        return self.mp.exp(self.mpf(p) * self.mp.log(base))

    def root(self, base, d):
        return self.rpow(base, Fraction(1, d))

    def sqrt(self, value):
        if is_exact(value):
            return self.rpow(value, Fraction(1, 2))
        return self.mp.sqrt(value)

    def scale_tol(self, scale=None, tol=None):
        tol = self.tolerance if tol is None else self.mpf(tol)
        if scale is None:
            return tol
        return tol * max(self.mp.one, abs(self.mpf(scale)))

    def sign(self, value, scale=None, tol=None):
        """Sign of ``value``; reals within the scaled tolerance count as zero."""
        if is_exact(value):
            return (value > 0) - (value < 0)
        value = self.mpf(value)
        if abs(value) <= self.scale_tol(scale, tol):
            return 0
        return 1 if value > 0 else -1

    def is_close(self, a, b, scale=None, tol=None):
        if is_exact(a) and is_exact(b):
            return a == b
        if scale is None:
            scale = max(abs(self.mpf(a)), abs(self.mpf(b)))
        return abs(self.mpf(a) - self.mpf(b)) <= self.scale_tol(scale, tol)

    def power_sum(self, a, b, p):
        """``sum(k**p for k in a..b)`` for integers ``0 <= a``, rational ``p > -1``.

        Short ranges are summed term by term. Long ranges sum a head directly
        and the tail with the Euler-Maclaurin formula, whose correction terms
        decay geometrically once the lower end exceeds the precision in bits.
        Integer ``p = 1`` is exact.
        """
        p = Fraction(p)
        if a < 0:
            raise ValueError(f'power sums start at a nonnegative index, got {a}')
        if b < a:
            return self.mp.zero
        if a == 0:
            if p <= 0:
                raise ValueError('0**p undefined for p <= 0')
            a = 1
            if b < a:
                return self.mp.zero
        if p == 1:
            return self.mpf(Fraction((a + b) * (b - a + 1), 2))

        cutoff = max(64, self.bits)
        if b - a <= 4 * cutoff:
            return self.mp.fsum(self.rpow(k, p) for k in range(a, b + 1))
        split = max(a, cutoff)
        head = self.mp.fsum(self.rpow(k, p) for k in range(a, split))
        return head + self._euler_maclaurin(split, b, p)

    def _euler_maclaurin(self, a, b, p):
        mp = self.mp
        pf = self.mpf(p)
        A, B = self.mpf(a), self.mpf(b)
        total = (self.rpow(b, p + 1) - self.rpow(a, p + 1)) / (pf + 1)
        total += (self.rpow(a, p) + self.rpow(b, p)) / 2
        eps = mp.mpf(2) ** (-self.bits - 8)
        falling = pf
        for i in range(1, 4 * self.bits):
            r = 2 * i - 1
            deriv = falling * (mp.power(B, pf - r) - mp.power(A, pf - r))
            term = mp.bernoulli(2 * i) / mp.factorial(2 * i) * deriv
            total += term
            if abs(term) <= eps * abs(total):
                break
            falling *= (pf - r) * (pf - r - 1)
        return total
