"""Rational interval arithmetic with outward rounding.

Every IntervalNumber holds exact Fraction endpoints.  Transcendental
functions (ln, exp, n-th roots) return enclosures whose width is about
2^-bits, computed with integer fixed-point series whose truncation
errors are bounded explicitly; no floating point is involved.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def round_down(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * 2 ** bits), 2 ** bits)


def round_up(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * 2 ** bits), 2 ** bits)


class IntervalNumber:
    """A closed interval [lo, hi] with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = _frac(lo)
        hi = lo if hi is None else _frac(hi)
        if lo > hi:
            raise ValueError("empty interval")
        self.lo, self.hi = lo, hi

    @staticmethod
    def coerce(x) -> "IntervalNumber":
        return x if isinstance(x, IntervalNumber) else IntervalNumber(x)

    def __repr__(self):
        return f"IntervalNumber({float(self.lo):.17g}, {float(self.hi):.17g})"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        x = _frac(x)
        return self.lo <= x <= self.hi

    def rounded(self, bits: int) -> "IntervalNumber":
        """Outward rounding to the grid 2^-bits (keeps denominators small)."""
        return IntervalNumber(round_down(self.lo, bits), round_up(self.hi, bits))

    def __add__(self, other):
        o = IntervalNumber.coerce(other)
        return IntervalNumber(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return IntervalNumber(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-IntervalNumber.coerce(other))

    def __rsub__(self, other):
        return IntervalNumber.coerce(other) - self

    def __mul__(self, other):
        o = IntervalNumber.coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return IntervalNumber(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = IntervalNumber.coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        return self * IntervalNumber(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return IntervalNumber.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        if self.lo >= 0 or k % 2 == 1:
            return IntervalNumber(self.lo ** k, self.hi ** k)
        if self.hi <= 0:
            return IntervalNumber(self.hi ** k, self.lo ** k)
        return IntervalNumber(0, max(self.lo ** k, self.hi ** k))

    def certainly_lt(self, other) -> bool:
        return self.hi < IntervalNumber.coerce(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > IntervalNumber.coerce(other).hi

    def compare_lt(self, other) -> bool | None:
        """True/False when certified, None when the intervals overlap."""
        o = IntervalNumber.coerce(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        return None


# ---------------------------------------------------------------------------
# elementary functions

def _atanh_fixed(a: int, b: int, scale_bits: int) -> tuple[int, int]:
    """Bounds (lo, hi) on atanh(a/b) * 2^scale_bits for 0 <= a/b <= 1/3."""
    if a == 0:
        return 0, 0
    one = 1 << scale_bits
    a2, b2 = a * a, b * b
    # y^(2i+1) * 2^s, bounded below and above
    p_lo = one * a // b
    p_hi = -(-one * a // b)
    s_lo = s_hi = 0
    i = 0
    while True:
        s_lo += p_lo // (2 * i + 1)
        s_hi += -(-p_hi // (2 * i + 1))
        i += 1
        p_lo = p_lo * a2 // b2
        p_hi = -(-p_hi * a2 // b2)
        # tail <= y^(2i+1) / ((2i+1)(1 - y^2)) <= (9/8) y^(2i+1)/(2i+1)
        tail = -(-9 * p_hi // (8 * (2 * i + 1)))
        if tail <= 1:
            return s_lo, s_hi + tail + 1


@lru_cache(maxsize=None)
def ln2(bits: int) -> IntervalNumber:
    lo, hi = _atanh_fixed(1, 3, bits + 4)
    return IntervalNumber(Fraction(2 * lo, 2 ** (bits + 4)), Fraction(2 * hi, 2 ** (bits + 4))).rounded(bits + 2)


def _ln_rational(x: Fraction, bits: int) -> IntervalNumber:
    if x <= 0:
        raise ValueError("logarithm of a non-positive number")
    if x == 1:
        return IntervalNumber(0)
    k = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** k
    if m < 1:
        m *= 2
        k -= 1
    # m in [1, 2): ln m = 2 atanh((m - 1)/(m + 1)), argument below 1/3
    y = (m - 1) / (m + 1)
    guard = bits + 8 + max(k, -k).bit_length()
    lo, hi = _atanh_fixed(y.numerator, y.denominator, guard)
    lnm = IntervalNumber(Fraction(2 * lo, 2 ** guard), Fraction(2 * hi, 2 ** guard))
    return (lnm + ln2(guard) * k).rounded(bits + 4)


def ln(x, bits: int = 128) -> IntervalNumber:
    """Enclosure of the natural logarithm (monotone, so endpoints suffice)."""
    x = IntervalNumber.coerce(x)
    if x.lo <= 0:
        raise ValueError("logarithm of an interval reaching zero")
    lo = _ln_rational(x.lo, bits)
    hi = lo if x.hi == x.lo else _ln_rational(x.hi, bits)
    return IntervalNumber(lo.lo, hi.hi)


def log_base(x, base, bits: int = 128) -> IntervalNumber:
    return ln(x, bits) / ln(base, bits)


def _exp_rational(r: Fraction, bits: int) -> IntervalNumber:
    if r == 0:
        return IntervalNumber(1)
    if r < 0:
        e = _exp_rational(-r, bits + 2)
        return IntervalNumber(1 / e.hi, 1 / e.lo).rounded(bits + 4)
    # halve until r / 2^j <= 1/2, then square j times
    j = 0
    while r / 2 ** j > Fraction(1, 2):
        j += 1
    t = r / 2 ** j
    guard = bits + 2 * j + 16 + math.ceil(r).bit_length()
    s = Fraction(0)
    term = Fraction(1)
    n = 0
    while True:
        s += term
        n += 1
        term = round_down(term * t / n, guard + 8)
        # remainder after the terms summed so far: <= 2 t^n / n! <= 2^(1-n) / n!
        bound = Fraction(2, 2 ** n * math.factorial(n))
        if bound < Fraction(1, 2 ** (guard + 4)):
            break
    lo = round_down(s, guard)
    # rounding loss per term, including what it inherits from the previous
    # term (t / i <= 1/2), stays below 2^-(guard+7)
    hi = round_up(s + bound + Fraction(n + 1, 2 ** (guard + 7)), guard)
    lo_v, hi_v = lo, hi
    for _ in range(j):
        lo_v = round_down(lo_v * lo_v, guard)
        hi_v = round_up(hi_v * hi_v, guard)
    return IntervalNumber(lo_v, hi_v)


def exp(x, bits: int = 128) -> IntervalNumber:
    x = IntervalNumber.coerce(x)
    lo = _exp_rational(x.lo, bits)
    hi = lo if x.hi == x.lo else _exp_rational(x.hi, bits)
    return IntervalNumber(lo.lo, hi.hi)


def _iroot(a: int, n: int) -> int:
    """floor(a^(1/n)) for a >= 0."""
    if a < 2:
        return a
    x = 1 << ((a.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x ** n > a:
        x -= 1
    while (x + 1) ** n <= a:
        x += 1
    return x


def nth_root(x, n: int, bits: int = 128) -> IntervalNumber:
    """Enclosure of x^(1/n) for x >= 0 (exact integer root bracketing)."""
    x = IntervalNumber.coerce(x)
    if x.lo < 0:
        raise ValueError("root of a negative number")
    scale = 2 ** (n * bits)
    lo = _iroot(math.floor(x.lo * scale), n)
    top = math.ceil(x.hi * scale)
    hi = _iroot(top, n)
    if hi ** n < top:
        hi += 1
    return IntervalNumber(Fraction(lo, 2 ** bits), Fraction(hi, 2 ** bits))


def power(x, y, bits: int = 128) -> IntervalNumber:
    """x^y = exp(y ln x) for x > 0."""
    return exp(IntervalNumber.coerce(y) * ln(x, bits + 8), bits)
