"""Digit expansions (b-adic, Cantor, Zeckendorf) and the exact point container.

Everything downstream works with exact rationals.  A point optionally
remembers the digit expansion that produced it, because truncation acts on
expansions, not values: 0.0111... and 0.1000... are the same number in base 2
but truncate differently, and the broad-sense net properties depend on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def to_digits(n, b, width=None):
    """Digits of n in base b, little-endian (n = sum d[r] * b**r).

    n = 0 gives [] unless width pads with zeros.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if b < 2:
        raise ValueError("base must be >= 2")
    out = []
    while n:
        n, d = divmod(n, b)
        out.append(d)
    if width is not None:
        if len(out) > width:
            raise ValueError("n needs more than width digits")
        out.extend([0] * (width - len(out)))
    return out


def from_digits(digits, b):
    n = 0
    for d in reversed(digits):
        if not 0 <= d < b:
            raise ValueError("digit out of range for base %d: %r" % (b, d))
        n = n * b + d
    return n


@dataclass(frozen=True)
class CantorBase:
    """Eventually periodic base sequence (b_1, b_2, ...) for Cantor expansions.

    head lists the leading bases, cycle repeats forever after it.  A constant
    base b is CantorBase((), (b,)).
    """

    head: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        for b in self.head + self.cycle:
            if b < 2:
                raise ValueError("every base must be >= 2")

    @classmethod
    def constant(cls, b):
        return cls((), (b,))

    @classmethod
    def periodic(cls, bases):
        return cls((), tuple(bases))

    def at(self, r):
        """Base bounding digit r (0-indexed): digit r lies in [0, at(r))."""
        if r < len(self.head):
            return self.head[r]
        return self.cycle[(r - len(self.head)) % len(self.cycle)]

    def prod(self, k):
        """B_k, the product of the first k bases (B_0 = 1)."""
        p = 1
        for r in range(k):
            p *= self.at(r)
        return p


def to_cantor_digits(n, base: CantorBase):
    """Little-endian digits of n w.r.t. a Cantor base: n = sum d[r] * B_r."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = []
    r = 0
    while n:
        n, d = divmod(n, base.at(r))
        out.append(d)
        r += 1
    return out


def from_cantor_digits(digits, base: CantorBase):
    n = 0
    for r in reversed(range(len(digits))):
        if not 0 <= digits[r] < base.at(r):
            raise ValueError("digit %d out of range at position %d" % (digits[r], r))
        n = n * base.at(r) + digits[r]
    return n


def fib_scale(upto):
    """Scale 1, 2, 3, 5, 8, ... (each term the sum of the previous two),
    listed while <= upto."""
    fs = [1, 2]
    while fs[-1] + fs[-2] <= upto:
        fs.append(fs[-1] + fs[-2])
    return fs


def zeckendorf(n):
    """Indices (r_1 < r_2 < ...) with n = sum of scale terms F_{r_i},
    no two consecutive.  Greedy from the top; the representation is unique.

    n = 0 returns () by convention (no representation) so scans over [0, N)
    stay uniform.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return ()
    fs = fib_scale(n)
    idx = []
    k = len(fs) - 1
    rem = n
    while rem:
        while fs[k] > rem:
            k -= 1
        idx.append(k)
        rem -= fs[k]
        k -= 2  # greedy already forces the gap; skip the neighbour anyway
    idx.reverse()
    return tuple(idx)


@dataclass(frozen=True)
class Expansion:
    """Digit expansion x = sum_{i>=1} d_i b^{-i}; digits read head-then-cycle.

    cycle (0,) is a terminating expansion, cycle (b-1,) an all-(b-1) tail.
    """

    base: int
    head: tuple
    cycle: tuple = (0,)

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        for d in self.head + self.cycle:
            if not 0 <= d < self.base:
                raise ValueError("digit out of range")

    def digit(self, i):
        """d_i, 1-indexed."""
        if i < 1:
            raise ValueError("digit positions start at 1")
        if i <= len(self.head):
            return self.head[i - 1]
        return self.cycle[(i - len(self.head) - 1) % len(self.cycle)]

    def value(self):
        b = self.base
        L = len(self.head)
        head_num = from_digits(list(reversed(self.head)), b)  # head as int, msd first
        val = Fraction(head_num, b ** L) if L else Fraction(0)
        p = len(self.cycle)
        cyc_num = from_digits(list(reversed(self.cycle)), b)
        # sum_{k>=0} cyc_num * b^{-L - p(k+1)} = cyc_num / (b^L (b^p - 1))
        val += Fraction(cyc_num, b ** L * (b ** p - 1))
        return val

    def complement(self):
        """Expansion of 1 - value: complement every digit (exact, no carry)."""
        b = self.base
        return Expansion(
            b,
            tuple(b - 1 - d for d in self.head),
            tuple(b - 1 - d for d in self.cycle),
        )


@dataclass(frozen=True)
class ExactPoint:
    """Rational point of [0, 1] with optional digit expansion and error bound.

    num == den (value 1) occurs only for streams whose digits are eventually
    all b-1; discrepancy engines count half-open boxes so such a point is
    never inside [0, t), which matches the closed formulas.  err bounds
    |true - num/den| for values certified to finite precision only (golden
    ratio tails, A-set permutation tails); err == 0 means exact.
    """

    num: int
    den: int
    expansion: Expansion | None = None
    err: float = 0.0

    def __post_init__(self):
        if self.den <= 0 or not 0 <= self.num <= self.den:
            raise ValueError("point must lie in [0, 1]")
        from math import gcd

        g = gcd(self.num, self.den)
        if g > 1:
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_fraction(cls, f, expansion=None, err=0.0):
        f = Fraction(f)
        return cls(f.numerator, f.denominator, expansion, err)

    @property
    def frac(self):
        return Fraction(self.num, self.den)

    @property
    def float_shadow(self):
        return self.num / self.den

    def __float__(self):
        return self.num / self.den


def greedy_expansion_digits(num, den, b, m):
    """First m digits of num/den in base b, terminating/greedy convention."""
    if not 0 <= num < den:
        raise ValueError("need a value in [0, 1)")
    out = []
    for _ in range(m):
        num *= b
        d, num = divmod(num, den)
        out.append(d)
    return out


def truncate(x, b, m):
    """[x]_{b,m}: keep the first m digits of x's b-adic expansion, as a Fraction.

    Respects the expansion x carries (digital streams can end in all b-1);
    bare rationals get the terminating expansion, except value 1 which only
    has the all-(b-1) one.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if isinstance(x, ExactPoint):
        if x.expansion is not None and x.expansion.base == b:
            t = 0
            for i in range(1, m + 1):
                t = t * b + x.expansion.digit(i)
            return Fraction(t, b ** m)
        if x.err:
            raise ValueError("cannot truncate an inexact point without its expansion")
        num, den = x.num, x.den
    else:
        f = Fraction(x)
        num, den = f.numerator, f.denominator
    if not 0 <= num <= den:
        raise ValueError("value outside [0, 1]")
    if num == den:  # value 1: forced all-(b-1) expansion
        return Fraction(b ** m - 1, b ** m)
    digits = greedy_expansion_digits(num, den, b, m)
    t = 0
    for d in digits:
        t = t * b + d
    return Fraction(t, b ** m)
