"""One-dimensional sequence generators: radical inverses and their relatives.

Every generator hands back ExactPoint values.  Permuted digits can leave an
infinite tail sum_{r>=L} sigma_r(0) b^{-r-1}; constant and periodic
permutation tails close it as an exact geometric series, the A-set rule gets
a certified truncation instead (err > 0 marks those points).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .digits import (
    CantorBase,
    ExactPoint,
    Expansion,
    to_cantor_digits,
    to_digits,
    zeckendorf,
)
from .perms import PermSeq, a_set_contains, identity, parse_permseq, tau

DEFAULT_PRECISION = 64  # bits certified for non-closable tails


class Sequence:
    """Handle with point(n) -> ExactPoint; base is the b-adic base or None."""

    base = None
    kind = "?"

    def point(self, n):
        raise NotImplementedError

    def points(self, N):
        return [self.point(n) for n in range(N)]


def radical_inverse(n, b):
    """Y_b(n) = sum n_r b^{-r-1} as a Fraction."""
    if n < 0:
        raise ValueError("n must be >= 0")
    num, den = 0, 1
    while n:
        n, d = divmod(n, b)
        num = num * b + d
        den *= b
    return Fraction(num, den)


class Vdc(Sequence):
    """The plain van der Corput sequence in base b."""

    def __init__(self, b):
        if b < 2:
            raise ValueError("base must be >= 2")
        self.base = b
        self.kind = "vdc"

    def point(self, n):
        digits = to_digits(n, self.base)
        num = 0
        for d in digits:  # digit r of n becomes output digit r+1
            num = num * self.base + d
        return ExactPoint(
            num, self.base ** len(digits), Expansion(self.base, tuple(digits))
        )

    def spec(self):
        return "vdc:b=%d" % self.base


def _tail_digits_and_value(permseq: PermSeq, start, b, precision):
    """Digits sigma_r(0) for r >= start and their value sum_{r>=start}
    sigma_r(0) b^{-r-1}.

    Returns (head_digits, cycle_digits, value, err): exact with err 0 for
    eventually periodic tails; A-set tails are truncated once the remainder
    drops below 2**-precision, with cycle_digits None.
    """
    cyc = permseq.tail_cycle()
    if cyc is not None:
        cstart, perms = cyc
        head = [permseq.at(r)(0) for r in range(start, max(start, cstart))]
        r0 = max(start, cstart)
        p = len(perms)
        cycle = tuple(perms[(r0 - cstart + i) % p](0) for i in range(p))
        val = Fraction(0)
        for i, d in enumerate(head):
            val += Fraction(d, b ** (start + i + 1))
        cyc_num = 0
        for d in cycle:
            cyc_num = cyc_num * b + d
        val += Fraction(cyc_num, b ** r0 * (b ** p - 1))
        return tuple(head), cycle, val, 0.0
    # A-set tail: truncate with a certified bound
    depth = start
    while b ** depth < 2 ** precision:
        depth += 1
    head = tuple(permseq.at(r)(0) for r in range(start, depth))
    val = Fraction(0)
    for i, d in enumerate(head):
        val += Fraction(d, b ** (start + i + 1))
    return head, None, val, float(Fraction(1, b ** depth))


class Gvdc(Sequence):
    """Generalized van der Corput: digit r of n passes through sigma_r."""

    def __init__(self, b, permseq: PermSeq, precision=DEFAULT_PRECISION):
        if permseq.b != b:
            raise ValueError("permutation sequence base mismatch")
        self.base = b
        self.permseq = permseq
        self.precision = precision
        self.kind = "gvdc"

    def point(self, n):
        b = self.base
        digits = to_digits(n, b)
        L = len(digits)
        head = [self.permseq.at(r)(d) for r, d in enumerate(digits)]
        num = 0
        for d in head:
            num = num * b + d
        val = Fraction(num, b ** L) if L else Fraction(0)
        thead, tcycle, tval, err = _tail_digits_and_value(
            self.permseq, L, b, self.precision
        )
        val += tval
        full_head = tuple(head) + thead
        if tcycle is not None:
            exp = Expansion(b, full_head, tcycle)
            return ExactPoint(val.numerator, val.denominator, exp)
        exp = Expansion(b, full_head, (0,))
        return ExactPoint(val.numerator, val.denominator, exp, err)


class CantorVdc(Sequence):
    """Van der Corput over a Cantor base, with optional per-position perms.

    perms is None (identity everywhere) or (prefix_perms, cycle_perms) whose
    cycle length is a multiple of the base cycle so the tail closes exactly;
    per-position bases must match.
    """

    def __init__(self, cbase: CantorBase, perms=None):
        self.cbase = cbase
        self.base = None
        self.kind = "cantor"
        if perms is None:
            self.prefix_perms, self.cycle_perms = (), None
        else:
            self.prefix_perms, self.cycle_perms = tuple(perms[0]), tuple(perms[1])
            if len(self.prefix_perms) < len(cbase.head):
                raise ValueError("perm prefix must cover the base head")
            k = len(cbase.cycle)
            if self.cycle_perms and len(self.cycle_perms) % k != 0:
                raise ValueError("perm cycle must be a multiple of the base cycle")
        for r, p in enumerate(self.prefix_perms):
            if p.b != cbase.at(r):
                raise ValueError("perm base mismatch at position %d" % r)
        if self.cycle_perms:
            r0 = len(self.prefix_perms)
            for i, p in enumerate(self.cycle_perms):
                if p.b != cbase.at(r0 + i):
                    raise ValueError("perm cycle base mismatch")

    def perm_at(self, r):
        if r < len(self.prefix_perms):
            return self.prefix_perms[r]
        if self.cycle_perms:
            return self.cycle_perms[(r - len(self.prefix_perms)) % len(self.cycle_perms)]
        return identity(self.cbase.at(r))

    def point(self, n):
        digits = to_cantor_digits(n, self.cbase)
        L = len(digits)
        val = Fraction(0)
        for r, d in enumerate(digits):
            val += Fraction(self.perm_at(r)(d), self.cbase.prod(r + 1))
        # tail of sigma_r(0) for r >= L: exactly periodic past the prefix
        r0 = max(L, len(self.prefix_perms))
        for r in range(L, r0):
            val += Fraction(self.perm_at(r)(0), self.cbase.prod(r + 1))
        if self.cycle_perms:
            k = len(self.cycle_perms)
            # positions r0, r0+1, ..., r0+k-1 then the block repeats with
            # total weight 1/P per turn, P the product over one perm cycle
            P = 1
            for i in range(k):
                P *= self.cbase.at(r0 + i)
            block = Fraction(0)
            for i in range(k):
                block += Fraction(
                    self.perm_at(r0 + i)(0), self.cbase.prod(r0 + i + 1)
                )
            val += block * Fraction(P, P - 1)
        return ExactPoint(val.numerator, val.denominator)


_SQRT5_BITS = 192
_SQRT5_LO = Fraction(isqrt(5 << (2 * _SQRT5_BITS)), 1 << _SQRT5_BITS)


class Golden(Sequence):
    """beta-adic van der Corput for the golden ratio: Zeckendorf indices
    r_i of n map to y_n = sum beta^{-(r_i + 1)}.

    Exact arithmetic in Z[beta] (beta^-k = p_k + q_k beta by the recurrence
    (p,q) -> (q - p, p)); the value is certified through a 192-bit bracket
    of sqrt(5), wide enough that float64 cancellation never matters.
    """

    def __init__(self):
        self.kind = "golden"
        self._pq = [(1, 0)]  # beta^0

    def _beta_pow(self, k):
        while len(self._pq) <= k:
            p, q = self._pq[-1]
            self._pq.append((q - p, p))
        return self._pq[k]

    def point(self, n):
        P = Q = 0
        for r in zeckendorf(n):
            p, q = self._beta_pow(r + 1)
            P += p
            Q += q
        # value = P + Q (1 + sqrt 5)/2 = (2P + Q + Q sqrt 5)/2
        val = (2 * P + Q + Q * _SQRT5_LO) / 2
        err = abs(Q) * 2.0 ** (-_SQRT5_BITS) if Q else 0.0
        return ExactPoint(val.numerator, val.denominator, None, err)

    def digit_string(self, n):
        """Zeckendorf digit string after the point: n=4 -> '101'."""
        idx = zeckendorf(n)
        if not idx:
            return "0"
        top = idx[-1] + 1
        return "".join("1" if i in set(r + 1 for r in idx) else "0" for i in range(1, top + 1))


def kakutani_step(x, b):
    """One step of the interval-exchange map: x in [1 - b^-k, 1 - b^-k-1)
    moves to x - 1 + b^-k + b^-k-1."""
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValueError("x must lie in [0, 1)")
    k = 0
    while x >= 1 - Fraction(1, b ** (k + 1)):
        k += 1
    return x - 1 + Fraction(1, b ** k) + Fraction(1, b ** (k + 1))


def odometer_add(x, n, b):
    """T_b^n(x) for rational x via digit addition with carry.

    The map acts as the b-adic adding machine on the digit string of x
    (least significant digit first), so n steps add the digits of n.  The
    carry always dies for rationals (their greedy expansion never ends in
    all b-1), except x values whose expansion would: those cannot arise here
    because greedy expansions of rationals < 1 are never eventually b-1.
    """
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValueError("x must lie in [0, 1)")
    ndigits = to_digits(n, b)
    num, den = x.numerator, x.denominator
    out = Fraction(0)
    consumed = Fraction(0)
    carry = 0
    i = 0
    while i < len(ndigits) or carry:
        num *= b
        d, num = divmod(num, den)
        consumed += Fraction(d, b ** (i + 1))
        total = d + (ndigits[i] if i < len(ndigits) else 0) + carry
        carry, nd = divmod(total, b)
        out += Fraction(nd, b ** (i + 1))
        i += 1
    return out + (x - consumed)


class Kakutani(Sequence):
    """Orbit (T_b^n(x0)) of the interval-exchange / adding machine."""

    def __init__(self, b, x0):
        self.base = b
        self.x0 = Fraction(x0)
        self.kind = "kakutani"
        if not 0 <= self.x0 < 1:
            raise ValueError("starting point must lie in [0, 1)")

    def point(self, n):
        val = odometer_add(self.x0, n, self.base)
        return ExactPoint(val.numerator, val.denominator)


def one_minus(p: ExactPoint, b=None):
    """1 - p, carrying the complement expansion (all-(b-1) tail for
    terminating p).  Needed so symmetrized streams keep the broad-sense
    net property under truncation."""
    if p.expansion is not None:
        exp = p.expansion.complement()
        return ExactPoint(p.den - p.num, p.den, exp, p.err)
    if b is not None and p.err == 0:
        # derive the greedy expansion, then complement
        num, den = p.num, p.den
        head = []
        while num:
            num *= b
            d, num = divmod(num, den)
            head.append(d)
            if len(head) > 4 * len(str(den)) * b:
                head = None  # non-terminating; complement of greedy still exact
                break
        if head is not None:
            exp = Expansion(b, tuple(b - 1 - d for d in head), (b - 1,))
            return ExactPoint(p.den - p.num, p.den, exp)
    return ExactPoint(p.den - p.num, p.den, None, p.err)


class Symmetrized(Sequence):
    """Interleaves x_n with 1 - x_n: point(2k) = x_k, point(2k+1) = 1 - x_k."""

    def __init__(self, inner: Sequence):
        self.inner = inner
        self.base = inner.base
        self.kind = "sym"

    def point(self, n):
        k, odd = divmod(n, 2)
        p = self.inner.point(k)
        return one_minus(p, self.base) if odd else p


def tent(x):
    """The tent map 1 - |2x - 1|."""
    x = Fraction(x)
    return 1 - abs(2 * x - 1)


def _parse_index_rule(text):
    text = text.strip()
    if text.startswith("affine(") and text.endswith(")"):
        u, v = (int(s) for s in text[len("affine(") : -1].split(","))
        if u <= 0 or v < 0:
            raise ValueError("affine rule needs u >= 1, v >= 0")
        return lambda n: u * n + v, text
    if text.startswith("power(") and text.endswith(")"):
        e = int(text[len("power(") : -1])
        if e < 1:
            raise ValueError("power must be >= 1")
        return lambda n: n ** e, text
    if text == "fibonacci":
        cache = [0, 1]

        def fib(n):
            while len(cache) <= n:
                cache.append(cache[-1] + cache[-2])
            return cache[n]

        return fib, text
    if text.startswith("digitsum(") and text.endswith(")"):
        q = int(text[len("digitsum(") : -1])

        def sq(n):
            s = 0
            while n:
                n, d = divmod(n, q)
                s += d
            return s

        return sq, text
    if text.startswith("floor_mult(") and text.endswith(")"):
        arg = text[len("floor_mult(") : -1]
        if arg == "sqrt2":
            return lambda n: isqrt(2 * n * n), text
        if arg == "golden":
            return lambda n: (n + isqrt(5 * n * n)) // 2, text
        xi = Fraction(arg)
        return lambda n: (n * xi.numerator) // xi.denominator, text
    if text.startswith("floor_power(") and text.endswith(")"):
        pq = Fraction(text[len("floor_power(") : -1])
        p, q = pq.numerator, pq.denominator

        def iroot(value, k):
            if value == 0:
                return 0
            r = int(round(value ** (1.0 / k)))
            while r ** k > value:
                r -= 1
            while (r + 1) ** k <= value:
                r += 1
            return r

        return lambda n: iroot(n ** p, q), text
    raise ValueError("unknown index rule %r" % text)


class IndexTransformed(Sequence):
    """Subsequence x_{k_n} for an index rule k."""

    def __init__(self, inner: Sequence, rule_text):
        self.inner = inner
        self.base = inner.base
        self.rule, self.rule_text = _parse_index_rule(rule_text)
        self.kind = "sub"

    def point(self, n):
        return self.inner.point(self.rule(n))


def _parse_kv(text):
    """'b=2,sigma=aset:id' -> dict; values may contain ':' freely."""
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise ValueError("expected key=value, got %r" % part)
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _parse_kv_grouped(text):
    """Like _parse_kv but commas inside a value are kept when the value
    opens with a construct that uses them (digit lists for sigma)."""
    # split on commas not directly before another key= token
    parts = []
    for chunk in text.split(","):
        if "=" in chunk or not parts:
            parts.append(chunk)
        else:
            parts[-1] += "," + chunk
    out = {}
    for part in parts:
        if not part:
            continue
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_sequence(spec):
    """Sequence mini-language.

    vdc:b=3 | gvdc:b=2,sigma=aset:id | cantor:bases=2,3 | golden: |
    kakutani:b=2,x0=1/3 | sym:<inner> | sub:<rule>:<inner> |
    gnut:... , nut:... , poly:...  (handled by the digital module).
    """
    spec = spec.strip()
    if ":" not in spec:
        raise ValueError("sequence spec needs a kind prefix: %r" % spec)
    kind, rest = spec.split(":", 1)
    if kind == "vdc":
        kv = _parse_kv(rest)
        return Vdc(int(kv["b"]))
    if kind == "gvdc":
        kv = _parse_kv_grouped(rest)
        b = int(kv["b"])
        return Gvdc(b, parse_permseq(kv.get("sigma", "const:id"), b))
    if kind == "cantor":
        kv = _parse_kv_grouped(rest)
        bases = tuple(int(s) for s in kv["bases"].split(","))
        return CantorVdc(CantorBase.periodic(bases))
    if kind == "golden":
        return Golden()
    if kind == "kakutani":
        kv = _parse_kv(rest)
        return Kakutani(int(kv["b"]), Fraction(kv.get("x0", "0")))
    if kind == "sym":
        return Symmetrized(parse_sequence(rest))
    if kind == "sub":
        rule, inner = rest.split(":", 1)
        return IndexTransformed(parse_sequence(inner), rule)
    if kind in ("gnut", "nut", "poly"):
        from . import digital

        return digital.parse_digital_sequence(kind, rest)
    raise ValueError("unknown sequence kind %r" % kind)
