"""Closed-form discrepancy values for the generated sequences.

Everything here evaluates an exact formula: psi-series with geometric
tail closure, digit recursions, and the published Hammersley and bound
expressions.  The brute-force counterparts live in discrepancy.py and
the test suite holds the two against each other.

Scaling convention: unless a docstring says otherwise, discrepancy
values come back multiplied by N (or N^2 for squared quantities), which
keeps them exact Fractions.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, inf, log, nextafter, prod, sqrt

import numpy as np

from .digits import greedy_expansion_digits, to_digits
from .generators import DEFAULT_PRECISION, Gvdc, radical_inverse
from .perms import PermSeq, a_set_contains, identity, tau
from .psi import psi_set

# Which integer's digits drive the theta shifts of the matrix formulas,
# and which van der Corput value drives the symmetrized L2 signs.  Both
# conventions were frozen by sweeping the candidates against the product
# oracles; see tests/test_formulas.py.
NUT_DIGITS_OF = "N"
SYM_L2_INDEX = 0

_QUAD_NAMES = frozenset({"phi_sq", "chi"})


def _ceil_log(b, n):
    """Smallest m >= 0 with b**m >= n."""
    m, p = 0, 1
    while p < n:
        p *= b
        m += 1
    return m


def _floor_log(b, n):
    """Largest m >= 0 with b**m <= n."""
    m, p = 0, b
    while p <= n:
        p *= b
        m += 1
    return m


def _dist(x):
    """Distance from x to the nearest integer."""
    x = Fraction(x)
    f = x - (x.numerator // x.denominator)
    return min(f, 1 - f)


@dataclass(frozen=True)
class TailPolicy:
    """Where the psi series switches from term-by-term evaluation to its
    closed tail.

    Past level finite_upto every argument N / b^j sits strictly inside
    the first piece, where each family member is a monomial through the
    origin, so the remaining sum is geometric.  cycle holds the
    permutations cycling through those levels (already rotated to start
    at finite_upto + 1); None when the rule is not eventually periodic.
    """

    m_star: int
    finite_upto: int
    cycle: tuple


def tail_policy(b, N, permseq, floor=0):
    """Split point for the series over sigma_{j-1} at argument N / b^j."""
    m_star = _ceil_log(b, N) + 1
    tc = permseq.tail_cycle()
    if tc is None:
        return TailPolicy(m_star, max(m_star, len(permseq.prefix), floor), None)
    start, perms = tc
    j0 = max(m_star, start, floor)
    p = len(perms)
    rotated = tuple(perms[(j0 - start + i) % p] for i in range(p))
    return TailPolicy(m_star, j0, rotated)


def _first_coef(b, perm, name, square=False):
    """Coefficient of the monomial the named function reduces to on the
    first piece (slope, squared slope, or quadratic coefficient)."""
    f = psi_set(b, perm).func(name)
    if name in _QUAD_NAMES:
        assert f.a[0] == 0 and f.s[0] == 0
        return f.c[0]
    assert f.a[0] == 0
    return f.s[0] ** 2 if square else f.s[0]


def _series(b, N, permseq, name, square=False, shifts=None,
            precision=DEFAULT_PRECISION, floor=0):
    """Value of sum_{j >= 1} f(N / b^j), f drawn from the psi family of
    sigma_{j-1}, optionally digit-shifted at finitely many positions.

    square=True sums the square of a linear member (the L2 cross term
    needs it).  Returns (value, err): err is 0.0 when the tail closed as
    an exact geometric series and otherwise a certified bound, below
    2^-precision, on the dropped remainder.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if shifts:
        floor = max(floor, max(shifts) + 1)
    pol = tail_policy(b, N, permseq, floor=floor)
    e = 2 if (square or name in _QUAD_NAMES) else 1

    def perm_at(r):
        p = permseq.at(r)
        v = shifts.get(r, 0) if shifts else 0
        return p.shift(v) if v else p

    total = Fraction(0)
    for j in range(1, pol.finite_upto + 1):
        f = psi_set(b, perm_at(j - 1)).func(name)
        v = f.eval_mod(Fraction(N, b ** j))
        total += v * v if square else v

    if pol.cycle is not None:
        p = len(pol.cycle)
        den = b ** (e * p) - 1
        for i, perm in enumerate(pol.cycle):
            coef = _first_coef(b, perm, name, square)
            if coef:
                total += coef * Fraction(
                    N ** e * b ** (e * p),
                    den * b ** (e * (pol.finite_upto + 1 + i)))
        return total, 0.0

    # A-set tail: levels switch between two candidate permutations with
    # no period, so extend the exact monomial terms until the worst-case
    # remainder drops below the precision target and certify the cut.
    sigma = permseq.tail[1]
    cmax = max(abs(_first_coef(b, q, name, square))
               for q in (sigma, tau(b).compose(sigma)))
    if cmax == 0:
        return total, 0.0
    thresh = Fraction(1, 2 ** precision)

    def rem(depth):
        return cmax * Fraction(N ** e, b ** (e * depth) * (b ** e - 1))

    J = pol.finite_upto
    while rem(J) > thresh:
        J += 1
    for j in range(pol.finite_upto + 1, J + 1):
        coef = _first_coef(b, permseq.at(j - 1), name, square)
        total += coef * Fraction(N ** e, b ** (e * j))
    return total, float(rem(J))


def psi_partial(b, permseq, N, m, name="psi_plus"):
    """Partial sum of the psi series through level m, no tail."""
    tot = Fraction(0)
    for j in range(1, m + 1):
        tot += psi_set(b, permseq.at(j - 1)).func(name).eval_mod(
            Fraction(N, b ** j))
    return tot


def gvdc_formulas(b, permseq, N, precision=DEFAULT_PRECISION):
    """Extreme and star discrepancy of the first N permuted van der
    Corput points, from the one-sided psi series.

    Returns {d_plus, d_minus, d, d_star, err}, all scaled by N; err
    bounds the tail dropped for non-periodic digit rules (0.0 when the
    tail closed exactly).
    """
    dp, e1 = _series(b, N, permseq, "psi_plus", precision=precision)
    dm, e2 = _series(b, N, permseq, "psi_minus", precision=precision)
    return {
        "d_plus": dp,
        "d_minus": dm,
        "d": dp + dm,
        "d_star": max(dp, dm),
        "err": e1 + e2,
    }


def _all_identity(permseq):
    tc = permseq.tail_cycle()
    if tc is None:
        return False
    return all(p.is_identity() for p in permseq.prefix) and all(
        p.is_identity() for p in tc[1])


def gvdc_l2_f_l1(b, permseq, N, precision=DEFAULT_PRECISION):
    """L2, diaphony and (identity rule only) L1 of the same prefix.

    Returns {l2_sq, f_sq_pi2, err} plus l1 when every permutation is the
    identity.  l2_sq is (N L2)^2, f_sq_pi2 is (N F)^2 / pi^2, l1 is
    N * L1, all exact Fractions.
    """
    s0, e0 = _series(b, N, permseq, "phi_sq", precision=precision)
    s1, e1 = _series(b, N, permseq, "phi_sum", precision=precision)
    s2, e2 = _series(b, N, permseq, "phi_sum", square=True, precision=precision)
    ch, e3 = _series(b, N, permseq, "chi", precision=precision)
    out = {
        "l2_sq": s0 / b + (s1 * s1 - s2) / (b * b),
        "f_sq_pi2": Fraction(4, b * b) * ch,
        "err": e0 / b + (2 * abs(float(s1)) * e1 + e1 * e1 + e2) / (b * b)
        + 4 * e3 / (b * b),
    }
    if _all_identity(permseq):
        out["l1"] = s1 / b
    return out


def nut_formulas(b, permseq, C, N, precision=DEFAULT_PRECISION, digits_of=None):
    """Discrepancies of a digit-matrix sequence via shifted psi series.

    The strictly upper part C of the matrix enters only through the
    digit shifts theta_r computed from the expansion of N (convention
    frozen as NUT_DIGITS_OF); psi and chi are shift-invariant, so d and
    f_sq_pi2 match the plain diagonal sequence while the one-sided and
    L2 values feel the shifts.  Keys as in gvdc_formulas plus l2_sq and
    f_sq_pi2.
    """
    src = NUT_DIGITS_OF if digits_of is None else digits_of
    if src not in ("N", "N-1"):
        raise ValueError("digits_of must be 'N' or 'N-1'")
    nd = to_digits(N - 1 if src == "N-1" else N, b)
    shifts = {}
    for r in sorted({rr for rr, _, _ in C.entries}):
        v = C.shift(r, nd)
        if v:
            shifts[r] = v
    floor = len(nd)
    dp, e1 = _series(b, N, permseq, "psi_plus", shifts=shifts,
                     precision=precision, floor=floor)
    dm, e2 = _series(b, N, permseq, "psi_minus", shifts=shifts,
                     precision=precision, floor=floor)
    s0, e3 = _series(b, N, permseq, "phi_sq", shifts=shifts,
                     precision=precision, floor=floor)
    s1, e4 = _series(b, N, permseq, "phi_sum", shifts=shifts,
                     precision=precision, floor=floor)
    s2, e5 = _series(b, N, permseq, "phi_sum", square=True, shifts=shifts,
                     precision=precision, floor=floor)
    ch, e6 = _series(b, N, permseq, "chi", precision=precision)
    return {
        "d_plus": dp,
        "d_minus": dm,
        "d": dp + dm,
        "d_star": max(dp, dm),
        "l2_sq": s0 / b + (s1 * s1 - s2) / (b * b),
        "f_sq_pi2": Fraction(4, b * b) * ch,
        "err": e1 + e2 + e3 / b
        + (2 * abs(float(s1)) * e4 + e4 * e4 + e5 + 4 * e6) / (b * b),
    }


def bf_star_b2(N):
    """N * D*(Y_2) as a nearest-integer sum; D and D* coincide here."""
    m = N.bit_length()
    tot = Fraction(N, 2 ** m)
    for r in range(1, m + 1):
        tot += _dist(Fraction(N, 2 ** r))
    return tot


def bf_star_b2_scaled(m):
    """2^m * (N D*(Y_2)) for every N = 0..2^m, as int64.

    Values stay far inside int64 for any m that fits in memory; handy
    for limsup scans and the distribution sweeps.
    """
    n = np.arange(2 ** m + 1, dtype=np.int64)
    tot = n.copy()
    for r in range(1, m + 1):
        t = n & ((1 << r) - 1)
        tot += np.minimum(t, (1 << r) - t) << (m - r)
    return tot


def swapped_star_scaled(m):
    """One-sided sums of the base-2 sequence swapped on the A-set blocks.

    Returns (plus, minus) int64 arrays over N = 0..2^m, scaled by 2^m,
    splitting the nearest-integer terms by A-set membership of j - 1.
    Levels past m are dropped, which undercounts each side by at most N
    in scaled units.
    """
    n = np.arange(2 ** m + 1, dtype=np.int64)
    plus = np.zeros_like(n)
    minus = np.zeros_like(n)
    for j in range(1, m + 1):
        t = n & ((1 << j) - 1)
        term = np.minimum(t, (1 << j) - t) << (m - j)
        if a_set_contains(j - 1):
            plus += term
        else:
            minus += term
    return plus, minus


def d_recursion_b2(N):
    """N * D(Y_2) by halving: D(2N) = D(N) and
    D(2N+1) = (D(N) + D(N+1) + 1) / 2, seeded at D(0) = 0.

    The seed value 1 at N = 1 is what the odd rule forces on itself.
    """
    memo = {0: Fraction(0), 1: Fraction(1)}

    def rec(n):
        if n not in memo:
            q, r = divmod(n, 2)
            memo[n] = rec(q) if r == 0 else (rec(q) + rec(q + 1) + 1) / 2
        return memo[n]

    return rec(N)


def y3_star(N):
    """N * D*(Y_3) = N * D(Y_3): psi series cut at m plus the N / 3^m cap."""
    m = _ceil_log(3, N)
    ps = psi_set(3, identity(3))
    tot = Fraction(N, 3 ** m)
    for r in range(1, m + 1):
        tot += ps.psi.eval_mod(Fraction(N, 3 ** r))
    return tot


def y3_recursion(x):
    """N * D(Y_3) extended to half-integers by the six-case descent in
    the last base-3 digit of 2x.

    Seeds D(0) = 0 and D(1/2) = 1/2; the half case at x = 1/2 is
    self-consistent, so the seed is the unique fixed point.
    """
    t = Fraction(x) * 2
    if t.denominator != 1 or t < 0:
        raise ValueError("x must be a nonnegative half-integer")
    memo = {0: Fraction(0), 1: Fraction(1, 2)}

    def rec(t):
        if t not in memo:
            q, r = divmod(t, 6)
            lo, half, hi = 2 * q, 2 * q + 1, 2 * q + 2
            third = Fraction(1, 3)
            if r == 0:
                v = rec(lo)
            elif r == 1:
                v = 2 * third * rec(lo) + third * rec(half) + third
            elif r == 2:
                v = third * rec(lo) + 2 * third * rec(half) + 2 * third
            elif r == 3:
                v = rec(half) + Fraction(1, 2)
            elif r == 4:
                v = third * rec(hi) + 2 * third * rec(half) + 2 * third
            else:
                v = 2 * third * rec(hi) + third * rec(half) + third
            memo[t] = v
        return memo[t]

    return rec(t.numerator)


def faure_l2_b2(N):
    """(N L2(Y_2))^2 from the nearest-integer closed form."""
    m = N.bit_length()
    s1 = bf_star_b2(N)
    s2 = Fraction(N * N, 3 * 4 ** m)
    for j in range(1, m + 1):
        s2 += _dist(Fraction(N, 2 ** j)) ** 2
    return (s1 * s1 + s2) / 4


def sym_l2_b2(N, index_offset=None):
    """(N L2)^2 of the symmetrized base-2 sequence, closed form.

    The sign of each squared term follows the binary digits of the van
    der Corput value at index N + offset; the default offset is the one
    the build froze against the product oracle.
    """
    off = SYM_L2_INDEX if index_offset is None else index_offset
    K = N + off
    if K < 0:
        raise ValueError("index out of range")
    m = max(N.bit_length(), K.bit_length())
    y = radical_inverse(K, 2)
    tot = Fraction(N * N, 3 * 4 ** m)
    for j in range(1, m + 1):
        w = _dist(Fraction(N, 2 ** j))
        tot += (1 - 2 * _dist(2 ** j * y)) * w * w
    return tot


@dataclass(frozen=True)
class DescentState:
    """The digit walk behind a local error value: eps[j] selects which
    phi enters at level j + 1, eta[j] is the integer carry in [0, b]."""

    eps: tuple
    eta: tuple


def descent_error(b, permseq, m, lam, N, return_state=False):
    """N-scaled local discrepancy N * Delta(lam / b^m) by digit descent.

    Walks the base-b digits of lam from least to most significant,
    carrying an integer eta_j in [0, b] built from the right slope of
    the previously selected phi; level j then contributes
    phi_{eps_j} of sigma_{j-1} at N / b^j.  Requires 1 <= N <= b^m.

    Counting is by digit-stream order: a point whose value meets the
    threshold through an all-(b-1) tail lies below it.  Away from such
    collisions this is the usual strict count of [0, lam / b^m).
    Maximizing over lam gives exactly the level-m partial sum of the
    psi_plus series (and minimizing, minus the psi_minus one).
    """
    if not 0 <= lam < b ** m:
        raise ValueError("lam must lie in [0, b^m)")
    if not 1 <= N <= b ** m:
        raise ValueError("N must lie in [1, b^m]")
    digs = to_digits(lam, b, width=m)
    # digs is little-endian, the lemma counts lam_1 .. lam_m from the top
    lam_j = lambda j: digs[m - j]
    eps = [0] * (m + 1)
    eta = [0] * (m + 1)
    eps[m] = eta[m] = lam_j(m)
    for j in range(m - 1, 0, -1):
        h = eps[j + 1]
        if h == 0:
            sl = Fraction(0)
        else:
            x = Fraction(N, b ** (j + 1))
            x -= x.numerator // x.denominator
            sl = psi_set(b, permseq.at(j)).phis[h].right_slope(x)
        v = lam_j(j) + Fraction(eta[j + 1], b) + sl / b
        assert v.denominator == 1 and 0 <= v <= b, "carry left [0, b]"
        eta[j] = int(v)
        eps[j] = eta[j] if eta[j] < b else 0
    total = Fraction(0)
    for j in range(1, m + 1):
        h = eps[j]
        if h:
            total += psi_set(b, permseq.at(j - 1)).phis[h].eval_mod(
                Fraction(N, b ** j))
    if return_state:
        return total, DescentState(tuple(eps[1:]), tuple(eta[1:]))
    return total


def discretize(alpha, b, permseq, m, N, precision=DEFAULT_PRECISION):
    """N-scaled local discrepancy at an arbitrary alpha in [0, 1].

    Rounds alpha to its m-digit cell [u, u + b^-m), finds the single
    element x of the first b^m points living in the cell, and reduces to
    the descent value at whichever cell edge keeps the count right: u
    when alpha <= x, else the upper edge.  Needs an eventually periodic
    digit rule so that x is exact.

    Returns {u, x, y, n, e} with e the exact N * Delta(alpha), counted
    in digit-stream order like descent_error (only visible when alpha
    collides with an all-(b-1) tail value).
    """
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    if not 1 <= N <= b ** m:
        raise ValueError("N must lie in [1, b^m]")
    if not permseq.is_eventually_periodic():
        raise ValueError("needs an eventually periodic digit rule")
    if alpha == 1:
        return {"u": Fraction(1), "x": None, "y": Fraction(1), "n": None,
                "e": Fraction(0)}
    scaled = alpha * b ** m
    lam = scaled.numerator // scaled.denominator
    u = Fraction(lam, b ** m)
    t = to_digits(lam, b, width=m)
    n = 0
    for r in range(m):
        n += permseq.at(r).inverse()(t[m - 1 - r]) * b ** r
    x = Gvdc(b, permseq, precision=precision).point(n).frac
    if alpha <= x:
        y, lam_y = u, lam
    else:
        y, lam_y = u + Fraction(1, b ** m), lam + 1
    ey = Fraction(0) if lam_y == b ** m else descent_error(
        b, permseq, m, lam_y, N)
    return {"u": u, "x": x, "y": y, "n": n, "e": ey + (y - alpha) * N}


def declerck_star(b, m):
    """Star discrepancy of the 2-D b-adic Hammersley set, closed form.

    Unscaled (the plain D* value); multiply by b^m to compare with the
    psi enclosure.  Valid for m >= 2 only.

    The case split is on the parity of the base.  For even bases the
    final b^-m term alternates sign with m, and odd m picks up an extra
    constant -(b-2)/(2b(b+1)) (zero when b = 2).  Every branch is pinned
    by the exact 2-D scanning engine: odd b on b in {3,5,7,9}, even b on
    b in {2,4,6,8,10,12}, with the even-base odd-m coefficients fitted on
    b in {2,4,6,8} and confirmed out of sample at b = 10 and b = 12.
    """
    if m < 2:
        raise ValueError("closed form requires m >= 2")
    bm = b ** m
    if b % 2:
        val = (Fraction(m * (b - 1), 4) + Fraction(5, 4) + Fraction(1, b)
               - Fraction(1, 4 * bm))
    else:
        val = (Fraction(m * b * b, 4 * (b + 1)) + Fraction(5, 4)
               + Fraction(2 * b + 3, 4 * (b + 1) ** 2))
        if m % 2:
            val += (-Fraction(b - 2, 2 * b * (b + 1))
                    + Fraction((b + 2) * (2 * b * b - b - 2),
                               4 * (b + 1) ** 2 * bm))
        else:
            val -= Fraction((b + 2) ** 2, 4 * (b + 1) ** 2 * bm)
    return val / bm


def hammersley_star_interval(b, m, sigmas=None):
    """Enclosure [T, T + 2] of b^m * D* for the 2-D Hammersley set.

    T is the larger of the two one-sided psi partial-sum maxima over
    anchor counts 1..b^m; the defect above T is known to sit in [0, 2].
    """
    if sigmas is None:
        sigmas = (identity(b),) * m
    if len(sigmas) != m:
        raise ValueError("need one permutation per digit level")
    bm = b ** m
    funcs = [psi_set(b, s) for s in sigmas]
    best_p = best_m = 0
    for N in range(1, bm + 1):
        sp = sm = 0
        for j in range(1, m + 1):
            M = b ** j
            t = N % M
            w = bm // M
            sp += funcs[j - 1].psi_plus.eval_scaled(t, M) * w
            sm += funcs[j - 1].psi_minus.eval_scaled(t, M) * w
        best_p = max(best_p, sp)
        best_m = max(best_m, sm)
    lo = Fraction(max(best_p, best_m), bm)
    return lo, lo + 2


def hammersley_lp(b, m):
    """N-scaled L1 and squared L2 of the plain 2-D Hammersley set,
    N = b^m: {l1: N*L1, l2_sq: (N*L2)^2}."""
    bm = b ** m
    c = Fraction(b * b - 1, 12 * b)
    l1 = Fraction(m * (b * b - 1), 12 * b) + Fraction(1, 2) + Fraction(1, 4 * bm)
    l2 = (m * m * c * c
          + m * (Fraction(3 * b ** 4 + 10 * b * b - 13, 720 * b * b)
                 + c * (1 - Fraction(1, 2 * bm)))
          + Fraction(3, 8) + Fraction(1, 4 * bm) - Fraction(1, 72 * bm * bm))
    return {"l1": l1, "l2_sq": l2}


def hammersley_sigma_l2(b, m, l):
    """(N L2)^2 of the 2-D Hammersley set whose first coordinate uses l
    identity digit maps and m - l reversals; position does not matter."""
    if not 0 <= l <= m:
        raise ValueError("l must lie in [0, m]")
    bm = b ** m
    c = Fraction(b * b - 1, 12 * b)
    return (c * c * ((m - 2 * l) ** 2 - m)
            + c * (1 - Fraction(1, 2 * bm)) * (2 * l - m)
            + m * Fraction(b ** 4 - 1, 90 * b * b)
            + Fraction(3, 8) + Fraction(1, 4 * bm) - Fraction(1, 72 * bm * bm))


def l_min(b, m):
    """Identity count minimizing hammersley_sigma_l2, clamped to [0, m].

    The unclamped vertex forms: even m gives m/2 - 2, m/2 - 1 or m/2 as
    b runs through 2, 3..6 and 7+; odd m gives (m-3)/2 for b <= 3 and
    (m-1)/2 above.
    """
    if m % 2 == 0:
        raw = m // 2 - 2 if b == 2 else (m // 2 - 1 if b <= 6 else m // 2)
    else:
        raw = (m - 3) // 2 if b <= 3 else (m - 1) // 2
    return min(m, max(0, raw))


# ---------------------------------------------------------------------------
# published bounds


_REL = 2.0 ** -45


def _up(x):
    """Nudge a float upward past any accumulated rounding."""
    return nextafter(x * (1.0 + _REL if x >= 0 else 1.0 - _REL), inf)


def _down(x):
    return nextafter(x * (1.0 - _REL if x >= 0 else 1.0 + _REL), -inf)


ASYMPTOTIC_KINDS = frozenset({"faure_kritzer", "atanassov_scrambled"})


def _b_tijdeman(N):
    return _up(log(N) / (3 * log(2)) + 1)


def _b_faure_general(N, b, alpha):
    return _up(alpha / log(b) * log(N) + max(2.0, 1.0 + 1.0 / b + alpha))


def _b_niederreiter_halton(N, bases):
    tot = 1.0
    for bj in bases:
        tot *= (bj - 1) / (2 * log(bj)) * log(N) + (bj + 1) / 2
    return _up(len(bases) + tot)


def _b_atanassov(N, bases):
    s = len(bases)
    main = prod((bj // 2) * log(N) / log(bj) + s for bj in bases) / factorial(s)
    rest = 0.0
    for k in range(s):
        term = bases[k] / factorial(k)
        for j in range(k):
            term *= (bases[j] // 2) * log(N) / log(bases[j]) + k
        rest += term
    return _up(main + rest)


def _b_atanassov_scrambled(N, bases):
    s = len(bases)
    lead = sum(log(bj) for bj in bases) / factorial(s)
    for bj in bases:
        lead *= bj * (1 + log(bj)) / ((bj - 1) * log(bj))
    return _up(lead * log(N) ** s)


def _b_faure_kritzer(N, s, b, t):
    c = ((b - 1) / (2 * log(b))) ** s / factorial(s)
    c *= b * b / (2.0 * (b * b - 1)) if b % 2 == 0 else 0.5
    return _up(c * b ** t * log(N) ** s)


def _b_faure_lemieux_1(N, b, s, t):
    L = log(N) / log(b)
    main = b ** t * ((b // 2) * L + s) ** s / factorial(s)
    rest = b ** t * sum(b / factorial(k) * ((b // 2) * L + k) ** k
                        for k in range(s))
    return _up(main + rest)


def _b_faure_lemieux_2(N, b, s, t):
    g = 2 - b % 2
    L = log(N) / log(b)
    half = (b - 1) / 2.0
    main = b ** t / factorial(s) * half ** s * prod(
        L + g * k for k in range(1, s + 1))
    rest = b ** t * sum(
        b / factorial(k) * half ** k * prod(L + g * i for i in range(1, k + 1))
        for k in range(s))
    return _up(main + rest)


def _b_tezuka(N, b, degrees):
    s = len(degrees)
    L = log(N) / log(b) + sum(degrees)
    main = prod((b ** e - 1) / (2.0 * e) * L + s for e in degrees) / factorial(s)
    rest = sum(
        b ** degrees[k] / factorial(k)
        * prod((b ** degrees[i] - 1) / (2.0 * degrees[i]) * L + k
               for i in range(k))
        for k in range(s))
    return _up(main + rest)


def _b_nx_t_lower(s, b):
    return _down(s / b - log(((b - 1) * s + b + 1) / 2) / log(b))


def _b_s2_bracket():
    return _down(1 / (24 * log(2) ** 2)), _up(1 / (12 * log(2) ** 2))


def _b_klp_sandwich(s_m, t_m):
    return (_down(s_m / 3 + t_m / 48 - 4),
            _up(s_m / 3 + 2 * t_m / 9 + 56 / 9))


def _b_c1_bracket():
    return _down(1 / (5 * log(2))), _up(5099 / (22528 * log(2)))


def _b_t2_bracket():
    return _down(421 / (6750 * log(2))), 0.103


def _b_bf_limsup_b2():
    return _up(4 / 9 + log(3) / (3 * log(2)))


def _b_golden():
    return _up(1 / (5 * log((1 + sqrt(5)) / 2)))


def _b_dupain_sos():
    return _up(1 / (4 * log(1 + sqrt(2))))


def _b_th1f83(b, a, N):
    a = Fraction(a)
    if not 0 <= a < 1:
        raise ValueError("a must lie in [0, 1)")
    digs = greedy_expansion_digits(a.numerator, a.denominator, b,
                                   _floor_log(b, N) + 1)
    u = sum(1 for d in digs if 1 <= d <= b - 2)
    v = sum(1 for i in range(len(digs) - 1)
            if {digs[i], digs[i + 1]} == {0, b - 1})
    return (_down(u / 4 + v / 2 - 1),
            _up((b + 4) / 4 * u + (b - 1) ** 2 / (2 * b * b) * v + b / 4 + 3))


_BOUNDS = {
    "tijdeman": _b_tijdeman,
    "faure_general": _b_faure_general,
    "niederreiter_halton": _b_niederreiter_halton,
    "atanassov": _b_atanassov,
    "atanassov_scrambled": _b_atanassov_scrambled,
    "faure_kritzer": _b_faure_kritzer,
    "faure_lemieux_1": _b_faure_lemieux_1,
    "faure_lemieux_2": _b_faure_lemieux_2,
    "tezuka": _b_tezuka,
    "nx_t_lower": _b_nx_t_lower,
    "s2_bracket": _b_s2_bracket,
    "klp_sandwich": _b_klp_sandwich,
    "c1_bracket": _b_c1_bracket,
    "t2_bracket": _b_t2_bracket,
    "bf_limsup_b2": _b_bf_limsup_b2,
    "golden": _b_golden,
    "dupain_sos": _b_dupain_sos,
    "th1f83": _b_th1f83,
}


def evaluate_bound(kind, **params):
    """Published N-scaled discrepancy bounds, rounded outward in binary64.

    Single-sided kinds return one float (an upper bound, except
    nx_t_lower which bounds the quality parameter from below); bracket
    kinds return a (low, high) pair.  Kinds listed in ASYMPTOTIC_KINDS
    keep only their leading term, so they only apply in the limit.
    th1f83's low side holds infinitely often, not for every N.
    """
    try:
        fn = _BOUNDS[kind]
    except KeyError:
        raise ValueError("unknown bound kind %r" % (kind,)) from None
    return fn(**params)
