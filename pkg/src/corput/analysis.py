"""Scans and statistics layered on the generators.

Bounded-remainder profiles, the exact counting-error formula, per-digit
bound checks, Birkhoff sums along the interval-exchange orbit, serial
(overlapping-tuple) statistics, permutation-sequence statistics with the
base-2 discrepancy sandwich, and the empirical distribution of the scaled
star discrepancy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .digits import greedy_expansion_digits, to_digits
from .discrepancy import star_1d, star_md_exact
from .formulas import DEFAULT_PRECISION, bf_star_b2_scaled, evaluate_bound, gvdc_formulas
from .generators import Gvdc, Kakutani, radical_inverse
from .perms import PermSeq, identity, tau


def _dist(x):
    f = x % 1
    return min(f, 1 - f)


@dataclass(frozen=True)
class ScanProfile:
    """Running |N*delta| maximum plus values at geometric checkpoints."""

    max_abs: Fraction
    argmax: int
    checkpoints: tuple  # (N, N*delta, running max |N*delta|)


def bounded_remainder_scan(stream, t, n_max):
    """Track the counting error N*delta(t) along a point stream.

    ``stream`` is anything with .point(n) -> ExactPoint; checkpoints are
    taken at powers of two and at n_max itself.  The counting error stays
    bounded exactly when t has a finite digit expansion in the stream's
    base, and the profile makes the dichotomy visible.
    """
    t = Fraction(t)
    marks = {1 << k for k in range(n_max.bit_length() + 1)}
    marks.add(n_max)
    count = 0
    best = Fraction(0)
    arg = 0
    rows = []
    for n in range(n_max):
        if stream.point(n).frac < t:
            count += 1
        nd = count - (n + 1) * t
        if abs(nd) > best:
            best, arg = abs(nd), n + 1
        if n + 1 in marks:
            rows.append((n + 1, nd, best))
    return ScanProfile(best, arg, tuple(rows))


def th2f83_error(b, a, N):
    """Exact N*delta of the plain radical-inverse sequence at a.

    Closed formula built from the digit interplay of N and a: a double
    convolution term, the digitwise minimum count, and the number of
    sign changes from - to + along (a_i - N_i) with zeros skipped.
    All three pieces close exactly for rational a because digits beyond
    the top digit of N only see N itself.
    """
    a = Fraction(a)
    if not 0 <= a < 1:
        raise ValueError("a must lie in [0, 1)")
    nd = to_digits(N, b)
    J = len(nd)
    ad = greedy_expansion_digits(a.numerator, a.denominator, b, J)
    partial = sum(Fraction(d, b ** (j + 1)) for j, d in enumerate(ad))
    tail = a - partial

    conv = Fraction(0)
    for j, aj in enumerate(ad):
        conv += Fraction(aj * (N % b ** (j + 1)), b ** (j + 1))
    conv += N * tail

    count_min = sum(min(ni, ai) for ni, ai in zip(nd, ad))

    signs = []
    for i in range(J):
        ni = nd[i] if i < len(nd) else 0
        d = ad[i] - ni
        if d:
            signs.append(1 if d > 0 else -1)
    if tail > 0:
        signs.append(1)
    pairs = sum(1 for i in range(len(signs) - 1)
                if signs[i] < 0 < signs[i + 1])

    return -conv + count_min + pairs


def digit_change_count(t, m):
    """Number of adjacent unequal digit pairs among the first m base-2
    digits of t (canonical expansion)."""
    t = Fraction(t)
    d = greedy_expansion_digits(t.numerator, t.denominator, 2, m)
    return sum(1 for r in range(m - 1) if d[r] != d[r + 1])


def half_dist_sum(t, m):
    """Half the sum of distances of t, 2t, ..., 2^(m-1) t to the integers."""
    t = Fraction(t)
    return sum(_dist((1 << u) * t) for u in range(m)) / 2


def change_dist_sandwich(t, m):
    """Sandwich linking the two depth-m digit statistics of t.

    Returns (f, g, ok) where ok asserts f/8 <= g <= (f+1)/2.  A digit
    change at position j forces dist(2^(j-1) t) >= 1/4, and a constant
    run contributes at most 1 in total, which proves both sides for every
    t and m under the canonical expansion.
    """
    f = digit_change_count(t, m)
    g = half_dist_sum(t, m)
    return f, g, Fraction(f, 8) <= g <= Fraction(f + 1, 2)


def uv_digit_stats(b, a, y):
    """Counts of interior digits and of adjacent extreme pairs among the
    first floor(y)+1 digits of a in base b."""
    a = Fraction(a)
    n = int(math.floor(y)) + 1
    d = greedy_expansion_digits(a.numerator, a.denominator, b, n)
    u = sum(1 for k in d if 1 <= k <= b - 2)
    v = sum(1 for i in range(n - 1) if {d[i], d[i + 1]} == {0, b - 1})
    return u, v


def th1f83_bounds_check(b, permseq, a, n_max):
    """Scan |N*delta(a)| against the digit-statistic upper bound.

    Returns (ok, worst_margin) where worst_margin is the smallest value
    of bound - |N*delta| seen; ok means it never went negative.
    """
    a = Fraction(a)
    gen = Gvdc(b, permseq)
    count = 0
    worst = math.inf
    ok = True
    for n in range(n_max):
        p = gen.point(n)
        if p.err:
            raise ValueError("stream must be exact for the scan")
        if p.frac < a:
            count += 1
        N = n + 1
        nd = abs(count - N * a)
        hi = evaluate_bound("th1f83", b=b, a=a, N=N)[1]
        margin = hi - float(nd)
        if margin < worst:
            worst = margin
        if float(nd) > hi:
            ok = False
    return ok, worst


def _f_centered_x(x):
    return x - 0.5


def _f_smooth_periodic(x):
    return math.sin(2 * math.pi * x)


BIRKHOFF_FUNCS = {
    "centered_x": _f_centered_x,
    "centered_smooth_periodic": _f_smooth_periodic,
}


@dataclass(frozen=True)
class BirkhoffProfile:
    checkpoints: tuple  # (N, G_N, running min, running max)
    final: float
    min: float
    max: float
    verdict: str


def birkhoff_sum(b, x0, f, n_max):
    """Running sum of f along the interval-exchange orbit of x0.

    ``f`` is a key of BIRKHOFF_FUNCS or a callable.  The verdict applies
    the fixed escape rule: an orbit sum is reported as escaping on one
    side once that side's running extremum passes 5 in absolute value
    while still moving across the final two doublings, and bounded when
    neither side has.  The rule is a finite-N stand-in for a limit
    statement and is only a diagnostic.
    """
    func = BIRKHOFF_FUNCS.get(f, f)
    x0 = Fraction(x0)
    if b == 2 and x0 == 0 and f in BIRKHOFF_FUNCS:
        # Stream in blocks so n_max ~ 2^28 stays inside a few hundred MB.
        # Bits above the block size are constant within a block, so each
        # block is the base table shifted by the bit-reversal of the block
        # index.  Partial sums are dyadic with small denominators, hence
        # exact in doubles for the centered ramp.
        block = 1 << 22
        base = _vdc2_floats(min(n_max, block))
        marks = [(1 << k) for k in range(2, n_max.bit_length())]
        if not marks or marks[-1] != n_max:
            marks.append(n_max)
        rows = []
        lo, hi = math.inf, -math.inf
        offset = 0.0
        start = 0
        mi = 0
        while start < n_max:
            cnt = min(block, n_max - start)
            xs = base[:cnt] + float(radical_inverse(start // block, 2)) / block
            sums = np.cumsum(xs - 0.5 if f == "centered_x"
                             else np.sin(2 * np.pi * xs)) + offset
            cmin = np.minimum.accumulate(sums)
            cmax = np.maximum.accumulate(sums)
            while mi < len(marks) and marks[mi] <= start + cnt:
                j = marks[mi] - start - 1
                rows.append((marks[mi], float(sums[j]),
                             min(lo, float(cmin[j])),
                             max(hi, float(cmax[j]))))
                mi += 1
            lo = min(lo, float(cmin[-1]))
            hi = max(hi, float(cmax[-1]))
            offset = float(sums[-1])
            start += cnt
        final = offset
    else:
        orbit = Kakutani(b, x0)
        total = 0.0
        rows = []
        marks = {1 << k for k in range(2, n_max.bit_length() + 1)}
        marks.add(n_max)
        # extrema over N >= 1 only: the empty sum would flatten the
        # one-sided signature (a running max below zero) that the verdict
        # reads off
        run_lo, run_hi = math.inf, -math.inf
        for n in range(n_max):
            total += func(float(orbit.point(n).frac))
            run_lo = min(run_lo, total)
            run_hi = max(run_hi, total)
            if n + 1 in marks:
                rows.append((n + 1, total, run_lo, run_hi))
        lo, hi = run_lo, run_hi
        final = total
    verdict = _escape_verdict(rows, lo, hi)
    return BirkhoffProfile(tuple(rows), final, lo, hi, verdict)


def _vdc2_floats(n):
    idx = np.arange(n, dtype=np.uint64)
    out = np.zeros(n)
    r = 0
    while (1 << r) <= n:
        out += ((idx >> r) & 1) * 2.0 ** -(r + 1)
        r += 1
    return out


def _escape_verdict(rows, lo, hi):
    down = lo <= -5 and len(rows) >= 3 and rows[-1][2] < rows[-2][2] < rows[-3][2]
    up = hi >= 5 and len(rows) >= 3 and rows[-1][3] > rows[-2][3] > rows[-3][3]
    if down and not up:
        return "escapes_down"
    if up and not down:
        return "escapes_up"
    if not down and not up and abs(lo) < 5 and abs(hi) < 5:
        return "bounded"
    return "unclassified"


def serial_tuples(stream, s, N):
    """Overlapping s-tuples (x_n, ..., x_{n+s-1}) for n < N."""
    pts = [stream.point(n).frac for n in range(N + s - 1)]
    return [tuple(pts[n:n + s]) for n in range(N)]


def on_exchange_segment(pair, b):
    """Whether a consecutive pair sits on one of the map's translation
    segments y = x - 1 + b^-k + b^-k-1."""
    x, y = Fraction(pair[0]), Fraction(pair[1])
    k = 0
    while True:
        left = 1 - Fraction(1, b ** k)
        if left > x:
            return False
        if y == x - 1 + Fraction(1, b ** k) + Fraction(1, b ** (k + 1)):
            return True
        k += 1


def serial_star(b, s, N, grid=64):
    """Star discrepancy of the overlapping s-tuple stream of the plain
    base-b sequence, with the two-dimensional limit value for reference.

    s <= 2 uses the exact engine; s = 3 falls back to a corner-grid
    approximation with resolution ``grid`` (reported value is exact on
    grid corners, so it underestimates by at most s/grid).
    """
    stream = Gvdc(b, PermSeq.const(identity(b)))
    tuples = serial_tuples(stream, s, N)
    limit = max(Fraction(b - 1, b * b), Fraction((b - 1) ** 2, 4 * b * b))
    if s == 1:
        d = star_1d([p[0] for p in tuples]).star
    elif s == 2:
        d = star_md_exact(tuples)
    elif s == 3:
        d = _grid_star_3d(tuples, grid)
    else:
        raise ValueError("s must be at most 3")
    segs = all(on_exchange_segment((t[i], t[i + 1]), b)
               for t in tuples for i in range(s - 1))
    return {"d_star": d, "limit": limit, "on_segments": segs, "N": N, "s": s}


def _grid_star_3d(tuples, g):
    counts = np.zeros((g, g, g))
    n = len(tuples)
    for x, y, z in tuples:
        counts[int(x * g), int(y * g), int(z * g)] += 1
    closed = counts.cumsum(0).cumsum(1).cumsum(2) / n
    edges = (np.arange(1, g + 1) / g)
    vol = edges[:, None, None] * edges[None, :, None] * edges[None, None, :]
    return float(np.abs(closed - vol).max())


@dataclass(frozen=True)
class SigmaStats:
    majority: int      # larger of the id / swap counts among the first m
    switchbacks: int   # swap followed directly by id
    id_count: int
    id_excess: Fraction  # id_count - m/2


def sigma_stats(permseq, m):
    """Count statistics of a base-2 permutation sequence prefix."""
    if permseq.b != 2:
        raise ValueError("statistics are defined for base 2 only")
    swap = tau(2)
    perms = [permseq.at(r) for r in range(m)]
    n_id = sum(1 for p in perms if p.is_identity())
    n_tau = sum(1 for p in perms if p == swap)
    if n_id + n_tau != m:
        raise ValueError("every entry must be id or the swap")
    t = sum(1 for r in range(1, m)
            if perms[r - 1] == swap and perms[r].is_identity())
    return SigmaStats(max(n_id, n_tau), t, n_id, n_id - Fraction(m, 2))


def klp_sandwich_check(permseq, m, precision=DEFAULT_PRECISION):
    """Bracket max_{N <= 2^m} N*D_N^* by the prefix statistics.

    Returns a dict with the bracket, the exact maximum (plus the
    truncation error bound for streams that need certified tails), and
    the verdict.
    """
    st = sigma_stats(permseq, m)
    lower = Fraction(st.majority, 3) + Fraction(st.switchbacks, 48) - 4
    upper = Fraction(st.majority, 3) + Fraction(2 * st.switchbacks, 9) \
        + Fraction(56, 9)
    best = Fraction(0)
    err = 0.0
    for N in range(1, (1 << m) + 1):
        out = gvdc_formulas(2, permseq, N, precision=precision)
        if out["d_star"] > best:
            best = out["d_star"]
        err = max(err, out["err"])
    ok = float(lower) - err <= float(best) and float(best) <= float(upper) + err
    return {"lower": lower, "upper": upper, "max_nd": best, "err": err,
            "ok": ok, "stats": st}


def clt_empirical(m, ys=(-2.0, -1.0, 0.0, 1.0, 2.0)):
    """Empirical CDF of the normalized star discrepancy of the base-2
    sequence over all N < 2^m, against the Gaussian limit.

    Returns rows (y, fraction, phi).  The counted statistic is the
    exact-formula sum sum_{r<=m} ||N/2^r|| (the scaled discrepancy minus
    its geometric tail N/2^m), centered at its exact mean m/4 with the
    limit spread sqrt(m/48).  Counting the scaled discrepancy itself
    against a per-N logarithmic center would carry a constant additive
    slack that only dies off like 1/sqrt(m): at m = 20 it still shifts
    the y = 0 fraction from ~0.45 down to ~0.10.
    """
    M = 1 << m
    nd = bf_star_b2_scaled(m)[1:M].astype(np.float64) / M
    stat = nd - np.arange(1, M, dtype=np.float64) / M
    spread = math.sqrt(m / 48.0)
    rows = []
    for y in ys:
        frac = float(np.count_nonzero(stat <= m / 4.0 + y * spread)) / M
        phi = (1 + math.erf(y / math.sqrt(2))) / 2
        rows.append((y, frac, phi))
    return rows
