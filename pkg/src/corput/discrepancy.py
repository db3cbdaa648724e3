"""Brute-force discrepancy engines: exact rational results, no closed formulas.

These are the oracles the formula routes are checked against, so they share
no code with them.  Everything is integer arithmetic over a common scaled
denominator; numpy int64 does the inner loops with explicit overflow budgets
(element magnitudes are kept under 2^62, and sums that could exceed int64 go
through a hi/lo split).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm, pi
from typing import NamedTuple

import numpy as np

from .digits import ExactPoint


def _frac(p):
    if isinstance(p, ExactPoint):
        if p.err:
            raise ValueError("inexact point (err > 0) in an exact engine")
        return p.frac
    return Fraction(p)


def scale_points(points):
    """Common-denominator integer coordinates: returns (ints, D)."""
    fr = [_frac(p) for p in points]
    D = 1
    for f in fr:
        D = lcm(D, f.denominator)
    return [f.numerator * (D // f.denominator) for f in fr], D


def exact_sum(arr):
    """Exact sum of an int64 array whose elements fit in 2^62, as a Python int."""
    arr = np.asarray(arr, dtype=np.int64)
    if arr.size == 0:
        return 0
    hi = arr >> np.int64(31)
    lo = arr & np.int64((1 << 31) - 1)
    return (int(np.sum(hi)) << 31) + int(np.sum(lo))


class StarResult(NamedTuple):
    plus: Fraction
    minus: Fraction
    star: Fraction


def star_1d(points):
    """One-sided and star discrepancy of a finite 1-D multiset, exact.

    Points may sit at 1 (all-(b-1) tails); a point at 1 lies in no [0, t).
    """
    vals, D = scale_points(points)
    N = len(vals)
    if N == 0:
        raise ValueError("empty point set")
    xs = np.sort(np.array(vals, dtype=np.int64))
    ranks = np.arange(1, N + 1, dtype=np.int64)
    plus = max(0, int(np.max(ranks * D - N * xs)))
    minus = max(0, int(np.max(N * xs - (ranks - 1) * D)))
    return StarResult(
        Fraction(plus, N * D), Fraction(minus, N * D), Fraction(max(plus, minus), N * D)
    )


def extreme_1d(points):
    """Extreme (unanchored) discrepancy; in one dimension it is D+ + D-."""
    r = star_1d(points)
    return r.plus + r.minus


def extreme_1d_direct(points):
    """Interval-sup definition computed directly over critical endpoint pairs.

    O(N^2); kept as an independent check of the D+ + D- identity.
    """
    fr = sorted(_frac(p) for p in points)
    N = len(fr)
    cands = sorted(set(fr) | {Fraction(0), Fraction(1)})
    best = Fraction(0)
    for i, a in enumerate(cands):
        for b in cands[i:]:
            # b == a is the shrinking interval around a point mass; the
            # over-full sup closes the right end (approached from above),
            # except at 1 where intervals stop; the under-full sup opens both
            if b < 1:
                over = sum(1 for x in fr if a <= x <= b)
            else:
                over = sum(1 for x in fr if a <= x < b)
            under = sum(1 for x in fr if a < x < b)
            best = max(
                best,
                Fraction(over, N) - (b - a),
                (b - a) - Fraction(under, N),
            )
    return best


def star_prefix_sweep(points):
    """Exact (D_N^+, D_N^-) for every prefix N = 1..len(points).

    Incremental insertion keeps the sorted scaled array; each step is two
    vectorized passes, so the whole sweep is O(N^2) at C speed.
    """
    vals, D = scale_points(points)
    out = []
    xs = np.empty(0, dtype=np.int64)
    for N, v in enumerate(vals, start=1):
        pos = int(np.searchsorted(xs, v))
        xs = np.insert(xs, pos, v)
        ranks = np.arange(1, N + 1, dtype=np.int64)
        plus = max(0, int(np.max(ranks * D - N * xs)))
        minus = max(0, int(np.max(N * xs - (ranks - 1) * D)))
        out.append((Fraction(plus, N * D), Fraction(minus, N * D)))
    return out


def l2_product(points):
    """Squared L2 star discrepancy of a finite s-dimensional set, exact.

    Product formula: (1/N^2) sum_{m,n} prod_j (1 - max(x_mj, x_nj))
    - (2/N) sum_n prod_j (1 - x_nj^2)/2 + 3^{-s}.
    """
    pts = [p if isinstance(p, (tuple, list)) else (p,) for p in points]
    N = len(pts)
    s = len(pts[0])
    cols = [[_frac(p[j]) for p in pts] for j in range(s)]
    cross = Fraction(0)
    for m in range(N):
        for n in range(m, N):
            term = Fraction(1)
            for j in range(s):
                term *= 1 - max(cols[j][m], cols[j][n])
            cross += term if m == n else 2 * term
    single = Fraction(0)
    for n in range(N):
        term = Fraction(1)
        for j in range(s):
            term *= (1 - cols[j][n] ** 2) / 2
        single += term
    return cross / N ** 2 - 2 * single / N + Fraction(1, 3 ** s)


def l2_prefix_sweep_1d(points):
    """Exact squared L2 star discrepancy for every 1-D prefix.

    Maintains the pair sums incrementally; per-step cost one vectorized pass.
    """
    vals, D = scale_points(points)
    out = []
    xs = np.empty(0, dtype=np.int64)
    G = 0  # sum_{m,n <= N} (D - max(a_m, a_n))
    S1 = 0  # sum_n (D^2 - a_n^2)
    for N, v in enumerate(vals, start=1):
        if len(xs):
            pos = int(np.searchsorted(xs, v, side="right"))
            csum = exact_sum(xs[pos:])
            sum_max = v * pos + csum
            G += 2 * (D * (N - 1) - sum_max)
        G += D - v
        S1 += D * D - v * v
        pos = int(np.searchsorted(xs, v))
        xs = np.insert(xs, pos, v)
        num = 3 * D * G - 3 * N * S1 + N * N * D * D
        out.append(Fraction(num, 3 * N * N * D * D))
    return out


def l1_1d(points):
    """Exact L1 discrepancy integral of |A([0,t))/N - t| dt."""
    fr = sorted(_frac(p) for p in points)
    N = len(fr)
    grid = [Fraction(0)] + fr + [Fraction(1)]
    total = Fraction(0)
    for i in range(N + 1):
        u, v = grid[i], grid[i + 1]
        if u == v:
            continue
        r = Fraction(i, N)  # Delta(t) = r - t on [u, v)
        if r <= u:
            total += ((v - r) ** 2 - (u - r) ** 2) / 2
        elif r >= v:
            total += ((r - u) ** 2 - (r - v) ** 2) / 2
        else:
            total += ((r - u) ** 2 + (v - r) ** 2) / 2
    return total


def lp_1d(points, p):
    """Exact L_p discrepancy (integer p >= 1): (integral of |Delta|^p)^(1/p)
    is irrational in general, so this returns the integral itself."""
    if p < 1 or int(p) != p:
        raise ValueError("p must be a positive integer")
    p = int(p)
    fr = sorted(_frac(x) for x in points)
    N = len(fr)
    grid = [Fraction(0)] + fr + [Fraction(1)]
    total = Fraction(0)
    for i in range(N + 1):
        u, v = grid[i], grid[i + 1]
        if u == v:
            continue
        r = Fraction(i, N)

        def seg(a, b):
            # integral of |r - t|^p over [a, b] with r not inside (a, b)
            if r <= a:
                return ((b - r) ** (p + 1) - (a - r) ** (p + 1)) / (p + 1)
            return ((r - a) ** (p + 1) - (r - b) ** (p + 1)) / (p + 1)

        if u < r < v:
            total += seg(u, r) + seg(r, v)
        else:
            total += seg(u, v)
    return total


def l1_prefix_sweep(points):
    """Exact L1 for every prefix, integer-scaled.

    Valid when N * D stays under ~2^26 so the squared terms fit int64 after
    the hi/lo split; asserts the budget.
    """
    vals, D = scale_points(points)
    out = []
    xs = np.empty(0, dtype=np.int64)
    for N, v in enumerate(vals, start=1):
        pos = int(np.searchsorted(xs, v))
        xs = np.insert(xs, pos, v)
        ND = N * D
        assert ND < (1 << 31), "scaled denominator too large for the L1 sweep"
        grid = np.concatenate(([0], xs, [D]))
        c = np.arange(N + 1, dtype=np.int64) * D  # piece value c - N*y, y scaled
        a = grid[:-1] * N
        b = grid[1:] * N
        left = c - a
        right = c - b
        cross = (left > 0) & (right < 0)
        no = ~cross
        acc = 0
        acc += exact_sum(np.where(no, np.abs(left * left - right * right), 0))
        acc += exact_sum(np.where(cross, left * left + right * right, 0))
        # pieces are |c - Ny| integrated dy/(N D): total = acc / (2 N^2 D^2);
        # the no-crossing branch needs the absolute difference of squares
        out.append(Fraction(acc, 2 * N * N * D * D))
    return out


def diaphony_pair(points):
    """Squared diaphony as an exact multiple of pi^2: returns q with
    F_N^2 = q * pi^2, via the Bernoulli pair sum
    F^2 = (2 pi^2/N^2) sum_{m,n} B_2({x_m - x_n})."""
    vals, D = scale_points(points)
    N = len(vals)
    xs = np.array(vals, dtype=np.int64)
    P = 0  # scaled sum of 6 f^2 - 6 f D + D^2 over all ordered pairs
    for v in vals:
        f = (xs - v) % D
        P += exact_sum(6 * f * f) - 6 * D * exact_sum(f) + N * D * D
    return Fraction(P, 3 * N * N * D * D)


def diaphony_prefix_sweep(points):
    """Exact q_N (F_N^2 = q_N pi^2) for every prefix."""
    vals, D = scale_points(points)
    out = []
    xs = np.empty(0, dtype=np.int64)
    P = 0
    for N, v in enumerate(vals, start=1):
        if len(xs):
            f = (xs - v) % D
            g = (v - xs) % D
            P += (
                exact_sum(6 * f * f)
                - 6 * D * exact_sum(f)
                + (N - 1) * D * D
                + exact_sum(6 * g * g)
                - 6 * D * exact_sum(g)
                + (N - 1) * D * D
            )
        P += D * D  # self pair, B_2(0) scaled
        xs = np.append(xs, v)
        out.append(Fraction(P, 3 * N * N * D * D))
    return out


def diaphony_series(points, H):
    """Truncated exponential-sum diaphony in float64, plus a certified tail
    bound on the (N F)^2 scale: tail <= 2 N^2 / H."""
    x = np.array([float(_frac(p)) for p in points])
    N = len(x)
    total = 0.0
    for h in range(1, H + 1):
        sh = np.exp(2j * pi * h * x).sum()
        total += 2.0 * abs(sh) ** 2 / h ** 2
    return total / N ** 2, 2.0 / H  # (F^2 approx, tail bound on F^2)


def koksma_identity_check(points):
    """Both sides of L2^2 = mean^2 + F^2/(4 pi^2), exact rationals."""
    fr = [_frac(p) for p in points]
    N = len(fr)
    mean = sum((Fraction(1, 2) - x for x in fr), Fraction(0)) / N
    left = l2_product([(x,) for x in fr])
    right = mean ** 2 + diaphony_pair(fr) / 4
    return left, right


def local_delta(points, t):
    """(count, N*Delta(t)) for the box [0, t): count/N - t scaled by N."""
    t = Fraction(t)
    count = sum(1 for p in points if _frac(p) < t)
    return count, count - len(points) * t


def star_md_exact(points):
    """Exact star discrepancy of a finite 2-D point set.

    Scans critical corners: the over-direction uses closed counts at
    coordinates just below each point, the under-direction open counts at
    coordinates and 1.  Coordinates may sit at 1 (never inside a box).
    """
    pts = list(points)
    if not pts:
        raise ValueError("empty point set")
    if len(pts[0]) == 1:
        return star_1d([p[0] for p in pts]).star
    if len(pts[0]) != 2:
        raise ValueError("exact engine covers s = 2 only")
    ax, Dx = scale_points([p[0] for p in pts])
    ay, Dy = scale_points([p[1] for p in pts])
    N = len(pts)
    ax = np.array(ax, dtype=np.int64)
    ay = np.array(ay, dtype=np.int64)
    order = np.argsort(ax, kind="stable")
    ax_s, ay_s = ax[order], ay[order]
    DD = Dx * Dy
    assert N * DD < (1 << 62), "scaled grid too large for int64"

    best = 0  # scaled by N * Dx * Dy
    # under-direction: A(u,v) closed counts, u in {x values < Dx} u {0}
    u_cands = np.unique(ax_s[ax_s < Dx])
    v_cands = np.unique(ay_s[ay_s < Dy])
    if len(u_cands) and len(v_cands):
        k = 0
        ys_sorted = np.empty(0, dtype=np.int64)
        for u in u_cands:
            while k < N and ax_s[k] <= u:
                pos = int(np.searchsorted(ys_sorted, ay_s[k]))
                ys_sorted = np.insert(ys_sorted, pos, ay_s[k])
                k += 1
            counts = np.searchsorted(ys_sorted, v_cands, side="right")
            val = int(np.max(counts.astype(np.int64) * DD - N * int(u) * v_cands))
            best = max(best, val)
    # over-direction: strict counts, u in {x values} u {Dx}, v likewise
    u_cands = np.unique(np.append(ax_s, Dx))
    v_cands = np.unique(np.append(ay_s, Dy))
    k = 0
    ys_sorted = np.empty(0, dtype=np.int64)
    for u in u_cands:
        while k < N and ax_s[k] < u:
            pos = int(np.searchsorted(ys_sorted, ay_s[k]))
            ys_sorted = np.insert(ys_sorted, pos, ay_s[k])
            k += 1
        counts = np.searchsorted(ys_sorted, v_cands, side="left")
        val = int(np.max(N * int(u) * v_cands - counts.astype(np.int64) * DD))
        best = max(best, val)
    return Fraction(best, N * DD)


def l1_2d_midpoint(points, cells=512):
    """Midpoint-rule estimate of the 2-D L1 star discrepancy.

    The exact integral grows logarithm terms wherever the count surface
    crosses N*t1*t2, so there is no rational value to hand back; this
    numeric stand-in converges like 1/cells and anchors the closed
    formulas in the tests.
    """
    pr = sorted((float(_frac(p[0])), float(_frac(p[1]))) for p in points)
    N = len(pr)
    if N == 0:
        raise ValueError("empty point set")
    xs = [p[0] for p in pr]
    mids = (np.arange(cells) + 0.5) / cells
    tot = 0.0
    k = 0
    ys = []
    for t1 in mids:
        while k < N and xs[k] < t1:
            pos = int(np.searchsorted(ys, pr[k][1]))
            ys.insert(pos, pr[k][1])
            k += 1
        counts = np.searchsorted(np.asarray(ys), mids, side="left")
        tot += float(np.abs(counts / N - t1 * mids).sum())
    return tot / (cells * cells)
