"""The phi/psi/chi function family attached to a permutation of Z_b.

All members are piecewise linear (or piecewise quadratic) on [0, 1) with
exact rational knots, extended periodically.  Every linear piece of the
family has integer intercept and slope: the branches of phi_h are
A - h*x and (b-h)*x - A with integer counts A, and the max/sum operations
preserve that (pieces of a max coincide with one of the phis).  Hence
M * f(t/M) is an exact integer whenever the knot denominators divide M,
which the scaled evaluators exploit; knots may sit off the k/b grid (the
psi maxima pick up crossing points such as 1/2 in base 3).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import log, pi

import numpy as np

from .perms import Perm, identity


class PiecewiseLinear:
    """Piecewise linear function on [0, 1): value a_i + s_i * x on
    [knots[i], knots[i+1])."""

    __slots__ = ("knots", "a", "s")

    def __init__(self, knots, a, s):
        self.knots = tuple(knots)
        self.a = tuple(a)
        self.s = tuple(s)
        assert self.knots[0] == 0 and self.knots[-1] == 1
        assert len(self.a) == len(self.s) == len(self.knots) - 1

    @classmethod
    def zero(cls):
        return cls((Fraction(0), Fraction(1)), (Fraction(0),), (Fraction(0),))

    def piece_at(self, x):
        """Index of the piece whose half-open interval contains x in [0, 1)."""
        return bisect_right(self.knots, x) - 1

    def eval(self, x):
        """Value at x in [0, 1)."""
        i = self.piece_at(x)
        return self.a[i] + self.s[i] * x

    def eval_mod(self, x):
        """Value at the fractional part of x (periodic extension)."""
        x = Fraction(x)
        return self.eval(x - (x.numerator // x.denominator))

    def right_slope(self, x):
        """Right derivative at x in [0, 1) (pieces are right-inclusive)."""
        return self.s[self.piece_at(x)]

    def eval_scaled(self, t, M):
        """M * f(t/M) for integers 0 <= t < M, exact (raises if not integral)."""
        # locate piece: largest i with knots[i] <= t/M
        lo, hi = 0, len(self.a) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            kn = self.knots[mid]
            if kn.numerator * M <= t * kn.denominator:
                lo = mid
            else:
                hi = mid - 1
        val = self.a[lo] * M + self.s[lo] * t
        if val.denominator != 1:
            raise ValueError("scaled value not integral; M incompatible with knots")
        return val.numerator

    def __add__(self, other):
        knots = _merge_knots(self.knots, other.knots)
        a, s = [], []
        for u in knots[:-1]:
            i, j = self.piece_at(u), other.piece_at(u)
            a.append(self.a[i] + other.a[j])
            s.append(self.s[i] + other.s[j])
        return PiecewiseLinear(knots, a, s).simplify()

    def __neg__(self):
        return PiecewiseLinear(self.knots, [-v for v in self.a], [-v for v in self.s])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return PiecewiseLinear(self.knots, [c * v for v in self.a], [c * v for v in self.s])

    def square(self):
        return PiecewiseQuad(
            self.knots,
            [v * v for v in self.a],
            [2 * u * v for u, v in zip(self.a, self.s)],
            [v * v for v in self.s],
        )

    def simplify(self):
        knots = [self.knots[0]]
        a, s = [self.a[0]], [self.s[0]]
        for i in range(1, len(self.a)):
            if self.a[i] == a[-1] and self.s[i] == s[-1]:
                continue
            knots.append(self.knots[i])
            a.append(self.a[i])
            s.append(self.s[i])
        knots.append(Fraction(1))
        return PiecewiseLinear(knots, a, s)

    def int_pieces(self):
        """(a, s) as plain int tuples; raises if any coefficient is fractional."""
        if any(v.denominator != 1 for v in self.a) or any(
            v.denominator != 1 for v in self.s
        ):
            raise ValueError("non-integer piece coefficients")
        return (
            tuple(v.numerator for v in self.a),
            tuple(v.numerator for v in self.s),
        )

    def max_value(self):
        """Maximum over [0, 1] (checked at knots; pieces are linear)."""
        best = Fraction(0)
        for i in range(len(self.a)):
            for x in (self.knots[i], self.knots[i + 1]):
                best = max(best, self.a[i] + self.s[i] * x)
        return best


class PiecewiseQuad:
    """Piecewise quadratic on [0, 1): a_i + s_i x + c_i x^2 per piece."""

    __slots__ = ("knots", "a", "s", "c")

    def __init__(self, knots, a, s, c):
        self.knots = tuple(knots)
        self.a = tuple(a)
        self.s = tuple(s)
        self.c = tuple(c)

    def piece_at(self, x):
        return bisect_right(self.knots, x) - 1

    def eval(self, x):
        i = self.piece_at(x)
        return self.a[i] + self.s[i] * x + self.c[i] * x * x

    def eval_mod(self, x):
        x = Fraction(x)
        return self.eval(x - (x.numerator // x.denominator))

    def eval_scaled(self, t, M):
        """M^2 * f(t/M) for integers 0 <= t < M, exact."""
        lo, hi = 0, len(self.a) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            kn = self.knots[mid]
            if kn.numerator * M <= t * kn.denominator:
                lo = mid
            else:
                hi = mid - 1
        val = self.a[lo] * M * M + self.s[lo] * t * M + self.c[lo] * t * t
        if val.denominator != 1:
            raise ValueError("scaled value not integral")
        return val.numerator

    def __add__(self, other):
        knots = _merge_knots(self.knots, other.knots)
        a, s, c = [], [], []
        for u in knots[:-1]:
            i, j = self.piece_at(u), other.piece_at(u)
            a.append(self.a[i] + other.a[j])
            s.append(self.s[i] + other.s[j])
            c.append(self.c[i] + other.c[j])
        return PiecewiseQuad(knots, a, s, c)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        k = Fraction(k)
        return PiecewiseQuad(
            self.knots,
            [k * v for v in self.a],
            [k * v for v in self.s],
            [k * v for v in self.c],
        )

    def int_pieces(self):
        if any(
            v.denominator != 1 for seq in (self.a, self.s, self.c) for v in seq
        ):
            raise ValueError("non-integer piece coefficients")
        return (
            tuple(v.numerator for v in self.a),
            tuple(v.numerator for v in self.s),
            tuple(v.numerator for v in self.c),
        )


def _merge_knots(k1, k2):
    return tuple(sorted(set(k1) | set(k2)))


def pl_max(f, g):
    """Pointwise max of two piecewise linear functions, crossings inserted."""
    base = _merge_knots(f.knots, g.knots)
    knots, a, s = [Fraction(0)], [], []
    for idx in range(len(base) - 1):
        u, v = base[idx], base[idx + 1]
        i, j = f.piece_at(u), g.piece_at(u)
        fa, fs = f.a[i], f.s[i]
        ga, gs = g.a[j], g.s[j]
        du = (fa - ga) + (fs - gs) * u
        dv = (fa - ga) + (fs - gs) * v
        if du >= 0 and dv >= 0:
            pieces = [(u, fa, fs)]
        elif du <= 0 and dv <= 0:
            pieces = [(u, ga, gs)]
        else:
            xstar = (ga - fa) / (fs - gs)
            if du > 0:
                pieces = [(u, fa, fs), (xstar, ga, gs)]
            else:
                pieces = [(u, ga, gs), (xstar, fa, fs)]
        for start, pa, ps in pieces:
            knots.append(start)
            a.append(pa)
            s.append(ps)
    knots = knots[1:] + [Fraction(1)]
    knots[0] = Fraction(0)
    return PiecewiseLinear(knots, a, s).simplify()


def pl_max_many(fs):
    out = fs[0]
    for f in fs[1:]:
        out = pl_max(out, f)
    return out


def build_phi(b, sigma: Perm, h):
    """phi_{b,h} for the permutation sigma: piecewise linear with knots k/b.

    On [(k-1)/b, k/b): A([0,h/b); k) - h*x when h <= sigma(k-1), else
    (b-h)*x - A([h/b,1); k), where A counts entries sigma(j), j < k, below
    (resp. at or above) h.  phi_{b,0} is identically zero.
    """
    knots = [Fraction(k, b) for k in range(b + 1)]
    a, s = [], []
    for k in range(1, b + 1):
        if h == 0:
            a.append(Fraction(0))
            s.append(Fraction(0))
        elif h <= sigma(k - 1):
            below = sum(1 for j in range(k) if sigma(j) < h)
            a.append(Fraction(below))
            s.append(Fraction(-h))
        else:
            atleast = sum(1 for j in range(k) if sigma(j) >= h)
            a.append(Fraction(-atleast))
            s.append(Fraction(b - h))
    return PiecewiseLinear(knots, a, s).simplify()


class PsiSet:
    """All the worker functions for one (b, sigma): the phis, the psi maxima,
    their sum, the phi sum, the summed squares, and chi."""

    def __init__(self, b, sigma: Perm):
        if sigma.b != b:
            raise ValueError("permutation base mismatch")
        self.b = b
        self.sigma = sigma
        self.phis = [build_phi(b, sigma, h) for h in range(b)]
        self.psi_plus = pl_max_many(self.phis)
        self.psi_minus = pl_max_many([-f for f in self.phis])
        self.psi = (self.psi_plus + self.psi_minus).simplify()
        acc = self.phis[0]
        for f in self.phis[1:]:
            acc = acc + f
        self.phi_sum = acc
        sq = self.phis[0].square()
        for f in self.phis[1:]:
            sq = sq + f.square()
        self.phi_sq = sq
        self.chi = self.phi_sq.scale(b) - self.phi_sum.square()

    def func(self, name):
        return {
            "psi_plus": self.psi_plus,
            "psi_minus": self.psi_minus,
            "psi": self.psi,
            "phi_sum": self.phi_sum,
            "phi_sq": self.phi_sq,
            "chi": self.chi,
        }[name]


_PSISET_CACHE = {}


def psi_set(b, sigma: Perm):
    key = (b, sigma.table)
    ps = _PSISET_CACHE.get(key)
    if ps is None:
        ps = _PSISET_CACHE[key] = PsiSet(b, sigma)
    return ps


def _thresholds(knots, M):
    """ceil(knot * M) per knot: the first integer t whose t/M reaches the knot."""
    return np.array(
        [(k.numerator * M + k.denominator - 1) // k.denominator for k in knots[:-1]],
        dtype=np.int64,
    )


def _grid_sum_max(pl, b, m, quadratic=False):
    """Exact max over x in {0,...,b^m - 1} of sum_{j=1}^m f((x mod b^j)/b^j).

    Returns (max value scaled by b^m, argmax x) for linear f, or scaled by
    b^{2m} for quadratic f.  All arithmetic is int64; callers keep b^m small
    enough that the products below stay far under 2^63.
    """
    n = b ** m
    x = np.arange(n, dtype=np.int64)
    total = np.zeros(n, dtype=np.int64)
    if not quadratic:
        a_i, s_i = pl.int_pieces()
        a_arr = np.array(a_i, dtype=np.int64)
        s_arr = np.array(s_i, dtype=np.int64)
        for j in range(1, m + 1):
            M = b ** j
            t = x % M
            idx = np.searchsorted(_thresholds(pl.knots, M), t, side="right") - 1
            total += (b ** (m - j)) * (a_arr[idx] * M + s_arr[idx] * t)
    else:
        a_i, s_i, c_i = pl.int_pieces()
        a_arr = np.array(a_i, dtype=np.int64)
        s_arr = np.array(s_i, dtype=np.int64)
        c_arr = np.array(c_i, dtype=np.int64)
        for j in range(1, m + 1):
            M = b ** j
            t = x % M
            idx = np.searchsorted(_thresholds(pl.knots, M), t, side="right") - 1
            total += (b ** (2 * (m - j))) * (
                a_arr[idx] * M * M + s_arr[idx] * t * M + c_arr[idx] * t * t
            )
    i = int(np.argmax(total))
    return int(total[i]), i


def alpha(b, sigma: Perm, m_max):
    """Grid values F(m) = (1/m) max_{x in {0..b^m-1}} sum_j psi(x/b^j),
    m = 1..m_max, as exact Fractions.

    The true sup can sit off the integer grid (knots like 1/2 in base 3);
    it exceeds the grid value by at most 1/(2m) since the x-scale sum is
    1-Lipschitz.  alpha_{b,sigma} <= F(m) + 1/(2m) for every m.
    """
    ps = psi_set(b, sigma)
    out = []
    for m in range(1, m_max + 1):
        top, _ = _grid_sum_max(ps.psi, b, m)
        out.append(Fraction(top, m * b ** m))
    return out


def alpha_pm(b, sigma: Perm, m_max):
    """Grid values for the one-sided suprema (psi_plus, psi_minus), over the
    full period x in [0, b^m)."""
    ps = psi_set(b, sigma)
    plus, minus = [], []
    for m in range(1, m_max + 1):
        top_p, _ = _grid_sum_max(ps.psi_plus, b, m)
        top_m, _ = _grid_sum_max(ps.psi_minus, b, m)
        plus.append(Fraction(top_p, m * b ** m))
        minus.append(Fraction(top_m, m * b ** m))
    return plus, minus


def beta_gamma(b, sigma: Perm, m_max):
    """Grid values for beta (phi_sum supremum mean) and gamma (chi), Fractions."""
    ps = psi_set(b, sigma)
    betas, gammas = [], []
    for m in range(1, m_max + 1):
        top_b, _ = _grid_sum_max(ps.phi_sum, b, m)
        betas.append(Fraction(top_b, m * b ** m))
        top_g, _ = _grid_sum_max(ps.chi, b, m, quadratic=True)
        gammas.append(Fraction(top_g, m * b ** (2 * m)))
    return betas, gammas


def closed_alpha_id(b):
    """alpha_{b,id}: b^2/(4(b+1)) for even b, (b-1)/4 for odd b (a rational)."""
    if b % 2 == 0:
        return Fraction(b * b, 4 * (b + 1))
    return Fraction(b - 1, 4)


def closed_dstar_id(b):
    """Asymptotic star constant alpha_{b,id}/(2 log b) of the swapped
    sequence (sigma on the A-set, tau_b o sigma off it): half the plain
    constant alpha_{b,id}/log b, since the swap splits psi_plus evenly."""
    if b % 2 == 0:
        return b * b / (8 * (b + 1) * log(b))
    return (b - 1) / (8 * log(b))


def closed_t1_id(b):
    """L1 constant t1(Y_b): (b^2+b-2)/(8(b+1)log b) even, (b^2-1)/(8b log b) odd."""
    if b % 2 == 0:
        return (b * b + b - 2) / (8 * (b + 1) * log(b))
    return (b * b - 1) / (8 * b * log(b))


def closed_f_id(b):
    """Diaphony constant f(Y_b): pi^2 (b^3+b^2+4)/(48(b+1)log b) for even b,
    pi^2 (b^4+2b^2-3)/(48 b^2 log b) for odd b; b=2 gives pi^2/(9 log 2)."""
    if b % 2 == 0:
        return pi * pi * (b ** 3 + b * b + 4) / (48 * (b + 1) * log(b))
    return pi * pi * (b ** 4 + 2 * b * b - 3) / (48 * b * b * log(b))


def dstar_aset_grid(b, sigma: Perm, m):
    """Grid estimate of d*(Y_b^{Sigma_A}) = (alpha+ + alpha-)/(2 log b):
    returns (estimate, certified upper bound) floats; the cushion 1/(2m)
    covers off-grid suprema."""
    plus, minus = alpha_pm(b, sigma, m)
    est = float(plus[-1] + minus[-1]) / (2 * log(b))
    upper = float(plus[-1] + minus[-1] + Fraction(1, m)) / (2 * log(b))
    return est, upper
