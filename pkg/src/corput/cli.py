"""Command-line front end.

Subcommands: generate, disc, verify, psi, bounds, scan, serial, clt,
integrate.  Every subcommand validates its inputs, materializes all CSV
rows in memory, and only then writes, so a failure never leaves partial
output.  CSV cells follow one convention everywhere: header row first,
rationals as num/den strings, floats with 17 significant digits.  Runs
are deterministic: the only randomness is a seed (default 0) feeding the
randomized verification suites.

Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .analysis import clt_empirical, serial_star
from .digital import random_strict_upper, gnut_point
from .digits import ExactPoint
from .discrepancy import (
    diaphony_pair,
    diaphony_prefix_sweep,
    extreme_1d,
    l1_1d,
    l1_prefix_sweep,
    l1_2d_midpoint,
    l2_prefix_sweep_1d,
    l2_product,
    lp_1d,
    star_1d,
    star_md_exact,
    star_prefix_sweep,
)
from .formulas import (
    bf_star_b2,
    d_recursion_b2,
    declerck_star,
    descent_error,
    evaluate_bound,
    faure_l2_b2,
    gvdc_formulas,
    gvdc_l2_f_l1,
    hammersley_lp,
    nut_formulas,
    sym_l2_b2,
    y3_star,
)
from .generators import Golden, Gvdc, Sequence, Symmetrized, Vdc, parse_sequence
from .multidim import parse_multidim
from .perms import PermSeq, identity, parse_perm, random_permseq
from .psi import psi_set

_MULTIDIM_KINDS = ("halton", "ham2", "hams")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """One resolved run: what to generate or measure and how to emit it."""

    seq: str = None
    measure: str = None
    n: int = None
    exact: bool = False
    out: str = None
    seed: int = 0
    precision: int = None


def canonical_spec(spec):
    """Whitespace-free form of a sequence or point-set spec, validated by
    parsing.  Canonicalizing twice is the identity."""
    clean = "".join(spec.split())
    parse_spec(clean)
    return clean


def parse_spec(spec):
    """Parse either mini-language; errors carry the offending spec."""
    kind = spec.split(":", 1)[0] if ":" in spec else spec
    try:
        if kind in _MULTIDIM_KINDS:
            return parse_multidim(spec)
        return parse_sequence(spec)
    except (ValueError, KeyError) as e:
        raise UsageError("bad spec %r: %s" % (spec, e)) from None


def load_config(path):
    cfg = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as e:
        raise UsageError("cannot read config %s: %s" % (path, e)) from None
    with fh:
        for ln, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError("config %s line %d: expected key = value" % (path, ln))
            key, val = (s.strip() for s in line.split("=", 1))
            cfg[key.replace("-", "_")] = val
    return cfg


def _fmt(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (Fraction, int)):
        f = Fraction(v)
        return "%d/%d" % (f.numerator, f.denominator) if f.denominator != 1 else str(f.numerator)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _write_csv(out, header, rows):
    text = "\n".join([",".join(header)] + [",".join(_fmt(c) for c in r) for r in rows]) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _points_of(spec_obj, N):
    """(dim, list of coordinate tuples, golden digit source or None).

    Point-set specs (ham2/hams) come as finished lists; --N may trim a
    prefix but not extend.  Stream specs require --N.
    """
    if isinstance(spec_obj, list):
        pts = spec_obj
        if N is not None:
            if N > len(pts):
                raise UsageError("point set has only %d points" % len(pts))
            pts = pts[:N]
        return len(pts[0]), pts, None
    if N is None:
        raise UsageError("--N is required for sequence specs")
    if isinstance(spec_obj, Sequence):
        digits = spec_obj if isinstance(spec_obj, Golden) else None
        first = spec_obj.point(0)
        if isinstance(first, tuple):
            return len(first), [spec_obj.point(n) for n in range(N)], None
        return 1, [(spec_obj.point(n),) for n in range(N)], digits
    raise UsageError("unsupported spec object %r" % type(spec_obj).__name__)


def _coord_frac(c):
    if isinstance(c, ExactPoint):
        return Fraction(c.num, c.den)
    return Fraction(c)


def _coord_err(c):
    return c.err if isinstance(c, ExactPoint) else 0.0


def _require_exact(pts, what):
    bad = sum(1 for row in pts for c in row if _coord_err(c) > 0)
    if bad:
        raise UsageError(
            "%s needs exact points but %d coordinates carry an error bound "
            "(drop --exact to accept their rational surrogates)" % (what, bad))


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args):
    if not args.seq:
        raise UsageError("generate needs --seq")
    spec_obj = parse_spec(canonical_spec(args.seq))
    dim, pts, golden = _points_of(spec_obj, args.N)
    header = ["n"]
    for d in range(1, dim + 1):
        header += ["x%d" % d, "x%d_float" % d]
    if golden is not None:
        header.append("digits")
    rows = []
    for n, row in enumerate(pts):
        cells = [n]
        for c in row:
            f = _coord_frac(c)
            cells += [f, float(f)]
        if golden is not None:
            cells.append(golden.digit_string(n))
        rows.append(cells)
    return header, rows, 0


# ---------------------------------------------------------------------------
# disc


def cmd_disc(args):
    if not args.seq:
        raise UsageError("disc needs --seq")
    spec_obj = parse_spec(canonical_spec(args.seq))
    dim, pts, _ = _points_of(spec_obj, args.N)
    if args.exact:
        _require_exact(pts, "--exact")
    measure = args.measure or "star"
    flat = [r[0] for r in pts] if dim == 1 else [tuple(_coord_frac(c) for c in r) for r in pts]
    if measure == "star":
        if dim > 2:
            raise UsageError("the exact star engine covers dim <= 2")
        value = star_1d(flat).star if dim == 1 else star_md_exact(flat)
    elif dim != 1:
        raise UsageError("measure %r is one-dimensional; got dim %d" % (measure, dim))
    elif measure == "extreme":
        value = extreme_1d(flat)
    elif measure == "l1":
        value = l1_1d(flat)
    elif measure == "l2":
        value = l2_product(flat)
    elif measure == "diaphony":
        value = diaphony_pair(flat)
    elif measure.startswith("lp:"):
        value = lp_1d(flat, int(measure[3:]))
    else:
        raise UsageError("unknown measure %r" % measure)
    value = Fraction(value)
    rows = [[len(pts), value.numerator, value.denominator, float(value)]]
    return ["N", "value_num", "value_den", "value_float"], rows, 0


# ---------------------------------------------------------------------------
# verify

_SUITE_ROW_CAP = 10000


class _Recorder:
    """Collects (case, formula, oracle) checks; large clean suites collapse
    to a single summary row so stdout stays readable."""

    def __init__(self):
        self.cases = []
        self.mismatches = 0

    def add(self, case, formula, oracle, ok=None):
        if ok is None:
            ok = formula == oracle
        if not ok:
            self.mismatches += 1
        self.cases.append((case, formula, oracle, ok))

    def rows(self, suite):
        if len(self.cases) <= _SUITE_ROW_CAP:
            return [[c, _fmt(f), _fmt(o)] for c, f, o, _ in self.cases]
        out = [[c, _fmt(f), _fmt(o)] for c, f, o, ok in self.cases if not ok]
        out.append(["summary:%s:cases=%d,mismatches=%d"
                    % (suite, len(self.cases), self.mismatches), "", ""])
        return out


def _suite_bf2(rec, rng):
    n_max = 1 << 12
    sweep = star_prefix_sweep(Vdc(2).points(n_max))
    for N in range(1, n_max + 1):
        plus, minus = sweep[N - 1]
        rec.add("star:N=%d" % N, bf_star_b2(N), N * max(plus, minus))
        rec.add("recursion:N=%d" % N, d_recursion_b2(N), bf_star_b2(N))
    for k in range(13):
        plus, minus = sweep[(1 << k) - 1]
        rec.add("extreme:2^%d" % k, Fraction(1), (1 << k) * (plus + minus))


def _suite_y3(rec, rng):
    n_max = 3 ** 6
    sweep = star_prefix_sweep(Vdc(3).points(n_max))
    for N in range(1, n_max + 1):
        plus, minus = sweep[N - 1]
        rec.add("N=%d" % N, y3_star(N), N * max(plus, minus))


def _suite_l2b2(rec, rng):
    n_max = 1 << 10
    sweep = l2_prefix_sweep_1d(Vdc(2).points(n_max))
    for N in range(1, n_max + 1):
        rec.add("N=%d" % N, faure_l2_b2(N), N * N * sweep[N - 1])


def _suite_gvdc(rec, rng):
    for b in (2, 3, 5):
        n_max = {2: 256, 3: 81, 5: 125}[b]
        streams = [("id", PermSeq.const(identity(b)))]
        streams += [("r%d" % i, random_permseq(b, rng)) for i in range(2)]
        for name, ps in streams:
            pts = Gvdc(b, ps).points(n_max)
            stars = star_prefix_sweep(pts)
            l2s = l2_prefix_sweep_1d(pts)
            l1s = l1_prefix_sweep(pts)
            dia = diaphony_prefix_sweep(pts)
            for N in range(1, n_max + 1):
                tag = "b=%d,%s,N=%d" % (b, name, N)
                plus, minus = stars[N - 1]
                rec.add(tag + ":d_star", gvdc_formulas(b, ps, N)["d_star"],
                        N * max(plus, minus))
                lf = gvdc_l2_f_l1(b, ps, N)
                rec.add(tag + ":l2_sq", lf["l2_sq"], N * N * l2s[N - 1])
                rec.add(tag + ":f_sq_pi2", lf["f_sq_pi2"], N * N * dia[N - 1])
                if "l1" in lf:
                    rec.add(tag + ":l1", lf["l1"], N * l1s[N - 1])


def _suite_descent(rec, rng):
    for b in (2, 3, 5):
        ps = PermSeq.const(identity(b))
        for m in range(1, 5):
            bm = b ** m
            # identity stream: point n is its bit-reversal r_n / b^m, so
            # the strict count against lam/b^m is a comparison of integers
            revs = Gvdc(b, ps).points(bm)
            rints = [p.num * (bm // p.den) for p in revs]
            for lam in range(bm):
                cnt = 0
                t = Fraction(lam, bm)
                for n, r in enumerate(rints):
                    cnt += r < lam
                    N = n + 1
                    rec.add("b=%d,m=%d,lam=%d,N=%d" % (b, m, lam, N),
                            descent_error(b, ps, m, lam, N), cnt - N * t)


def _suite_nut(rec, rng):
    for b in (2, 3, 5):
        n_max = {2: 256, 3: 243, 5: 125}[b]
        ps = PermSeq.const(identity(b))
        for i in range(2):
            C = random_strict_upper(b, rng, 12)
            pts = [gnut_point(n, ps, C) for n in range(n_max)]
            stars = star_prefix_sweep(pts)
            l2s = l2_prefix_sweep_1d(pts)
            for N in range(1, n_max + 1):
                tag = "b=%d,C%d,N=%d" % (b, i, N)
                nf = nut_formulas(b, ps, C, N)
                plus, minus = stars[N - 1]
                rec.add(tag + ":d_star", nf["d_star"], N * max(plus, minus))
                rec.add(tag + ":l2_sq", nf["l2_sq"], N * N * l2s[N - 1])


def _suite_sym(rec, rng):
    n_max = 1 << 9
    sweep = l2_prefix_sweep_1d(Symmetrized(Vdc(2)).points(n_max))
    for N in range(1, n_max + 1):
        rec.add("N=%d" % N, sym_l2_b2(N), N * N * sweep[N - 1])


def _suite_declerck(rec, rng):
    for b in (2, 3):
        for m in range(2, 6):
            pts = [(Fraction(p.num, p.den), f)
                   for p, f in parse_multidim("ham2:b=%d,m=%d" % (b, m))]
            rec.add("b=%d,m=%d" % (b, m), declerck_star(b, m), star_md_exact(pts))


def _suite_hamlp(rec, rng):
    for b in (2, 3):
        for m in range(1, 6):
            pts = [(Fraction(p.num, p.den), f)
                   for p, f in parse_multidim("ham2:b=%d,m=%d" % (b, m))]
            N = b ** m
            lp = hammersley_lp(b, m)
            rec.add("b=%d,m=%d:l2_sq" % (b, m), lp["l2_sq"], N * N * l2_product(pts))
            # the L1 oracle is a midpoint rule on a 512^2 grid; its error
            # on this piecewise-bilinear integrand stays below 3/512
            approx = l1_2d_midpoint(pts, cells=512)
            rec.add("b=%d,m=%d:l1" % (b, m), lp["l1"], N * approx,
                    ok=abs(float(lp["l1"]) / N - float(approx)) <= 3 / 512)


_SUITES = {
    "bf2": _suite_bf2,
    "y3": _suite_y3,
    "l2b2": _suite_l2b2,
    "gvdc": _suite_gvdc,
    "descent": _suite_descent,
    "nut": _suite_nut,
    "sym": _suite_sym,
    "declerck": _suite_declerck,
    "hamlp": _suite_hamlp,
}


def cmd_verify(args):
    if not args.suite:
        raise UsageError("verify needs --suite")
    try:
        suite = _SUITES[args.suite]
    except KeyError:
        raise UsageError("unknown suite %r (have: %s)"
                         % (args.suite, ", ".join(sorted(_SUITES)))) from None
    rec = _Recorder()
    suite(rec, random.Random(args.seed))
    rows = rec.rows(args.suite)
    return (["case", "formula_value", "oracle_value"], rows,
            1 if rec.mismatches else 0)


# ---------------------------------------------------------------------------
# psi


def cmd_psi(args):
    if args.b is None:
        raise UsageError("psi needs --b")
    b = args.b
    sigma = parse_perm(args.sigma, b)
    ps = psi_set(b, sigma)
    funcs = [("phi_%d" % h, ps.phis[h]) for h in range(1, b)]
    funcs += [("psi_plus", ps.psi_plus), ("psi_minus", ps.psi_minus)]
    if args.emit_breakpoints:
        xs = sorted({k for _, f in funcs for k in f.knots})
    else:
        xs = [Fraction(k, 64) for k in range(65)]
    header = ["x"] + [name for name, _ in funcs]
    rows = [[x] + [f.eval_mod(x) for _, f in funcs] for x in xs]
    return header, rows, 0


# ---------------------------------------------------------------------------
# bounds


def _parse_param(text):
    key, _, val = text.partition("=")
    if not _:
        raise UsageError("--param needs key=value, got %r" % text)
    key = key.strip()
    val = val.strip()
    if "," in val:
        return key, tuple(int(s) for s in val.split(","))
    try:
        return key, int(val)
    except ValueError:
        pass
    try:
        return key, Fraction(val)
    except ValueError:
        pass
    try:
        return key, float(val)
    except ValueError:
        return key, val


def cmd_bounds(args):
    if not args.kind:
        raise UsageError("bounds needs --kind")
    params = dict(_parse_param(p) for p in args.param or [])
    try:
        value = evaluate_bound(args.kind, **params)
    except (ValueError, TypeError) as e:
        raise UsageError(str(e)) from None
    if isinstance(value, tuple):
        rows = [[args.kind + ":lower", float(value[0])],
                [args.kind + ":upper", float(value[1])]]
    else:
        rows = [[args.kind, float(value)]]
    return ["name", "value_float"], rows, 0


# ---------------------------------------------------------------------------
# scan


def cmd_scan(args):
    if not args.seq:
        raise UsageError("scan needs --seq")
    if args.t is None or args.Nmax is None:
        raise UsageError("scan needs --t and --Nmax")
    spec_obj = parse_spec(canonical_spec(args.seq))
    dim, pts, _ = _points_of(spec_obj, args.Nmax)
    if dim != 1:
        raise UsageError("scan is one-dimensional")
    _require_exact(pts, "scan")
    try:
        t = Fraction(args.t)
    except (ValueError, ZeroDivisionError):
        raise UsageError("--t must be a rational like 1/3") from None
    if not 0 <= t <= 1:
        raise UsageError("--t must lie in [0, 1]")
    rows = []
    cnt = 0
    for n, (p,) in enumerate(pts):
        cnt += _coord_frac(p) < t
        nd = cnt - (n + 1) * t
        rows.append([n + 1, nd.numerator, nd.denominator])
    return ["N", "N_delta_num", "N_delta_den"], rows, 0


# ---------------------------------------------------------------------------
# serial


def cmd_serial(args):
    b = args.b if args.b is not None else 2
    s_dim = args.s if args.s is not None else 2
    grid = args.grid if args.grid is not None else 64
    if args.N is None:
        raise UsageError("serial needs --N")
    if s_dim not in (1, 2, 3):
        raise UsageError("--s must be 1, 2, or 3")
    rep = serial_star(b, s_dim, args.N, grid=grid)
    d = rep["d_star"]
    if isinstance(d, Fraction):
        num, den, fl = d.numerator, d.denominator, float(d)
    else:
        num, den, fl = "", "", float(d)
    lim = rep["limit"]
    rows = [[s_dim, args.N, num, den, fl,
             lim.numerator, lim.denominator, rep["on_segments"]]]
    return ["s", "N", "d_star_num", "d_star_den", "d_star_float",
            "limit_num", "limit_den", "on_segments"], rows, 0


# ---------------------------------------------------------------------------
# clt


def cmd_clt(args):
    if args.m is None:
        raise UsageError("clt needs --m")
    if not 1 <= args.m <= 22:
        raise UsageError("--m must lie in [1, 22]")
    rows = [[y, frac, phi] for y, frac, phi in clt_empirical(args.m)]
    return ["y", "empirical", "phi"], rows, 0


# ---------------------------------------------------------------------------
# integrate

# name -> (per-coordinate polynomial coefficients low..high, exact integral,
# total variation when certified)
_INTEGRANDS = {
    "one": ((), Fraction(1), Fraction(0)),
    "x": (((0, 1),), Fraction(1, 2), Fraction(1)),
    "x2": (((0, 0, 1),), Fraction(1, 3), Fraction(1)),
    "xy": (((0, 1), (0, 1)), Fraction(1, 4), None),
    "x2y": (((0, 0, 1), (0, 1)), Fraction(1, 6), None),
}


def _poly_eval(coeffs, x):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def cmd_integrate(args):
    if not args.f or not args.seq:
        raise UsageError("integrate needs --f and --seq")
    try:
        polys, exact, variation = _INTEGRANDS[args.f]
    except KeyError:
        raise UsageError("unknown integrand %r (have: %s)"
                         % (args.f, ", ".join(sorted(_INTEGRANDS)))) from None
    spec = canonical_spec(args.seq)
    dim, pts, _ = _points_of(parse_spec(spec), args.N)
    if polys and len(polys) != dim:
        raise UsageError("integrand %r is %d-dimensional; sequence has dim %d"
                         % (args.f, len(polys), dim))
    total = 0.0
    for row in pts:
        v = 1.0
        for coeffs, c in zip(polys, row):
            v *= _poly_eval(coeffs, float(_coord_frac(c)))
        total += v
    estimate = total / len(pts)
    err = abs(estimate - float(exact))
    certified = ""
    if variation is not None and spec == "vdc:b=2":
        certified = float(variation) * evaluate_bound("tijdeman", N=len(pts)) / len(pts)
    rows = [[args.f, spec, len(pts), estimate,
             exact.numerator, exact.denominator, err, certified]]
    return ["integrand", "seq", "N", "estimate", "exact_num", "exact_den",
            "abs_error", "certified_bound"], rows, 0


# ---------------------------------------------------------------------------
# wiring


def _add_globals(parser, trailing):
    # present on the top parser with real defaults and repeated on every
    # subparser with SUPPRESS defaults, so the flags work in either
    # position without the subparser wiping a value given up front
    kw = {"default": argparse.SUPPRESS} if trailing else {}
    parser.add_argument("--config", help="key = value defaults file", **kw)
    parser.add_argument("--out", help="write CSV here instead of stdout", **kw)
    parser.add_argument("--exact", action="store_true",
                        help="refuse points that are only certified to finite precision",
                        **kw)
    parser.add_argument("--seed", type=int,
                        help="seed for randomized suites (default 0)", **kw)
    parser.add_argument("--precision", type=int,
                        help="bits for non-exact generators", **kw)


def _build_parser():
    top = argparse.ArgumentParser(
        prog="corput",
        description="Generate van der Corput-type sequences and measure "
                    "their discrepancies two independent ways.")
    _add_globals(top, trailing=False)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit the first N points")
    p.add_argument("--seq", help="sequence or point-set spec")
    p.add_argument("--N", type=int)
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("disc", help="one discrepancy value of a prefix")
    p.add_argument("--seq")
    p.add_argument("--N", type=int)
    p.add_argument("--measure", default="star",
                   help="star | extreme | l1 | l2 | lp:<p> | diaphony")
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_disc)

    p = sub.add_parser("verify", help="formula-vs-oracle suite")
    p.add_argument("--suite", help="|".join(sorted(_SUITES)))
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("psi", help="export the worker functions of (b, sigma)")
    p.add_argument("--b", type=int)
    p.add_argument("--sigma", default="id")
    p.add_argument("--emit-breakpoints", action="store_true",
                   help="rows at the exact breakpoints instead of a 1/64 grid")
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_psi)

    p = sub.add_parser("bounds", help="evaluate a published bound")
    p.add_argument("--kind")
    p.add_argument("--param", action="append",
                   help="key=value, repeatable (ints, rationals, comma tuples)")
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("scan", help="N*Delta(t) for every prefix")
    p.add_argument("--seq")
    p.add_argument("--t", help="rational threshold in [0, 1]")
    p.add_argument("--Nmax", type=int)
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("serial", help="star discrepancy of overlapping tuples")
    p.add_argument("--b", type=int, help="base (default 2)")
    p.add_argument("--s", type=int, help="tuple length (default 2)")
    p.add_argument("--N", type=int)
    p.add_argument("--grid", type=int, help="resolution for s=3 (default 64)")
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_serial)

    p = sub.add_parser("clt", help="empirical CDF of the scaled base-2 star discrepancy")
    p.add_argument("--m", type=int, help="sample over N < 2^m")
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_clt)

    p = sub.add_parser("integrate", help="QMC average of a catalog integrand")
    p.add_argument("--f", help="|".join(sorted(_INTEGRANDS)))
    p.add_argument("--seq")
    p.add_argument("--N", type=int)
    _add_globals(p, trailing=True)
    p.set_defaults(fn=cmd_integrate)
    return top


def _apply_config(args, cfg):
    for key, raw in cfg.items():
        if not hasattr(args, key):
            raise UsageError("config key %r matches no option" % key)
        current = getattr(args, key)
        if current not in (None, False):
            continue  # explicit flags win
        if key in ("N", "Nmax", "seed", "precision", "b", "s", "m", "grid"):
            setattr(args, key, int(raw))
        elif key == "exact":
            setattr(args, key, raw.strip().lower() in ("1", "true", "yes"))
        else:
            setattr(args, key, raw)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            _apply_config(args, load_config(args.config))
        run = RunConfig(
            seq=getattr(args, "seq", None),
            measure=getattr(args, "measure", None),
            n=getattr(args, "N", None),
            exact=args.exact,
            out=args.out,
            seed=args.seed if args.seed is not None else 0,
            precision=args.precision,
        )
        args.seed = run.seed
        header, rows, rc = args.fn(args)
        _write_csv(run.out, header, rows)
        return rc
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
