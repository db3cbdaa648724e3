"""Digital sequences over Z_b: generator-matrix streams, permuted streams
with an upper-triangular shift part, Pascal and Niederreiter matrices built
from Laurent expansions, polynomial radical inverses, and net-quality checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .digits import ExactPoint, Expansion, to_digits, truncate
from .perms import PermSeq, linear, parse_permseq
from .generators import DEFAULT_PRECISION, Sequence, _tail_digits_and_value


def _is_prime(b):
    if b < 2:
        return False
    d = 2
    while d * d <= b:
        if b % d == 0:
            return False
        d += 1
    return True


def _require_prime(b):
    if not _is_prime(b):
        raise ValueError("base %d is not prime" % b)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class GeneratorMatrix:
    """Top-left d x d block plus an identity or zero continuation.

    The continuation also fills the off-block region (entry 0 there except
    the identity diagonal), so streams are exact for n < b^d; callers pick
    d at least as deep as the digits they feed in.
    """

    base: int
    block: tuple = ()
    tail: str = "identity"

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if self.tail not in ("identity", "zero"):
            raise ValueError("tail must be 'identity' or 'zero'")
        rows = tuple(tuple(int(v) % self.base for v in row) for row in self.block)
        for row in rows:
            if len(row) != len(rows):
                raise ValueError("block must be square")
        object.__setattr__(self, "block", rows)

    @property
    def depth(self):
        return len(self.block)

    def entry(self, r, k):
        d = self.depth
        if r < d and k < d:
            return self.block[r][k]
        if self.tail == "identity":
            return 1 if r == k else 0
        return 0

    def is_nut(self, depth):
        """True when every left-upper m x m sub-matrix (m <= depth) is
        non-singular mod the (prime) base: LU without row swaps succeeds."""
        _require_prime(self.base)
        b = self.base
        a = [[self.entry(r, k) for k in range(depth)] for r in range(depth)]
        for i in range(depth):
            piv = a[i][i] % b
            if piv == 0:
                return False
            inv = pow(piv, b - 2, b)
            for r in range(i + 1, depth):
                f = (a[r][i] * inv) % b
                if f:
                    for k in range(i, depth):
                        a[r][k] = (a[r][k] - f * a[i][k]) % b
        return True


def identity_matrix(b):
    return GeneratorMatrix(b, (), "identity")


def upper_ones_matrix(b, depth):
    """Upper-triangular all-ones block (the swapping-style example matrix);
    identity continuation keeps the stream a digital (0,1)-sequence, exact
    for n < b^depth."""
    block = tuple(
        tuple(1 if k >= r else 0 for k in range(depth)) for r in range(depth)
    )
    return GeneratorMatrix(b, block, "identity")


def symmetrize_matrix(b, depth):
    """First column all ones, identity occupying the remaining columns
    (entry (r, r+1) = 1).  The infinite first column cannot continue past
    the block, so the stream matches the symmetrized sequence only under
    truncation to < depth digits."""
    block = tuple(
        tuple(1 if (k == 0 or k == r + 1) else 0 for k in range(depth))
        for r in range(depth)
    )
    return GeneratorMatrix(b, block, "zero")


def pascal_matrix(b, beta, depth):
    """Entries C(k, r) beta^(k-r) mod b on and above the diagonal."""
    _require_prime(b)
    beta %= b
    rows = []
    for r in range(depth):
        row = [0] * depth
        binom = 1  # C(k, r) built up column by column
        power = 1
        for k in range(r, depth):
            row[k] = (binom * power) % b
            binom = binom * (k + 1) // (k + 1 - r)
            power = (power * beta) % b
        rows.append(tuple(row))
    return GeneratorMatrix(b, tuple(rows), "identity" if beta == 0 else "zero")


def matrix_stream_point(n, matrix: GeneratorMatrix):
    """One coordinate of a digital stream: digit r is sum_k c_{r,k} n_k."""
    b = matrix.base
    digits = to_digits(n, b)
    rows = max(matrix.depth, len(digits))
    out = []
    for r in range(rows):
        acc = 0
        for k, d in enumerate(digits):
            if d:
                acc += matrix.entry(r, k) * d
        out.append(acc % b)
    num = 0
    for d in out:
        num = num * b + d
    val = Fraction(num, b ** rows) if rows else Fraction(0)
    exp = Expansion(b, tuple(out), (0,))
    return ExactPoint(val.numerator, val.denominator, exp)


def digital_point(n, matrices, b):
    """Point of an s-dimensional digital sequence over the prime field Z_b."""
    _require_prime(b)
    for m in matrices:
        if m.base != b:
            raise ValueError("matrix base mismatch")
    return tuple(matrix_stream_point(n, m) for m in matrices)


class MatrixSeq(Sequence):
    """1-D digital stream for a single generator matrix."""

    def __init__(self, matrix: GeneratorMatrix):
        _require_prime(matrix.base)
        self.matrix = matrix
        self.base = matrix.base
        self.kind = "digital"

    def point(self, n):
        return matrix_stream_point(n, self.matrix)


def parse_matrix_file(text):
    """Matrices from `b=<base> tail=<identity|zero>` headers + comma rows."""
    matrices = []
    base = tail = None
    rows = []

    def flush():
        nonlocal rows
        if base is not None and rows:
            matrices.append(GeneratorMatrix(base, tuple(rows), tail))
        rows = []

    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("b="):
            flush()
            parts = dict(p.split("=", 1) for p in line.split())
            base = int(parts["b"])
            tail = parts.get("tail", "identity")
        else:
            rows.append(tuple(int(v) for v in line.split(",")))
    flush()
    return matrices


# ---------------------------------------------------------------------------
# permuted streams with an upper-triangular shift part


@dataclass(frozen=True)
class StrictUpper:
    """Strictly upper-triangular shift coefficients c_r^k (k > r), finite
    support; any integer base >= 2."""

    base: int
    entries: tuple = ()  # ((r, k, value), ...)

    def __post_init__(self):
        seen = {}
        for r, k, v in self.entries:
            if k <= r:
                raise ValueError("entries must satisfy k > r")
            v %= self.base
            if v:
                seen[(r, k)] = v
        object.__setattr__(
            self, "entries", tuple((r, k, v) for (r, k), v in sorted(seen.items()))
        )

    def row(self, r):
        return [(k, v) for rr, k, v in self.entries if rr == r]

    def shift(self, r, digits):
        """theta-style digit shift sum_{k>r} c_r^k d_k mod base."""
        acc = 0
        for rr, k, v in self.entries:
            if rr == r and k < len(digits):
                acc += v * digits[k]
        return acc % self.base

    @classmethod
    def zero(cls, b):
        return cls(b, ())

    @classmethod
    def from_matrix(cls, matrix: GeneratorMatrix):
        """The above-diagonal part of an upper-triangular matrix block."""
        ent = []
        for r in range(matrix.depth):
            for k in range(r + 1, matrix.depth):
                v = matrix.block[r][k]
                if v:
                    ent.append((r, k, v))
        return cls(matrix.base, tuple(ent))


def gnut_point(n, permseq: PermSeq, C: StrictUpper, precision=DEFAULT_PRECISION):
    """Digit r is sigma_r(n_r) + sum_{k>r} c_r^k n_k mod b.

    The shift part vanishes past the digits of n, so the infinite tail is
    the same sigma_r(0) series as the plain permuted sequence.
    """
    b = permseq.b
    if C.base != b:
        raise ValueError("shift matrix base mismatch")
    digits = to_digits(n, b)
    L = len(digits)
    head = [
        (permseq.at(r)(d) + C.shift(r, digits)) % b for r, d in enumerate(digits)
    ]
    num = 0
    for d in head:
        num = num * b + d
    val = Fraction(num, b ** L) if L else Fraction(0)
    thead, tcycle, tval, err = _tail_digits_and_value(permseq, L, b, precision)
    val += tval
    full_head = tuple(head) + thead
    if tcycle is not None:
        exp = Expansion(b, full_head, tcycle)
        return ExactPoint(val.numerator, val.denominator, exp)
    return ExactPoint(val.numerator, val.denominator, Expansion(b, full_head, (0,)), err)


class GnutSeq(Sequence):
    """Permuted digital (0,1)-stream with an upper-triangular shift part."""

    def __init__(self, permseq: PermSeq, C: StrictUpper, precision=DEFAULT_PRECISION):
        if C.base != permseq.b:
            raise ValueError("shift matrix base mismatch")
        self.base = permseq.b
        self.permseq = permseq
        self.C = C
        self.precision = precision
        self.kind = "gnut"

    def point(self, n):
        return gnut_point(n, self.permseq, self.C, self.precision)


def gnut_from_nut(matrix: GeneratorMatrix):
    """Split an upper-triangular NUT matrix into its diagonal permutations
    delta_r(i) = c_rr * i and the strictly-upper shift part."""
    b = matrix.base
    if not matrix.is_nut(max(matrix.depth, 1)):
        raise ValueError("matrix is not NUT to its own depth")
    for r in range(matrix.depth):
        for k in range(r):
            if matrix.block[r][k]:
                raise ValueError("matrix is not upper triangular")
    prefix = tuple(linear(b, matrix.block[r][r], 0) for r in range(matrix.depth))
    if matrix.tail != "identity":
        raise ValueError("NUT streams need the identity continuation")
    permseq = PermSeq.const(linear(b, 1, 0), prefix=prefix)
    return permseq, StrictUpper.from_matrix(matrix)


def random_strict_upper(b, rng, depth, fill=0.5):
    ent = []
    for r in range(depth):
        for k in range(r + 1, depth):
            if rng.random() < fill:
                v = rng.randrange(1, b)
                ent.append((r, k, v))
    return StrictUpper(b, tuple(ent))


# ---------------------------------------------------------------------------
# polynomials over F_b (coefficient lists little-endian)


def poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return tuple(p)


def poly_add(p, q, b):
    n = max(len(p), len(q))
    return poly_trim(
        tuple(((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)) % b
              for i in range(n))
    )


def poly_mul(p, q, b):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, c in enumerate(q):
                out[i + j] = (out[i + j] + a * c) % b
    return poly_trim(out)


def poly_divmod(p, q, b):
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(q[-1], b - 2, b) if q[-1] != 1 else 1
    rem = list(p)
    dq = len(q) - 1
    quot = [0] * max(0, len(rem) - dq)
    while len(poly_trim(rem)) - 1 >= dq and poly_trim(rem):
        rem = list(poly_trim(rem))
        shift = len(rem) - 1 - dq
        c = (rem[-1] * inv) % b
        quot[shift] = c
        for i, qc in enumerate(q):
            rem[shift + i] = (rem[shift + i] - c * qc) % b
    return poly_trim(quot), poly_trim(rem)


def poly_pow(p, e, b):
    out = (1,)
    for _ in range(e):
        out = poly_mul(out, p, b)
    return out


def poly_is_irreducible(p, b):
    """Trial division by all monic polynomials of degree <= deg/2."""
    p = poly_trim(p)
    d = len(p) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for code in range(b ** deg):
            q = list(to_digits(code, b, width=deg)) + [1]
            _, rem = poly_divmod(p, tuple(q), b)
            if not rem:
                return False
    return True


def parse_poly(text, b):
    """Literal like `x^2+x+1` or `2x^3+x` to little-endian coefficients."""
    coeffs = {}
    for term in text.replace(" ", "").replace("-", "+-").split("+"):
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if "x" in term:
            head, _, exp = term.partition("x")
            c = int(head) if head else 1
            e = int(exp[1:]) if exp.startswith("^") else (1 if not exp else int(exp))
        else:
            c, e = int(term), 0
        c = (-c if neg else c) % b
        coeffs[e] = (coeffs.get(e, 0) + c) % b
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return poly_trim(out)


def poly_str(p):
    if not p:
        return "0"
    terms = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            cs = "" if c == 1 else str(c)
            terms.append("%sx%s" % (cs, "^%d" % e if e > 1 else ""))
    return "+".join(terms)


def laurent_expand(y, p, power, terms, b):
    """Coefficients a(0..terms-1) with y/p^power = sum a(r) x^(-r-1) over
    F_b((1/x)), any polynomial part discarded.

    Multiply y by x^terms and long-divide: the quotient coefficient of
    x^(terms-1-r) is a(r); the remainder only feeds coefficients past T.
    """
    _require_prime(b)
    den = poly_pow(poly_trim(p), power, b)
    num = poly_trim((0,) * terms + tuple(y))
    quot, _ = poly_divmod(num, den, b)
    return [quot[terms - 1 - r] if 0 <= terms - 1 - r < len(quot) else 0
            for r in range(terms)]


def niederreiter_matrices(b, polys, depth):
    """Generator matrices for the generalized-Niederreiter construction
    with monomial numerators: row r of matrix j (with r = Q e_j + k) holds
    the Laurent coefficients of x^k / p_j^(Q+1)."""
    _require_prime(b)
    canon = [poly_trim(p) for p in polys]
    for p in canon:
        if len(p) < 2:
            raise ValueError("polynomials must be non-constant")
        if not poly_is_irreducible(p, b):
            raise ValueError("reducible polynomial %s" % poly_str(p))
    if len(set(canon)) != len(canon):
        raise ValueError("repeated polynomial")
    out = []
    for p in canon:
        e = len(p) - 1
        rows = []
        for r in range(depth):
            Q, k = divmod(r, e)
            y = (0,) * k + (1,)
            rows.append(tuple(laurent_expand(y, p, Q + 1, depth, b)))
        out.append(GeneratorMatrix(b, tuple(rows), "zero"))
    return out


# ---------------------------------------------------------------------------
# polynomial radical inverse


def _rational_function_digits(num, den, b, max_steps=4096):
    """Base-b digit stream of mu(num/den) for deg num < deg den, den monic:
    eventually periodic, detected on the remainder state.

    Returns (head_digits, cycle_digits)."""
    state = poly_trim(num)
    seen = {}
    digits = []
    while state not in seen:
        seen[state] = len(digits)
        q, state = poly_divmod((0,) + state, den, b)
        digits.append(q[0] if q else 0)
        if len(digits) > max_steps:
            raise RuntimeError("digit stream failed to cycle")
    start = seen[state]
    return tuple(digits[:start]), tuple(digits[start:])


class PolyVdc(Sequence):
    """Radical inverse after rewriting n in base p(x) over F_b:
    n(x) = sum r_j(x) p(x)^j, value mu_b(sum r_j / p^(j+1))."""

    def __init__(self, b, p):
        _require_prime(b)
        p = poly_trim(p)
        if len(p) < 2:
            raise ValueError("p must be non-constant")
        inv = pow(p[-1], b - 2, b)
        self.p = poly_trim(tuple((c * inv) % b for c in p))  # monic canonical
        self.base = b
        self.kind = "poly"

    def point(self, n):
        b = self.base
        npoly = poly_trim(to_digits(n, b))
        rs = []
        while npoly:
            npoly, rem = poly_divmod(npoly, self.p, b)
            rs.append(rem)
        if not rs:
            return ExactPoint(0, 1, Expansion(b, (), (0,)))
        J = len(rs)
        num = ()
        for j, r in enumerate(rs):
            num = poly_add(num, poly_mul(r, poly_pow(self.p, J - 1 - j, b), b), b)
        den = poly_pow(self.p, J, b)
        head, cycle = _rational_function_digits(num, den, b)
        hval = 0
        for d in head:
            hval = hval * b + d
        val = Fraction(hval, b ** len(head)) if head else Fraction(0)
        cnum = 0
        for d in cycle:
            cnum = cnum * b + d
        if cnum:
            val += Fraction(cnum, b ** len(head) * (b ** len(cycle) - 1))
            exp = Expansion(b, head, cycle)
        else:
            exp = Expansion(b, head, (0,))
        return ExactPoint(val.numerator, val.denominator, exp)


# ---------------------------------------------------------------------------
# net quality


def _rank_mod(rows, b, cols):
    a = [list(r[:cols]) for r in rows]
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] % b), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c] % b, b - 2, b)
        for i in range(len(a)):
            if i != rank and a[i][c] % b:
                f = (a[i][c] * inv) % b
                for k in range(c, cols):
                    a[i][k] = (a[i][k] - f * a[rank][k]) % b
        rank += 1
    return rank


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def net_t_matrices(matrices, b, m):
    """Smallest t such that for every d_1+...+d_s = m-t the stacked first
    d_j rows (columns 0..m-1) are linearly independent over Z_b."""
    _require_prime(b)
    for mat in matrices:
        if mat.tail == "zero" and mat.depth < m:
            raise ValueError("zero-tail matrix shallower than m: rank unknown")
    rows = [
        [[mat.entry(r, k) for k in range(m)] for r in range(m)] for mat in matrices
    ]
    for t in range(m + 1):
        ok = True
        for comp in _compositions(m - t, len(matrices)):
            stack = []
            for j, dj in enumerate(comp):
                stack.extend(rows[j][:dj])
            if _rank_mod(stack, b, m) != m - t:
                ok = False
                break
        if ok:
            return t
    return m


def net_t_points(point_fn, s, b, m, blocks=1):
    """Smallest t such that every elementary interval of volume b^(t-m)
    holds exactly b^t truncated points of each length-b^m block.

    point_fn(n) returns an s-tuple; coordinates are truncated to their
    first m digits before binning (expansions respected).
    """
    cache = {}

    def cell_key(n, dvec):
        if n not in cache:
            pt = point_fn(n)
            pt = pt if isinstance(pt, tuple) else (pt,)
            cache[n] = [truncate(x, b, m) for x in pt]
        tr = cache[n]
        return tuple(int(tr[j] * b ** dvec[j]) for j in range(s))

    for t in range(m + 1):
        ok = True
        for comp in _compositions(m - t, s):
            for blk in range(blocks):
                counts = {}
                for n in range(blk * b ** m, (blk + 1) * b ** m):
                    key = cell_key(n, comp)
                    counts[key] = counts.get(key, 0) + 1
                if any(c != b ** t for c in counts.values()) or len(
                    counts
                ) != b ** (m - t):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return t
    return m


def is_01_prefix(seq, b, m_max, blocks=2):
    """Check the broad-sense (0,1) property: each block of b^m consecutive
    points has exactly one truncated point in every interval [k/b^m,
    (k+1)/b^m), for all m <= m_max."""
    point = seq.point if hasattr(seq, "point") else seq
    for m in range(1, m_max + 1):
        for blk in range(blocks):
            seen = set()
            for n in range(blk * b ** m, (blk + 1) * b ** m):
                idx = int(truncate(point(n), b, m) * b ** m)
                if idx in seen:
                    return False
                seen.add(idx)
            if len(seen) != b ** m:
                return False
    return True


# ---------------------------------------------------------------------------
# parsing hook for the sequence mini-language


def parse_digital_sequence(kind, rest):
    """gnut:b=2,sigma=const:id,c=0-1:1|0-2:1  nut:b=3,rows=1,1,0;0,2,1;0,0,1
    poly:b=2,p=x^2+x+1"""
    from .generators import _parse_kv_grouped

    kv = _parse_kv_grouped(rest)
    b = int(kv["b"])
    if kind == "poly":
        return PolyVdc(b, parse_poly(kv["p"], b))
    if kind == "nut":
        rows = tuple(
            tuple(int(v) for v in row.split(",")) for row in kv["rows"].split(";")
        )
        mat = GeneratorMatrix(b, rows, kv.get("tail", "identity"))
        permseq, C = gnut_from_nut(mat)
        return GnutSeq(permseq, C)
    if kind == "gnut":
        permseq = parse_permseq(kv.get("sigma", "const:id"), b)
        ent = []
        if kv.get("c"):
            for part in kv["c"].split("|"):
                pos, val = part.split(":")
                r, k = pos.split("-")
                ent.append((int(r), int(k), int(val)))
        return GnutSeq(permseq, StrictUpper(b, tuple(ent)))
    raise ValueError("unknown digital kind %r" % kind)
