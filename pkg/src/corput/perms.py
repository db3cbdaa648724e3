"""Permutations of {0,...,b-1} and permutation sequences with tail rules."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt


@dataclass(frozen=True)
class Perm:
    """A permutation of Z_b stored as its value table."""

    table: tuple

    def __post_init__(self):
        if sorted(self.table) != list(range(len(self.table))):
            raise ValueError("not a permutation of 0..b-1: %r" % (self.table,))

    @property
    def b(self):
        return len(self.table)

    def __call__(self, k):
        return self.table[k]

    def compose(self, other):
        """self after other: (self.compose(other))(k) = self(other(k))."""
        if self.b != other.b:
            raise ValueError("base mismatch")
        return Perm(tuple(self.table[other.table[k]] for k in range(self.b)))

    def inverse(self):
        inv = [0] * self.b
        for k, v in enumerate(self.table):
            inv[v] = k
        return Perm(tuple(inv))

    def is_identity(self):
        return all(v == k for k, v in enumerate(self.table))

    def shift(self, v):
        """The digit-shifted permutation k -> self(k) + v mod b."""
        b = self.b
        return Perm(tuple((self.table[k] + v) % b for k in range(b)))


def identity(b):
    return Perm(tuple(range(b)))


def tau(b):
    """k -> b - 1 - k, the reversal."""
    return Perm(tuple(b - 1 - k for k in range(b)))


def linear(b, h, g):
    """k -> h*k + g mod b; requires gcd(h, b) = 1 so reversal is tau(b) = linear(b, b-1, b-1)."""
    if gcd(h, b) != 1:
        raise ValueError("multiplier %d is not invertible mod %d" % (h, b))
    return Perm(tuple((h * k + g) % b for k in range(b)))


def intricate(p: Perm, q: Perm):
    """Intrication of p (on Z_b) and q (on Z_c): a permutation of Z_{bc}.

    l = b*k + h with 0 <= h < b, 0 <= k < c maps to c*p(h) + q(k).
    """
    b, c = p.b, q.b
    out = []
    for l in range(b * c):
        k, h = divmod(l, b)
        out.append(c * p(h) + q(k))
    return Perm(tuple(out))


def a_set_contains(r):
    """Membership of r >= 0 in the union of the blocks {H(H-1), ..., H^2 - 1}.

    The block containing r has H = isqrt(r) + 1; r belongs iff r >= H(H-1).
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    H = isqrt(r) + 1
    return r >= H * (H - 1)


@dataclass(frozen=True)
class PermSeq:
    """sigma_0, sigma_1, ...: an explicit prefix, then a tail rule.

    tail kinds:
      ("const", perm)        sigma_r = perm for r >= len(prefix)
      ("periodic", perms)    cycle through perms
      ("aset", perm)         perm on the A-set, tau∘perm off it, by absolute r
    """

    b: int
    prefix: tuple
    tail: tuple

    def __post_init__(self):
        kind = self.tail[0]
        if kind not in ("const", "periodic", "aset"):
            raise ValueError("unknown tail kind %r" % (kind,))
        for p in self.prefix:
            if p.b != self.b:
                raise ValueError("prefix perm base mismatch")
        if kind == "periodic":
            if not self.tail[1]:
                raise ValueError("periodic tail needs at least one perm")
            for p in self.tail[1]:
                if p.b != self.b:
                    raise ValueError("tail perm base mismatch")
        else:
            if self.tail[1].b != self.b:
                raise ValueError("tail perm base mismatch")

    @classmethod
    def const(cls, perm, prefix=()):
        return cls(perm.b, tuple(prefix), ("const", perm))

    @classmethod
    def periodic(cls, perms, prefix=()):
        return cls(perms[0].b, tuple(prefix), ("periodic", tuple(perms)))

    @classmethod
    def aset(cls, perm, prefix=()):
        return cls(perm.b, tuple(prefix), ("aset", perm))

    def at(self, r):
        if r < 0:
            raise ValueError("r must be >= 0")
        if r < len(self.prefix):
            return self.prefix[r]
        kind = self.tail[0]
        if kind == "const":
            return self.tail[1]
        if kind == "periodic":
            cyc = self.tail[1]
            return cyc[(r - len(self.prefix)) % len(cyc)]
        sigma = self.tail[1]
        if a_set_contains(r):
            return sigma
        return tau(self.b).compose(sigma)

    def tail_cycle(self):
        """(start, perms) with at(r) = perms[(r - start) % len] for r >= start,
        or None when the tail is not eventually periodic (A-set rule)."""
        kind = self.tail[0]
        start = len(self.prefix)
        if kind == "const":
            return start, (self.tail[1],)
        if kind == "periodic":
            return start, self.tail[1]
        return None

    def is_eventually_periodic(self):
        return self.tail[0] != "aset"


def parse_perm(text, b):
    """One permutation: 'id', 'tau', 'linear(h,g)', or 'v0,v1,...,v_{b-1}'."""
    text = text.strip()
    if text == "id":
        return identity(b)
    if text == "tau":
        return tau(b)
    if text.startswith("linear(") and text.endswith(")"):
        inner = text[len("linear(") : -1]
        h, g = (int(s) for s in inner.split(","))
        return linear(b, h, g)
    vals = tuple(int(s) for s in text.split(","))
    if len(vals) != b:
        raise ValueError("permutation %r has %d entries, base is %d" % (text, len(vals), b))
    return Perm(vals)


def parse_permseq(text, b):
    """Permutation-sequence spec: 'const:<perm>', 'periodic:<p>;<p>;...',
    'aset:<perm>'; a bare '<perm>' means const."""
    text = text.strip()
    if text.startswith("const:"):
        return PermSeq.const(parse_perm(text[len("const:") :], b))
    if text.startswith("periodic:"):
        perms = [parse_perm(p, b) for p in text[len("periodic:") :].split(";")]
        return PermSeq.periodic(perms)
    if text.startswith("aset:"):
        return PermSeq.aset(parse_perm(text[len("aset:") :], b))
    return PermSeq.const(parse_perm(text, b))


def parse_perm_file(path):
    """Permutation file: one 'b:v0,v1,...' per line, '#' comments.  Returns a list."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            bpart, vals = line.split(":", 1)
            b = int(bpart)
            out.append(parse_perm(vals, b))
    return out


def random_perm(b, rng):
    vals = list(range(b))
    rng.shuffle(vals)
    return Perm(tuple(vals))


def random_permseq(b, rng, allow_aset=False):
    """A random permutation sequence: constant or short periodic tail,
    optionally the A-set rule, with a random short prefix."""
    prefix = tuple(random_perm(b, rng) for _ in range(rng.randrange(0, 3)))
    kinds = ["const", "periodic"] + (["aset"] if allow_aset else [])
    kind = rng.choice(kinds)
    if kind == "const":
        return PermSeq.const(random_perm(b, rng)) if not prefix else PermSeq(
            b, prefix, ("const", random_perm(b, rng))
        )
    if kind == "periodic":
        cyc = tuple(random_perm(b, rng) for _ in range(rng.randrange(2, 4)))
        return PermSeq(b, prefix, ("periodic", cyc))
    return PermSeq(b, prefix, ("aset", random_perm(b, rng)))
