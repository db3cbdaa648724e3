"""Halton sequences (classical, permuted, multiplier-scrambled, random-start)
and Hammersley point sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .digits import ExactPoint
from .generators import Gvdc, Sequence, Vdc, odometer_add
from .perms import PermSeq, identity, linear, parse_perm, parse_permseq


def _pairwise_coprime(bases):
    return all(
        gcd(bases[i], bases[j]) == 1
        for i in range(len(bases))
        for j in range(i + 1, len(bases))
    )


@dataclass(frozen=True)
class HaltonSpec:
    """Bases, optional per-coordinate permutation sequences, optional
    rational start vector (orbit mode).  Non-coprime bases are allowed so
    the uniformity criterion can be shown failing; `coprime` records it."""

    bases: tuple
    permseqs: tuple = None
    start: tuple = None

    def __post_init__(self):
        if any(b < 2 for b in self.bases):
            raise ValueError("bases must be >= 2")
        if self.permseqs is not None and len(self.permseqs) != len(self.bases):
            raise ValueError("one permutation sequence per coordinate")
        if self.start is not None:
            st = tuple(Fraction(x) for x in self.start)
            if len(st) != len(self.bases):
                raise ValueError("start vector length mismatch")
            if any(not 0 <= x < 1 for x in st):
                raise ValueError("start coordinates must lie in [0, 1)")
            object.__setattr__(self, "start", st)

    @property
    def coprime(self):
        return _pairwise_coprime(self.bases)


class HaltonSeq(Sequence):
    def __init__(self, spec: HaltonSpec):
        self.spec = spec
        self.kind = "halton"
        self.dim = len(spec.bases)
        if spec.start is not None:
            self._coords = None
        elif spec.permseqs is not None:
            self._coords = [
                Gvdc(b, ps) for b, ps in zip(spec.bases, spec.permseqs)
            ]
        else:
            self._coords = [Vdc(b) for b in spec.bases]

    def point(self, n):
        if self._coords is None:
            return tuple(
                ExactPoint.from_fraction(odometer_add(x, n, b))
                for x, b in zip(self.spec.start, self.spec.bases)
            )
        return tuple(c.point(n) for c in self._coords)


def halton_point(n, spec: HaltonSpec):
    return HaltonSeq(spec).point(n)


def atanassov_perm_seq(b, k):
    """Power-multiplier scrambling sigma_r(x) = x k^r mod b: periodic with
    period the multiplicative order of k mod b."""
    if k % b == 0:
        raise ValueError("multiplier divisible by the base")
    k %= b
    order, power = 1, k
    while power != 1:
        power = (power * k) % b
        order += 1
    perms = [linear(b, pow(k, r, b), 0) for r in range(order)]
    return PermSeq.periodic(perms)


def hammersley_2d(b, m, sigmas=None):
    """The b^m pairs (permuted radical inverse of n, n/b^m).

    sigmas: at most m permutations for digit positions 0..m-1; positions
    past the vector use the identity, which keeps sigma_r(0) = 0 there.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    sigmas = tuple(sigmas or ())
    if len(sigmas) > m:
        raise ValueError("at most m digit permutations")
    gen = Gvdc(b, PermSeq.const(identity(b), prefix=sigmas))
    den = b ** m
    return [(gen.point(n), Fraction(n, den)) for n in range(den)]


def hammersley_sd(N, bases):
    """N points (n/N, radical inverses of n in each base); the bases should
    be pairwise coprime for uniformity (not enforced)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    gens = [Vdc(b) for b in bases]
    return [
        (Fraction(n, N),) + tuple(g.point(n) for g in gens) for n in range(N)
    ]


def parse_multidim(spec):
    """`halton:bases=2,3,5` | `halton:bases=2,3,perms=aset:id|const:tau` |
    `halton:bases=2,3,start=1/3,1/5` | `ham2:b=2,m=8,sigma=id^8` |
    `hams:N=1000,bases=2,3`"""
    from .generators import _parse_kv_grouped

    kind, rest = spec.split(":", 1)
    kv = _parse_kv_grouped(rest)
    if kind == "halton":
        bases = tuple(int(s) for s in kv["bases"].split(","))
        permseqs = None
        if kv.get("perms"):
            permseqs = tuple(
                parse_permseq(p, b) for p, b in zip(kv["perms"].split("|"), bases)
            )
        start = None
        if kv.get("start"):
            start = tuple(Fraction(s) for s in kv["start"].split(","))
        return HaltonSeq(HaltonSpec(bases, permseqs, start))
    if kind == "ham2":
        b = int(kv["b"])
        m = int(kv["m"])
        sig = kv.get("sigma", "")
        sigmas = []
        if sig:
            for tok in sig.split(";"):
                if "^" in tok:
                    name, count = tok.split("^")
                    sigmas.extend([parse_perm(name, b)] * int(count))
                else:
                    sigmas.append(parse_perm(tok, b))
        return hammersley_2d(b, m, sigmas)
    if kind == "hams":
        bases = tuple(int(s) for s in kv["bases"].split(","))
        return hammersley_sd(int(kv["N"]), bases)
    raise ValueError("unknown multidim kind %r" % kind)
