"""Residue sets in Z_M, the modulus context for M = (pqr)^2, and the basic
set operators used everywhere else: translation, residue classes,
stratification by gcd content, periodicity and subgroup containment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Iterator

from .errors import EmptySet, NonPrime, NotDistinct

__all__ = [
    "ModulusContext",
    "ZmSet",
    "Stratification",
    "make_modulus",
    "is_prime",
    "translate",
    "residue_class",
    "residue_class2",
    "stratify",
    "notation_part",
    "exact_part",
    "is_periodic",
    "subgroup_containment",
    "strat_label",
]

_PRIME_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class ModulusContext:
    """Three distinct primes p < q < r and the constants derived from M = (pqr)^2.

    Naming: ``q2r2`` is q^2 r^2, ``pq2r2`` is p q^2 r^2, and so on.
    """

    p: int
    q: int
    r: int
    M: int = field(init=False)
    pqr: int = field(init=False)
    p2: int = field(init=False)
    q2: int = field(init=False)
    r2: int = field(init=False)
    p2q2: int = field(init=False)
    q2r2: int = field(init=False)
    r2p2: int = field(init=False)
    pq2r2: int = field(init=False)
    qr2p2: int = field(init=False)
    rp2q2: int = field(init=False)
    p2qr: int = field(init=False)
    p2q2r: int = field(init=False)
    p2qr2: int = field(init=False)

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        for x in (p, q, r):
            if not isinstance(x, int) or not is_prime(x):
                raise NonPrime(f"{x} is not prime")
        if len({p, q, r}) != 3:
            raise NotDistinct(f"primes must be distinct, got {p}, {q}, {r}")
        if not p < q < r:
            raise ValueError("ModulusContext needs p < q < r; use make_modulus to sort")
        values = {
            "M": (p * q * r) ** 2,
            "pqr": p * q * r,
            "p2": p * p,
            "q2": q * q,
            "r2": r * r,
            "p2q2": p * p * q * q,
            "q2r2": q * q * r * r,
            "r2p2": r * r * p * p,
            "pq2r2": p * q * q * r * r,
            "qr2p2": q * r * r * p * p,
            "rp2q2": r * p * p * q * q,
            "p2qr": p * p * q * r,
            "p2q2r": p * p * q * q * r,
            "p2qr2": p * p * q * r * r,
        }
        for name, value in values.items():
            object.__setattr__(self, name, value)

    @property
    def primes(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def others(self, a: int) -> tuple[int, int]:
        """The two primes other than ``a``, in cyclic order after ``a``."""
        p, q, r = self.primes
        if a == p:
            return (q, r)
        if a == q:
            return (r, p)
        if a == r:
            return (p, q)
        raise ValueError(f"{a} is not one of {self.primes}")

    def cofactor_sq(self, a: int) -> int:
        """M / a^2, e.g. q^2 r^2 for a = p (the multiplier of U in A)."""
        self.others(a)
        return self.M // (a * a)

    def period(self, a: int) -> int:
        """M / a, e.g. p q^2 r^2 for a = p."""
        self.others(a)
        return self.M // a

    def pair_product(self, a: int) -> int:
        """Product of the two primes other than ``a`` (qr for a = p)."""
        b, c = self.others(a)
        return b * c

    @cached_property
    def szabo_div_a(self) -> frozenset[int]:
        """{1, p^2, q^2, r^2, p^2q^2, q^2r^2, r^2p^2, M}: the division set of a
        sumset-form tile."""
        return frozenset({1, self.p2, self.q2, self.r2, self.p2q2, self.q2r2,
                          self.r2p2, self.M})

    def __str__(self):
        return f"({self.p},{self.q},{self.r}), M={self.M}"


def make_modulus(p: int, q: int, r: int) -> ModulusContext:
    """Validate three primes (each below 2^16) and build their context, sorted."""
    for x in (p, q, r):
        if not isinstance(x, int) or isinstance(x, bool):
            raise NonPrime(f"{x!r} is not an integer")
        if x >= _PRIME_LIMIT:
            raise ValueError(f"{x} exceeds the supported prime bound 2^16")
        if not is_prime(x):
            raise NonPrime(f"{x} is not prime")
    if len({p, q, r}) != 3:
        raise NotDistinct(f"primes must be distinct, got {p}, {q}, {r}")
    a, b, c = sorted((p, q, r))
    return ModulusContext(a, b, c)


@dataclass(frozen=True)
class ZmSet:
    """A subset of Z_M stored as a strictly increasing tuple of residues."""

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        els = self.elements
        if not isinstance(els, tuple):
            els = tuple(els)
            object.__setattr__(self, "elements", els)
        prev = -1
        for e in els:
            if e <= prev:
                raise ValueError("elements must be strictly increasing")
            prev = e
        if els and (els[0] < 0 or els[-1] >= self.modulus):
            raise ValueError(f"elements must lie in [0, {self.modulus})")

    @classmethod
    def of(cls, elements: Iterable[int], modulus: int) -> ZmSet:
        """Reduce mod ``modulus``, drop duplicates and sort."""
        return cls(modulus, tuple(sorted({int(e) % modulus for e in elements})))

    @classmethod
    def empty(cls, modulus: int) -> ZmSet:
        return cls(modulus, ())

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __bool__(self):
        return bool(self.elements)

    def union(self, *others: ZmSet) -> ZmSet:
        s = set(self.elements)
        for o in others:
            self._same_modulus(o)
            s.update(o.elements)
        return ZmSet(self.modulus, tuple(sorted(s)))

    def difference(self, other: ZmSet) -> ZmSet:
        self._same_modulus(other)
        return ZmSet(self.modulus, tuple(e for e in self.elements if e not in other))

    def intersection(self, other: ZmSet) -> ZmSet:
        self._same_modulus(other)
        return ZmSet(self.modulus, tuple(e for e in self.elements if e in other))

    def filter(self, pred) -> ZmSet:
        return ZmSet(self.modulus, tuple(e for e in self.elements if pred(e)))

    def scaled(self, k: int) -> ZmSet:
        """{k*e mod M}; may be smaller than self when k is not a unit."""
        return ZmSet.of((k * e for e in self.elements), self.modulus)

    def _same_modulus(self, other: ZmSet):
        if other.modulus != self.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def to_dict(self) -> dict:
        return {"modulus": self.modulus, "elements": list(self.elements)}

    def to_text(self) -> str:
        return f"{self.modulus}\n{' '.join(map(str, self.elements))}\n"

    def __repr__(self):
        if len(self.elements) > 12:
            head = ", ".join(map(str, self.elements[:12]))
            return f"ZmSet(M={self.modulus}, {{{head}, ...}} |{len(self)}|)"
        return f"ZmSet(M={self.modulus}, {{{', '.join(map(str, self.elements))}}})"


def translate(E: ZmSet, x0: int) -> ZmSet:
    """E - x0 reduced mod M."""
    M = E.modulus
    return ZmSet(M, tuple(sorted((e - x0) % M for e in E.elements)))


def residue_class(E: ZmSet, ell: int, j: int) -> ZmSet:
    """Elements of E congruent to j mod ell."""
    if not 0 <= j < ell:
        raise ValueError(f"class index {j} out of range for modulus {ell}")
    return E.filter(lambda x: x % ell == j)


def residue_class2(E: ZmSet, ell: int, j: int, k: int) -> ZmSet:
    """Elements of E congruent to j + k*ell mod ell^2."""
    if not (0 <= j < ell and 0 <= k < ell):
        raise ValueError(f"class indices ({j}, {k}) out of range for {ell}")
    target = j + k * ell
    sq = ell * ell
    return E.filter(lambda x: x % sq == target)


def _valuation(x: int, prime: int, cap: int = 2) -> int:
    v = 0
    while v < cap and x % prime == 0:
        x //= prime
        v += 1
    return v


def strat_label(i: int, j: int, k: int) -> str:
    """Label of the stratum with exponents (i, j, k), e.g. (2, 1, 0) -> 'p2q'."""
    if i == j == k == 0:
        return "star"
    out = []
    for name, e in (("p", i), ("q", j), ("r", k)):
        if e == 1:
            out.append(name)
        elif e == 2:
            out.append(name + "2")
        elif e != 0:
            raise ValueError(f"exponent {e} out of range")
    return "".join(out)


def _exponents(x: int, ctx: ModulusContext) -> tuple[int, int, int]:
    g = gcd(x, ctx.M)
    return (_valuation(g, ctx.p), _valuation(g, ctx.q), _valuation(g, ctx.r))


@dataclass(frozen=True)
class Stratification:
    """Partition of a set by the exact prime-power content of gcd(x, M)."""

    source: ZmSet
    parts: dict[str, ZmSet]

    def part(self, label: str) -> ZmSet:
        return self.parts.get(label, ZmSet.empty(self.source.modulus))

    def label_of(self, x: int) -> str:
        for label, s in self.parts.items():
            if x in s:
                return label
        raise KeyError(x)

    def sizes(self) -> dict[str, int]:
        return {k: len(v) for k, v in self.parts.items()}


def stratify(E: ZmSet, ctx: ModulusContext) -> Stratification:
    if E.modulus != ctx.M:
        raise ValueError(f"set modulus {E.modulus} differs from context M={ctx.M}")
    buckets: dict[str, list[int]] = {}
    for x in E.elements:
        buckets.setdefault(strat_label(*_exponents(x, ctx)), []).append(x)
    parts = {k: ZmSet(E.modulus, tuple(v)) for k, v in sorted(buckets.items())}
    return Stratification(E, parts)


def notation_part(E: ZmSet, ctx: ModulusContext, i: int, j: int, k: int) -> ZmSet:
    """The set E_{p^i q^j r^k} of the usual notation.

    Elements divisible by p^i q^j r^k and by none of the primes whose exponent
    is zero. Unlike a stratum this is not exact: E_p contains E_{p^2}.
    With all exponents zero this is E*, the elements coprime to pqr.
    """
    d = ctx.p ** i * ctx.q ** j * ctx.r ** k
    excluded = [a for a, e in zip(ctx.primes, (i, j, k)) if e == 0]
    return E.filter(lambda x: x % d == 0 and all(x % a for a in excluded))


def exact_part(E: ZmSet, ctx: ModulusContext, ell: int) -> ZmSet:
    """E*_ell: elements x of E with gcd(x, M) == ell exactly."""
    if ctx.M % ell:
        raise ValueError(f"{ell} does not divide M={ctx.M}")
    return E.filter(lambda x: gcd(x, ctx.M) == ell)


def is_periodic(E: ZmSet, t: int) -> bool:
    M = E.modulus
    t %= M
    if t == 0:
        return True
    return all((e + t) % M in E for e in E.elements)


def subgroup_containment(E: ZmSet) -> int | None:
    """gcd(E, M) when E sits inside the proper subgroup gZ, else None."""
    if not E:
        raise EmptySet("subgroup containment of the empty set is undefined")
    g = reduce(gcd, E.elements, E.modulus)
    return g if g > 1 else None
