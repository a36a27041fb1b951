"""Division sets, the two factorization tests (coverage count and Sands'
criterion), dilation, and the divisor-forcing lemma for sets packed into a
single class mod p^2 q r.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import EmptySet, PreconditionViolated
from .residue import ModulusContext, ZmSet

__all__ = [
    "DivSet",
    "div_pair",
    "div_set",
    "div_between",
    "is_factorization_brute",
    "is_factorization_sands",
    "dilate",
    "dilate_check",
    "Lemma24Report",
    "lemma24_check",
]


@dataclass(frozen=True)
class DivSet:
    modulus: int
    divisors: frozenset[int]

    def __contains__(self, d):
        return d in self.divisors

    def __iter__(self):
        return iter(sorted(self.divisors))

    def __len__(self):
        return len(self.divisors)

    def __and__(self, other: DivSet) -> frozenset[int]:
        return self.divisors & other.divisors

    def __eq__(self, other):
        if isinstance(other, DivSet):
            return self.modulus == other.modulus and self.divisors == other.divisors
        if isinstance(other, (set, frozenset)):
            return self.divisors == other
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.divisors))

    def sorted(self) -> list[int]:
        return sorted(self.divisors)


def div_pair(x: int, y: int, M: int) -> int:
    """gcd(x - y, M), which is M on the diagonal."""
    return gcd((x - y) % M, M)


def _differences(D: ZmSet, E: ZmSet) -> set[int]:
    M = D.modulus
    return {(a - b) % M for a in D.elements for b in E.elements}


def div_set(E: ZmSet) -> DivSet:
    if not E:
        raise EmptySet("Div of the empty set")
    M = E.modulus
    return DivSet(M, frozenset(gcd(d, M) for d in _differences(E, E)))


def div_between(D: ZmSet, E: ZmSet) -> DivSet:
    if not D or not E:
        raise EmptySet("Div(D, E) needs both sets nonempty")
    if D.modulus != E.modulus:
        raise ValueError("modulus mismatch")
    M = D.modulus
    return DivSet(M, frozenset(gcd(d, M) for d in _differences(D, E)))


def is_factorization_brute(A: ZmSet, B: ZmSet) -> bool:
    """Count every sum a + b mod M and require each residue exactly once.

    Works for any modulus; deliberately shares nothing with the division-set
    code so it can serve as the ground truth for everything else.
    """
    M = A.modulus
    if B.modulus != M:
        raise ValueError("modulus mismatch")
    if len(A) * len(B) != M:
        return False
    seen = bytearray(M)
    for b in B.elements:
        for a in A.elements:
            s = a + b
            if s >= M:
                s -= M
            if seen[s]:
                return False
            seen[s] = 1
    return True


def is_factorization_sands(A: ZmSet, B: ZmSet) -> bool:
    """|A||B| = M and Div(A) and Div(B) meet only in M."""
    M = A.modulus
    if B.modulus != M:
        raise ValueError("modulus mismatch")
    if not A or not B or len(A) * len(B) != M:
        return False
    return div_set(A) & div_set(B) == {M}


def dilate(A: ZmSet, k: int) -> ZmSet:
    return A.scaled(k)


def dilate_check(A: ZmSet, B: ZmSet, k: int) -> bool:
    if gcd(k, len(A)) != 1:
        raise PreconditionViolated(f"k={k} is not coprime to |A|={len(A)}")
    if not is_factorization_brute(A, B):
        raise PreconditionViolated("A and B do not factor Z_M")
    kA = dilate(A, k)
    return len(kA) == len(A) and is_factorization_brute(kA, B)


@dataclass(frozen=True)
class Lemma24Report:
    hypothesis_holds: bool
    conclusion_holds: bool
    targets: tuple[int, int, int]

    @property
    def ok(self) -> bool:
        """The implication hypothesis => conclusion."""
        return not self.hypothesis_holds or self.conclusion_holds


def lemma24_check(E: ZmSet, ctx: ModulusContext,
                  order: tuple[int, int, int] | None = None) -> Lemma24Report:
    """If E lies in one class mod p^2 q r and |E| > max(q, r), then
    {p^2 q r, p^2 q^2 r, p^2 q r^2} is inside Div(E).

    ``order`` permutes the roles of the primes; the first entry plays p.
    """
    p, q, r = order if order is not None else ctx.primes
    if sorted((p, q, r)) != list(ctx.primes):
        raise ValueError(f"{order} is not a permutation of {ctx.primes}")
    step = p * p * q * r
    targets = (step, p * p * q * q * r, p * p * q * r * r)
    els = E.elements
    same_class = all((x - els[0]) % step == 0 for x in els) if els else True
    hyp = bool(els) and same_class and len(els) > max(q, r)
    conclusion = bool(els) and set(targets) <= div_set(E).divisors
    return Lemma24Report(hyp, conclusion, targets)
