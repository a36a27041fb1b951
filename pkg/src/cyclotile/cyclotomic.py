"""Exact integer polynomials, cyclotomic polynomials and mask polynomials.

Polynomials are coefficient tuples indexed by exponent; Python ints keep all
arithmetic exact. Nothing here evaluates at complex roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .divsets import is_factorization_brute
from .errors import PreconditionViolated
from .residue import ModulusContext, ZmSet, residue_class, residue_class2

__all__ = [
    "IntPoly",
    "cyclotomic_poly",
    "mask_poly",
    "phi_divides",
    "phi_power_identity_check",
    "AverageReport",
    "average_property_check",
    "divisors",
    "prime_power_base",
]


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> IntPoly:
        return cls((0,) * n + (c,))

    @classmethod
    def x_pow_minus_one(cls, n: int) -> IntPoly:
        """x^n - 1."""
        if n == 0:
            return cls()
        return cls((-1,) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(tuple(out))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        nz_b = [(j, c) for j, c in enumerate(b) if c]
        for i, ca in enumerate(a):
            if ca:
                for j, cb in nz_b:
                    out[i + j] += ca * cb
        return IntPoly(tuple(out))

    def compose_power(self, k: int) -> IntPoly:
        """P(x^k)."""
        if k < 1:
            raise ValueError("k must be positive")
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPoly(tuple(out))

    def divmod_monic(self, divisor: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Exact long division by a monic integer polynomial."""
        d = divisor.coeffs
        if not d or d[-1] != 1:
            raise ValueError("divisor must be monic")
        n = len(d) - 1
        rem = list(self.coeffs)
        if len(rem) <= n:
            return IntPoly(), IntPoly(tuple(rem))
        quot = [0] * (len(rem) - n)
        lower = [(j, c) for j, c in enumerate(d[:-1]) if c]
        for i in range(len(rem) - 1, n - 1, -1):
            c = rem[i]
            if c:
                shift = i - n
                quot[shift] = c
                rem[i] = 0
                for j, dc in lower:
                    rem[shift + j] -= c * dc
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[:n]))

    def __mod__(self, divisor: IntPoly) -> IntPoly:
        return self.divmod_monic(divisor)[1]

    def __floordiv__(self, divisor: IntPoly) -> IntPoly:
        return self.divmod_monic(divisor)[0]

    def reduce_mod_xn_minus_one(self, n: int) -> IntPoly:
        """Fold exponents mod n, i.e. the remainder modulo x^n - 1."""
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i % n] += c
        return IntPoly(tuple(out))

    def __repr__(self):
        if not self.coeffs:
            return "IntPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}{mono}"))
        return "IntPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_power_base(s: int) -> int | None:
    """The prime p when s = p^m with m >= 1, else None."""
    if s < 2:
        return None
    d = 2
    while d * d <= s:
        if s % d == 0:
            while s % d == 0:
                s //= d
            return d if s == 1 else None
        d += 1
    return s


# Populate-once cache; a racing duplicate computation yields an identical value.
@lru_cache(maxsize=None)
def _cyclotomic(s: int) -> IntPoly:
    poly = IntPoly.x_pow_minus_one(s)
    for d in divisors(s)[:-1]:
        q, rem = poly.divmod_monic(_cyclotomic(d))
        if not rem.is_zero():
            raise ArithmeticError(f"Phi_{d} does not divide x^{s}-1 exactly")
        poly = q
    return poly


def cyclotomic_poly(s: int) -> IntPoly:
    """Phi_s, obtained by dividing x^s - 1 by Phi_d for each proper divisor d."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return _cyclotomic(s)


def mask_poly(E: ZmSet) -> IntPoly:
    """sum of x^e over e in E."""
    if not E:
        return IntPoly()
    out = [0] * (E.elements[-1] + 1)
    for e in E.elements:
        out[e] = 1
    return IntPoly(tuple(out))


def phi_divides(s: int, E: ZmSet) -> bool:
    """Whether Phi_s divides the mask polynomial of E.

    Exponents are folded mod s first (Phi_s divides x^s - 1), then the remainder
    by Phi_s is computed exactly.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    folded = [0] * s
    for e in E.elements:
        folded[e % s] += 1
    return (IntPoly(tuple(folded)) % cyclotomic_poly(s)).is_zero()


def phi_power_identity_check(n: int, p: int) -> bool:
    """Phi_n(x^p) == Phi_n(x) Phi_np(x) when p does not divide n, and
    Phi_n(x^p) == Phi_np(x) when it does."""
    lhs = cyclotomic_poly(n).compose_power(p)
    if n % p:
        rhs = cyclotomic_poly(n) * cyclotomic_poly(n * p)
    else:
        rhs = cyclotomic_poly(n * p)
    return lhs == rhs


@dataclass
class AverageReport:
    ell: int
    phi_ell_divides_a: bool
    phi_ell2_divides_b: bool
    class_counts_a: list[int]
    class_counts_b: list[list[int]]
    counterexamples: list[tuple]

    @property
    def biconditional_holds(self) -> bool:
        return self.phi_ell_divides_a == self.phi_ell2_divides_b

    @property
    def ok(self) -> bool:
        return self.biconditional_holds and not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "phi_ell_divides_A": self.phi_ell_divides_a,
            "phi_ell2_divides_B": self.phi_ell2_divides_b,
            "biconditional_holds": self.biconditional_holds,
            "class_counts_A": self.class_counts_a,
            "class_counts_B": self.class_counts_b,
            "counterexamples": [list(c) for c in self.counterexamples],
            "ok": self.ok,
        }


def average_property_check(A: ZmSet, B: ZmSet, ell: int, ctx: ModulusContext) -> AverageReport:
    """Check the class-count consequences of Phi_ell | A for a factorization
    with |A| = |B| = pqr.

    Counterexamples are tuples ('A', j) for a bad class of A and ('B', j, k)
    for a bad refined class of B.
    """
    if A.modulus != ctx.M or B.modulus != ctx.M:
        raise PreconditionViolated(f"sets are not over Z_{ctx.M}")
    if ell not in ctx.primes:
        raise PreconditionViolated(f"{ell} is not one of {ctx.primes}")
    if len(A) != ctx.pqr or len(B) != ctx.pqr:
        raise PreconditionViolated("need |A| = |B| = pqr")
    if not is_factorization_brute(A, B):
        raise PreconditionViolated("A and B do not factor Z_M")

    div_a = phi_divides(ell, A)
    div_b = phi_divides(ell * ell, B)
    counts_a = [len(residue_class(A, ell, j)) for j in range(ell)]
    counts_b = [[len(residue_class2(B, ell, j, k)) for k in range(ell)] for j in range(ell)]
    bad: list[tuple] = []
    if div_a:
        for j, c in enumerate(counts_a):
            if c * ell != ctx.pqr:
                bad.append(("A", j))
        for j in range(ell):
            total = len(residue_class(B, ell, j))
            for k, c in enumerate(counts_b[j]):
                if c * ell != total:
                    bad.append(("B", j, k))
    return AverageReport(ell, div_a, div_b, counts_a, counts_b, bad)
