"""Szabó pairs for Z_M, M = (pqr)^2.

A tile in sumset form is A = q^2r^2 U + r^2p^2 V + p^2q^2 W. Its partner B,
after a translation, splits into B_qr, B_rp, B_pq (multiples of two of the
primes but not the third) and B_pqr, where each residue class of B_qr mod p
is invariant under +pq^2r^2 (and cyclically for the other parts), and pulling
those classes back by tau_p(i) q^2r^2 fills out pqr * {0, ..., pqr-1}.

Throughout, an *axis* is one of the primes a in {p, q, r}; with (b, c) the
other two, the axis-a part of B is B_bc, its period is M/a and its shift
unit is M/a^2 = b^2 c^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cyclotomic import phi_divides
from .divsets import div_set, is_factorization_brute
from .errors import (
    BadIndexResidues,
    DivOneViolation,
    FormMismatch,
    InternalContradiction,
    NotDisjoint,
    NotInvariant,
    NotSumsetForm,
    PreconditionViolated,
    WrongCardinality,
    ZeroInH,
)
from .residue import (
    ModulusContext,
    ZmSet,
    is_periodic,
    notation_part,
    residue_class,
    subgroup_containment,
    translate,
)

__all__ = [
    "tau",
    "tau_table",
    "build_a",
    "recover_uvw",
    "indexed",
    "BDecomposition",
    "decompose_b",
    "ConditionReport",
    "check_condition_iii",
    "check_condition_iv",
    "SzaboWitness",
    "verify_szabo_pair",
    "check_witness",
    "build_b",
    "FormReport",
    "classify_b_form",
    "b_form_index",
    "swap_periodic",
    "PartPeriodicityReport",
    "check_part_periodicity",
    "Prop210Report",
    "check_prop210",
    "DivStructureReport",
    "check_div_structure",
]


def tau(a: int, ell: int, ctx: ModulusContext) -> int:
    """The t in {0..a-1} with t * (M/a^2) = ell (mod a)."""
    if not 0 <= ell < a:
        raise ValueError(f"ell={ell} out of range for a={a}")
    unit = ctx.cofactor_sq(a) % a
    return (pow(unit, -1, a) * ell) % a


def tau_table(a: int, ctx: ModulusContext) -> list[int]:
    return [tau(a, ell, ctx) for ell in range(a)]


# -- condition (I): the sumset tile --------------------------------------------

def _factor_set(X, a: int, name: str) -> ZmSet:
    vals = list(X.elements if isinstance(X, ZmSet) else X)
    if len(set(vals)) != a or len(vals) != a:
        raise WrongCardinality(f"|{name}| must be {a}, got {len(set(vals))}")
    sq = a * a
    reduced = [v % sq for v in vals]
    if sorted(v % a for v in reduced) != list(range(a)):
        raise BadIndexResidues(f"{name} must hold exactly one element in each class mod {a}")
    if [v for v in reduced if v % a == 0] != [0]:
        raise BadIndexResidues(f"{name} must contain 0 as its class-0 element")
    return ZmSet.of(reduced, sq)


def indexed(X: ZmSet, a: int) -> list[int]:
    """[x_0, ..., x_{a-1}] with x_i = i (mod a)."""
    out = [0] * a
    for x in X.elements:
        out[x % a] = x
    return out


def build_a(U, V, W, ctx: ModulusContext) -> ZmSet:
    """q^2r^2 U + r^2p^2 V + p^2q^2 W as a subset of Z_M."""
    U = _factor_set(U, ctx.p, "U")
    V = _factor_set(V, ctx.q, "V")
    W = _factor_set(W, ctx.r, "W")
    M = ctx.M
    out = {
        (ctx.q2r2 * u + ctx.r2p2 * v + ctx.p2q2 * w) % M
        for u in U.elements for v in V.elements for w in W.elements
    }
    if len(out) != ctx.pqr:
        raise InternalContradiction("sumset collided although U, V, W are residue-distinct")
    return ZmSet(M, tuple(sorted(out)))


def recover_uvw(A: ZmSet, ctx: ModulusContext) -> tuple[ZmSet, ZmSet, ZmSet]:
    """Read U, V, W back off A (mod p^2, q^2, r^2 respectively) and confirm
    that they rebuild A exactly."""
    if A.modulus != ctx.M:
        raise NotSumsetForm(f"A is over Z_{A.modulus}, expected Z_{ctx.M}")
    if len(A) != ctx.pqr or 0 not in A:
        raise NotSumsetForm("a sumset tile has pqr elements and contains 0")
    factors = []
    for a in ctx.primes:
        sq = a * a
        inv = pow(ctx.cofactor_sq(a) % sq, -1, sq)
        factors.append(ZmSet.of((inv * x for x in A.elements), sq))
    try:
        rebuilt = build_a(*factors, ctx)
    except (WrongCardinality, BadIndexResidues) as exc:
        raise NotSumsetForm(str(exc)) from exc
    if rebuilt != A:
        raise NotSumsetForm("U, V, W read from residues do not rebuild A")
    return tuple(factors)


# -- condition (II): the four parts of B ------------------------------------------

@dataclass(frozen=True)
class BDecomposition:
    source: ZmSet
    B_qr: ZmSet
    B_rp: ZmSet
    B_pq: ZmSet
    B_pqr: ZmSet

    def axis_part(self, a: int, ctx: ModulusContext) -> ZmSet:
        """B_qr for a = p, B_rp for a = q, B_pq for a = r."""
        if a == ctx.p:
            return self.B_qr
        if a == ctx.q:
            return self.B_rp
        if a == ctx.r:
            return self.B_pq
        raise ValueError(f"{a} is not one of {ctx.primes}")

    @property
    def nonempty(self) -> bool:
        return bool(self.B_qr and self.B_rp and self.B_pq and self.B_pqr)

    def to_dict(self) -> dict:
        return {
            "B_qr": list(self.B_qr.elements),
            "B_rp": list(self.B_rp.elements),
            "B_pq": list(self.B_pq.elements),
            "B_pqr": list(self.B_pqr.elements),
        }


def decompose_b(B: ZmSet, ctx: ModulusContext) -> BDecomposition | None:
    """Split B into its pqr, qr, rp and pq parts, or None when some element
    is a multiple of at most one of the primes."""
    p, q, r = ctx.primes
    buckets: dict[str, list[int]] = {"qr": [], "rp": [], "pq": [], "pqr": []}
    for x in B.elements:
        if x % ctx.pqr == 0:
            buckets["pqr"].append(x)
        elif x % (q * r) == 0:
            buckets["qr"].append(x)
        elif x % (r * p) == 0:
            buckets["rp"].append(x)
        elif x % (p * q) == 0:
            buckets["pq"].append(x)
        else:
            return None
    M = B.modulus
    return BDecomposition(B, *(ZmSet(M, tuple(buckets[k])) for k in ("qr", "rp", "pq", "pqr")))


@dataclass
class ConditionReport:
    ok: bool
    failures: list = field(default_factory=list)
    hatted: dict[int, ZmSet] = field(default_factory=dict)
    union: ZmSet | None = None


def check_condition_iii(d: BDecomposition, ctx: ModulusContext) -> ConditionReport:
    """Each nonzero class mod a of the axis-a part is (M/a)-periodic.

    Failures are (axis, class) pairs.
    """
    failures = []
    for a in ctx.primes:
        part = d.axis_part(a, ctx)
        period = ctx.period(a)
        for i in range(1, a):
            if not is_periodic(residue_class(part, a, i), period):
                failures.append((a, i))
    return ConditionReport(not failures, failures)


def hatted_parts(d: BDecomposition, ctx: ModulusContext) -> dict[int, list[int]]:
    """For each axis a, the classes C^a_i of its part pulled back by
    tau_a(i) * M/a^2. Kept as lists so collisions stay visible."""
    M = ctx.M
    out: dict[int, list[int]] = {}
    for a in ctx.primes:
        unit = ctx.cofactor_sq(a)
        taus = tau_table(a, ctx)
        out[a] = sorted((x - taus[x % a] * unit) % M for x in d.axis_part(a, ctx).elements)
    return out


def check_condition_iv(d: BDecomposition, ctx: ModulusContext) -> ConditionReport:
    """The hatted parts together with B_pqr tile pqr * {0..pqr-1} exactly.

    Failures are ('collision', x), ('outside', x) and ('missing', x) tuples.
    """
    M = ctx.M
    hats = hatted_parts(d, ctx)
    pieces = [x for a in ctx.primes for x in hats[a]] + list(d.B_pqr.elements)
    failures: list[tuple[str, int]] = []
    seen: set[int] = set()
    for x in pieces:
        if x % ctx.pqr:
            failures.append(("outside", x))
        elif x in seen:
            failures.append(("collision", x))
        seen.add(x)
    for k in range(ctx.pqr):
        if k * ctx.pqr not in seen:
            failures.append(("missing", k * ctx.pqr))
    hatted = {a: ZmSet.of(v, M) for a, v in hats.items()}
    return ConditionReport(not failures, failures, hatted, ZmSet.of(seen, M))


# -- the full certificate ---------------------------------------------------------

@dataclass(frozen=True)
class SzaboWitness:
    offset: int
    U: ZmSet
    V: ZmSet
    W: ZmSet
    decomposition: BDecomposition
    tau_p: tuple[int, ...]
    tau_q: tuple[int, ...]
    tau_r: tuple[int, ...]
    hatted_qr: ZmSet
    hatted_rp: ZmSet
    hatted_pq: ZmSet
    hatted_union: ZmSet

    def to_dict(self) -> dict:
        return {
            "offset": self.offset,
            "U": list(self.U.elements),
            "V": list(self.V.elements),
            "W": list(self.W.elements),
            "parts": self.decomposition.to_dict(),
            "tau": {"p": list(self.tau_p), "q": list(self.tau_q), "r": list(self.tau_r)},
            "hatted": {
                "B_qr": list(self.hatted_qr.elements),
                "B_rp": list(self.hatted_rp.elements),
                "B_pq": list(self.hatted_pq.elements),
            },
        }


def _witness_for(B: ZmSet, b: int, uvw, ctx: ModulusContext) -> SzaboWitness | None:
    d = decompose_b(translate(B, b), ctx)
    if d is None or not d.nonempty:
        return None
    if not check_condition_iii(d, ctx).ok:
        return None
    iv = check_condition_iv(d, ctx)
    if not iv.ok:
        return None
    p, q, r = ctx.primes
    return SzaboWitness(
        b, *uvw, d,
        tuple(tau_table(p, ctx)), tuple(tau_table(q, ctx)), tuple(tau_table(r, ctx)),
        iv.hatted[p], iv.hatted[q], iv.hatted[r], iv.union,
    )


def verify_szabo_pair(A: ZmSet, B: ZmSet, ctx: ModulusContext) -> SzaboWitness | None:
    """Return a certificate that (A, B) is a Szabó pair, or None.

    Condition (I) is checked on A as given; for B every translate B - b with
    b in B is tried in ascending b and the first that passes (II)-(IV) wins.
    """
    if A.modulus != ctx.M or B.modulus != ctx.M:
        return None
    if len(A) != ctx.pqr or len(B) != ctx.pqr or 0 not in A:
        return None
    try:
        uvw = recover_uvw(A, ctx)
    except NotSumsetForm:
        return None
    for b in B.elements:
        w = _witness_for(B, b, uvw, ctx)
        if w is not None:
            return w
    return None


def check_witness(A: ZmSet, B: ZmSet, w: SzaboWitness, ctx: ModulusContext) -> bool:
    """Re-derive every claim in ``w`` from its own fields."""
    if build_a(w.U, w.V, w.W, ctx) != A or w.offset not in B:
        return False
    d = w.decomposition
    shifted = translate(B, w.offset)
    if d.source != shifted or decompose_b(shifted, ctx) != d or not d.nonempty:
        return False
    if not check_condition_iii(d, ctx).ok:
        return False
    for a, table in zip(ctx.primes, (w.tau_p, w.tau_q, w.tau_r)):
        unit = ctx.cofactor_sq(a)
        if any((t * unit - ell) % a for ell, t in enumerate(table)):
            return False
    iv = check_condition_iv(d, ctx)
    full = ZmSet(ctx.M, tuple(range(0, ctx.M, ctx.pqr)))
    return (iv.ok and iv.union == full == w.hatted_union
            and (iv.hatted[ctx.p], iv.hatted[ctx.q], iv.hatted[ctx.r])
            == (w.hatted_qr, w.hatted_rp, w.hatted_pq))


# -- building B from invariant sets ----------------------------------------------

def _assignment(assign, a: int, orbits: Iterable[int], name: str) -> dict[int, int]:
    orbits = list(orbits)
    if assign is None:
        table = {o: 1 for o in orbits}
    elif isinstance(assign, int):
        table = {o: assign for o in orbits}
    elif isinstance(assign, Mapping):
        table = {}
        for o in orbits:
            if o not in assign:
                raise PreconditionViolated(f"{name}: no class assigned to orbit {o}")
            table[o] = assign[o]
    else:
        raise PreconditionViolated(f"{name}: assignment must be int, mapping or None")
    for o, cls in table.items():
        if not isinstance(cls, int) or not 1 <= cls < a:
            raise PreconditionViolated(f"{name}: class {cls!r} for orbit {o} not in 1..{a - 1}")
    return table


def build_b(H_p, H_q, H_r, assign_p=None, assign_q=None, assign_r=None,
            *, ctx: ModulusContext) -> ZmSet:
    """Build the partner of a sumset tile from invariant subsets of Z_pqr.

    H_p must be invariant under +qr mod pqr (so a union of classes mod qr),
    H_q under +rp, H_r under +pq; they are disjoint, nonempty and avoid 0.
    Each orbit (class mod the pair product) is assigned a nonzero class i mod
    its prime, given as a single int for all orbits, a mapping from orbit
    representative (h mod pair product) to class, or None for class 1.
    pqr * (Z_pqr minus the H sets) is kept as B_pqr; an H_a orbit assigned to
    class i becomes pqr*h + tau_a(i) * M/a^2.
    """
    n, M = ctx.pqr, ctx.M
    hs = {}
    for a, H, name in zip(ctx.primes, (H_p, H_q, H_r), ("H_p", "H_q", "H_r")):
        vals = set(H)
        if not vals:
            raise PreconditionViolated(f"{name} is empty")
        if any(not 0 <= h < n for h in vals):
            raise PreconditionViolated(f"{name} must be a subset of 0..{n - 1}")
        if 0 in vals:
            raise ZeroInH(f"{name} contains 0; 0 must stay in B_pqr")
        step = ctx.pair_product(a)
        if any((h + step) % n not in vals for h in vals):
            raise NotInvariant(f"{name} is not invariant under +{step} mod {n}")
        hs[a] = vals
    p, q, r = ctx.primes
    for (a, b), label in (((p, q), "H_p/H_q"), ((q, r), "H_q/H_r"), ((p, r), "H_p/H_r")):
        if hs[a] & hs[b]:
            raise NotDisjoint(f"{label} intersect in {sorted(hs[a] & hs[b])[:5]}")

    used = hs[p] | hs[q] | hs[r]
    out = [n * h for h in range(n) if h not in used]
    for a, assign, name in zip(ctx.primes, (assign_p, assign_q, assign_r), ("p", "q", "r")):
        step = ctx.pair_product(a)
        table = _assignment(assign, a, sorted({h % step for h in hs[a]}), f"assign_{name}")
        unit = ctx.cofactor_sq(a)
        for h in hs[a]:
            out.append((n * h + tau(a, table[h % step], ctx) * unit) % M)
    result = ZmSet.of(out, M)
    if len(result) != n:
        raise InternalContradiction("constructed B has the wrong size")
    return result


# -- the translate forms of B ------------------------------------------------------

FORM_FOUR_PART = "four-part"
AXIS_FORMS = ("axis-p", "axis-q", "axis-r")
FORM_ORDER = (FORM_FOUR_PART,) + AXIS_FORMS


@dataclass(frozen=True)
class FormReport:
    form: str | None
    offset: int | None = None
    index: int | None = None

    def to_dict(self) -> dict:
        return {"form": self.form, "offset": self.offset, "index": self.index}


def b_form_index(B: ZmSet, a: int, ctx: ModulusContext) -> int | None:
    """For B as given (no translation), return i0 when B is the union of
    B cap bcZ with C^a_{i0}(B_b) and C^a_{i0}(B_c), both nonempty; else None.

    a = p, q, r gives the three axis forms axis-p, axis-q, axis-r.
    """
    b, c = ctx.others(a)
    bc = b * c
    classes = set()
    seen_b = seen_c = False
    for x in B.elements:
        if x % bc == 0:
            continue
        if x % a == 0:
            return None
        if x % b == 0 and x % c:
            seen_b = True
        elif x % c == 0 and x % b:
            seen_c = True
        else:
            return None
        classes.add(x % a)
    if seen_b and seen_c and len(classes) == 1:
        return classes.pop()
    return None


def _is_four_part(B: ZmSet, ctx: ModulusContext) -> bool:
    d = decompose_b(B, ctx)
    return d is not None and d.nonempty


def classify_b_form(B: ZmSet, ctx: ModulusContext) -> FormReport:
    """First (offset, form) with B - offset of that form, scanning offsets in
    ascending order and forms in FORM_ORDER."""
    if not B:
        raise PreconditionViolated("B is empty")
    if 1 in div_set(B):
        raise DivOneViolation("1 is in Div(B)")
    for b in B.elements:
        Bt = translate(B, b)
        if _is_four_part(Bt, ctx):
            return FormReport(FORM_FOUR_PART, b, None)
        for a, form in zip(ctx.primes, AXIS_FORMS):
            i0 = b_form_index(Bt, a, ctx)
            if i0 is not None:
                return FormReport(form, b, i0)
    return FormReport(None)


# -- periodic swaps and part periodicity ------------------------------------------

def swap_periodic(A: ZmSet, B: ZmSet, D: ZmSet, axis: int, ctx: ModulusContext) -> ZmSet:
    """(B minus D) together with D + M/axis^2, for D inside B and (M/axis)-periodic."""
    if axis not in ctx.primes:
        raise PreconditionViolated(f"axis {axis} is not one of {ctx.primes}")
    if not set(D.elements) <= B.members:
        raise PreconditionViolated("D is not a subset of B")
    if not is_periodic(D, ctx.period(axis)):
        raise PreconditionViolated(f"D is not invariant under +{ctx.period(axis)}")
    if div_set(A).divisors != ctx.szabo_div_a:
        raise PreconditionViolated("Div(A) is not {1, p^2, q^2, r^2, p^2q^2, q^2r^2, r^2p^2, M}")
    if not D:
        return B
    shift = ctx.cofactor_sq(axis)
    moved = ZmSet.of((x + shift for x in D.elements), ctx.M)
    return B.difference(D).union(moved)


@dataclass
class PartPeriodicityReport:
    axis: int
    i0: int
    pqr_part_periodic: bool
    other_classes_periodic: dict[int, bool]
    b_class_periodic: bool
    c_class_periodic: bool

    @property
    def ok(self) -> bool:
        return (self.pqr_part_periodic and all(self.other_classes_periodic.values())
                and self.b_class_periodic and self.c_class_periodic)

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "i0": self.i0,
            "clause_i": self.pqr_part_periodic,
            "clause_ii": {str(k): v for k, v in self.other_classes_periodic.items()},
            "clause_iii": [self.b_class_periodic, self.c_class_periodic],
            "ok": self.ok,
        }


def check_part_periodicity(A: ZmSet, B: ZmSet, ctx: ModulusContext,
                           axis: int | None = None) -> PartPeriodicityReport:
    """For B in the axis-a form with index i0 (a = p by default), test that B_pqr
    and the classes C^a_i(B_bc), i != i0, are (M/a)-periodic, and that
    C^a_{i0}(B_b) is (M/c)-periodic and C^a_{i0}(B_c) is (M/b)-periodic."""
    a = ctx.p if axis is None else axis
    b, c = ctx.others(a)
    i0 = b_form_index(B, a, ctx)
    if i0 is None:
        raise FormMismatch(f"B is not of the axis-{a} form")
    if div_set(A).divisors != ctx.szabo_div_a:
        raise PreconditionViolated("Div(A) is not the eight-element sumset division set")
    period = ctx.period(a)
    B_pqr = B.filter(lambda x: x % ctx.pqr == 0)
    B_bc = B.filter(lambda x: x % (b * c) == 0 and x % a)
    others = {i: is_periodic(residue_class(B_bc, a, i), period)
              for i in range(1, a) if i != i0}
    exps_b = tuple(1 if prime == b else 0 for prime in ctx.primes)
    exps_c = tuple(1 if prime == c else 0 for prime in ctx.primes)
    B_b = residue_class(notation_part(B, ctx, *exps_b), a, i0)
    B_c = residue_class(notation_part(B, ctx, *exps_c), a, i0)
    return PartPeriodicityReport(
        a, i0,
        is_periodic(B_pqr, period),
        others,
        is_periodic(B_b, ctx.period(c)),
        is_periodic(B_c, ctx.period(b)),
    )


# -- structural predicates on factorizations ---------------------------------------

@dataclass
class Prop210Report:
    cyclotomic_factors: bool
    div_b_pattern: bool
    div_a_excludes: bool

    @property
    def ok(self) -> bool:
        return self.cyclotomic_factors and self.div_b_pattern and self.div_a_excludes

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return (self.cyclotomic_factors, self.div_b_pattern, self.div_a_excludes)

    def to_dict(self) -> dict:
        return {"i": self.cyclotomic_factors, "ii": self.div_b_pattern,
                "iii": self.div_a_excludes, "ok": self.ok}


def check_prop210(A: ZmSet, B: ZmSet, ctx: ModulusContext) -> Prop210Report:
    """For a factorization with neither factor in a proper subgroup and
    1 not in Div(B): (i) Phi_p Phi_q Phi_r divides A(x); (ii) p, q, r are in
    Div(B) and p^2, q^2, r^2 are not; (iii) p^2qr, p^2q^2r, p^2qr^2 are not
    in Div(A), p being the smallest prime."""
    if A.modulus != ctx.M or B.modulus != ctx.M:
        raise PreconditionViolated(f"sets are not over Z_{ctx.M}")
    if len(A) != ctx.pqr or len(B) != ctx.pqr:
        raise PreconditionViolated("need |A| = |B| = pqr")
    if not is_factorization_brute(A, B):
        raise PreconditionViolated("A and B do not factor Z_M")
    if subgroup_containment(A) is not None or subgroup_containment(B) is not None:
        raise PreconditionViolated("a factor lies in a proper subgroup")
    div_b = div_set(B).divisors
    if 1 in div_b:
        raise PreconditionViolated("1 is in Div(B)")
    div_a = div_set(A).divisors
    p, q, r = ctx.primes
    i = all(phi_divides(x, A) for x in (p, q, r))
    ii = {p, q, r} <= div_b and not ({p * p, q * q, r * r} & div_b)
    iii = not ({ctx.p2qr, ctx.p2q2r, ctx.p2qr2} & div_a)
    return Prop210Report(i, ii, iii)


@dataclass
class DivStructureReport:
    div_ok: bool
    sizes: dict[str, int]
    expected: dict[str, int]
    partition_ok: bool

    @property
    def ok(self) -> bool:
        return self.div_ok and self.partition_ok and self.sizes == self.expected

    def to_dict(self) -> dict:
        return {"div_ok": self.div_ok, "sizes": self.sizes, "expected": self.expected,
                "partition_ok": self.partition_ok, "ok": self.ok}


def check_div_structure(A: ZmSet, ctx: ModulusContext) -> DivStructureReport:
    """Div(A) is the eight-element set, and the class of A divisible by p is
    A_{p^2}, A_{p^2q^2}, A_{p^2r^2} and {0} with sizes (q-1)(r-1), r-1, q-1."""
    p, q, r = ctx.primes
    div_ok = bool(A) and div_set(A).divisors == ctx.szabo_div_a
    C0 = residue_class(A, p, 0)
    parts = {
        "p2": notation_part(C0, ctx, 2, 0, 0),
        "p2q2": notation_part(C0, ctx, 2, 2, 0),
        "p2r2": notation_part(C0, ctx, 2, 0, 2),
    }
    zero = ZmSet(A.modulus, (0,)) if 0 in A else ZmSet.empty(A.modulus)
    pieces = list(parts.values()) + [zero]
    total = sum(len(x) for x in pieces)
    partition_ok = (all(pieces) and total == len(C0)
                    and C0.union(*pieces) == C0 and len(C0.union(*pieces)) == total)
    sizes = {k: len(v) for k, v in parts.items()}
    expected = {"p2": (q - 1) * (r - 1), "p2q2": r - 1, "p2r2": q - 1}
    return DivStructureReport(div_ok, sizes, expected, partition_ok)
