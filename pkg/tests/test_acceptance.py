"""Exit criteria. Run alone with ``pytest tests/test_acceptance.py -v``; the
terminal summary prints one PASS/FAIL line per criterion."""

import random
import time
from itertools import combinations
from math import gcd

import pytest

from cyclotile import (
    SearchOptions,
    ZmSet,
    average_property_check,
    check_prop210,
    check_witness,
    complement_search,
    cyclotomic_poly,
    dilate_check,
    div_set,
    is_factorization_brute,
    is_factorization_sands,
    make_modulus,
    phi_power_identity_check,
    random_instance,
    subgroup_containment,
    swap_periodic,
    verify_szabo_pair,
    verify_theorem,
)
from cyclotile.cyclotomic import IntPoly, divisors, prime_power_base

from oracle import covers_exactly_once

TRIPLES = [(2, 3, 5), (2, 3, 7), (2, 5, 7), (3, 5, 7)]
acceptance = pytest.mark.acceptance


@pytest.fixture(scope="module")
def instances():
    """100 random Szabó pairs per prime triple, with the time it took."""
    out = {}
    t0 = time.perf_counter()
    for primes in TRIPLES:
        ctx = make_modulus(*primes)
        out[primes] = (ctx, [random_instance(seed, ctx) for seed in range(100)])
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def canon_complements(canon_a):
    mixed = list(complement_search(canon_a, SearchOptions(max_solutions=50, time_budget=600)))
    clean = list(complement_search(canon_a, SearchOptions(
        max_solutions=50, time_budget=600, require_not_subgroup=True)))
    return mixed + clean


@acceptance(1, "canonical instance: brute force and Sands agree, witness at offset 0")
def test_c1_canonical(ctx, canon_a, canon_b):
    t0 = time.perf_counter()
    brute = is_factorization_brute(canon_a, canon_b)
    sands = is_factorization_sands(canon_a, canon_b)
    elapsed = time.perf_counter() - t0
    assert brute and sands and elapsed < 1.0
    assert covers_exactly_once(canon_a.elements, canon_b.elements, 900)
    assert subgroup_containment(canon_b) is None
    w = verify_szabo_pair(canon_a, canon_b, ctx)
    assert w is not None and w.offset == 0 and check_witness(canon_a, canon_b, w, ctx)


def _all_pairs(M):
    for k in (d for d in range(1, 5) if M % d == 0):
        for rest_a in combinations(range(1, M), k - 1):
            A = ZmSet(M, (0,) + rest_a)
            for rest_b in combinations(range(1, M), M // k - 1):
                yield A, ZmSet(M, (0,) + rest_b)


def _z36_slice(n, seed=36):
    """Half uniformly random candidate pairs, half true complements and
    one-element perturbations of them, so both answers are well represented."""
    M = 36
    rng = random.Random(seed)
    sizes = [k for k in range(1, 5) if M % k == 0]
    pool = []
    while len(pool) < 400:
        k = rng.choice(sizes[1:])
        A = ZmSet(M, tuple(sorted([0] + rng.sample(range(1, M), k - 1))))
        sols = list(complement_search(A, SearchOptions(max_solutions=20, seed=rng.randrange(10 ** 6))))
        pool.extend((A, B) for B in sols)
    for i in range(n):
        if i % 2 == 0:
            k = rng.choice(sizes)
            A = ZmSet(M, tuple(sorted([0] + rng.sample(range(1, M), k - 1))))
            B = ZmSet(M, tuple(sorted([0] + rng.sample(range(1, M), M // k - 1))))
        else:
            A, B = rng.choice(pool)
            if i % 4 == 3 and len(B) > 1:
                out = rng.choice(B.elements[1:])
                new = rng.choice([x for x in range(1, M) if x not in B])
                B = ZmSet.of([x for x in B.elements if x != out] + [new], M)
        yield A, B


@acceptance(2, "oracle equivalence on Z_12 (exhaustive) and Z_36 (10^5-pair slice)")
def test_c2_oracle_equivalence():
    disagreements, positives, total = 0, 0, 0
    for A, B in _all_pairs(12):
        brute = is_factorization_brute(A, B)
        disagreements += brute != is_factorization_sands(A, B)
        positives += brute
        total += 1
    assert total == 1 + 11 * 462 + 55 * 165 + 165 * 55
    assert disagreements == 0 and positives > 0
    disagreements, positives, total = 0, 0, 0
    for A, B in _z36_slice(10 ** 5):
        brute = is_factorization_brute(A, B)
        disagreements += brute != is_factorization_sands(A, B)
        positives += brute
        total += 1
    assert total == 10 ** 5
    assert disagreements == 0
    assert 10 ** 4 < positives < 9 * 10 ** 4


@acceptance(3, "bounded search over CANON_A complements finds zero violations")
def test_c3_bounded_complement_check(ctx, canon_a):
    for require in (False, True):
        rep = verify_theorem(canon_a, SearchOptions(
            max_solutions=50, time_budget=600, require_not_subgroup=require), ctx)
        assert rep.complete and rep.instances_checked == 50
        assert rep.violations == []
        assert rep.instances_checked == rep.szabo_confirmed + rep.subgroup_excluded
        assert rep.szabo_confirmed > 0


@acceptance(4, "100 random pairs per triple verify by brute force and witness, < 5 min")
def test_c4_sufficiency(instances):
    data, elapsed = instances
    t0 = time.perf_counter()
    for primes, (ctx, items) in data.items():
        assert len(items) == 100
        for A, B, w in items:
            assert covers_exactly_once(A.elements, B.elements, ctx.M)
            assert is_factorization_brute(A, B)
            assert check_witness(A, B, w, ctx)
    assert elapsed + time.perf_counter() - t0 < 300


@acceptance(5, "cyclotomic product and identities for s <= 210, n <= 60")
def test_c5_cyclotomic():
    for s in range(1, 211):
        prod = IntPoly((1,))
        for d in divisors(s):
            prod = prod * cyclotomic_poly(d)
        assert prod == IntPoly.x_pow_minus_one(s)
        if s > 1:
            base = prime_power_base(s)
            assert cyclotomic_poly(s)(1) == (base if base else 1)
    for n in range(1, 61):
        for p in (2, 3, 5, 7):
            assert phi_power_identity_check(n, p)


@acceptance(6, "average properties on every criterion-4 instance")
def test_c6_averages(instances):
    for ctx, items in instances[0].values():
        for A, B, _ in items:
            for ell in ctx.primes:
                rep = average_property_check(A, B, ell, ctx)
                assert rep.biconditional_holds and not rep.counterexamples
                assert rep.phi_ell_divides_a


@acceptance(7, "periodic swap keeps the factorization on 100 random cases")
def test_c7_swap(instances):
    rng = random.Random(7)
    pool = [(ctx, A, B) for ctx, items in instances[0].values() for A, B, _ in items]
    failures, cases = 0, 0
    while cases < 100:
        ctx, A, B = rng.choice(pool)
        axis = rng.choice(ctx.primes)
        period = ctx.period(axis)
        orbits = {frozenset((x + k * period) % ctx.M for k in range(axis)) for x in B}
        orbits = sorted((o for o in orbits if o <= B.members), key=min)
        if not orbits:
            continue
        chosen = [o for o in orbits if rng.random() < 0.5] or [rng.choice(orbits)]
        D = ZmSet.of(set().union(*chosen), ctx.M)
        Bh = swap_periodic(A, B, D, axis, ctx)
        failures += not covers_exactly_once(A.elements, Bh.elements, ctx.M)
        cases += 1
    assert failures == 0


@acceptance(8, "structural predicates hold on every eligible instance from criteria 3-4")
def test_c8_structural_predicates(ctx, canon_a, canon_complements, instances):
    checked = 0
    for B in canon_complements:
        if subgroup_containment(B) is None and 1 not in div_set(B):
            assert check_prop210(canon_a, B, ctx).as_tuple() == (True, True, True)
            checked += 1
    assert checked >= 50
    for c, items in instances[0].values():
        for A, B, _ in items:
            assert check_prop210(A, B, c).as_tuple() == (True, True, True)


@acceptance(9, "dilation by every k <= 50 coprime to pqr on criterion-4 instances")
def test_c9_dilation(instances):
    for ctx, items in instances[0].values():
        ks = [k for k in range(1, 51) if gcd(k, ctx.pqr) == 1]
        for A, B, _ in items:
            for k in ks:
                assert dilate_check(A, B, k)
