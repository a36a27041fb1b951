"""Complement enumeration by exact-cover backtracking, random Szabó-pair
generation, and the bounded check of the characterization theorem.

The cover state is a Python int used as a bit-vector of length M; a
translate A + b is the cyclic rotation of A's mask by b.
"""

from __future__ import annotations

import os
import random
import time
from collections import deque
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Iterator

from .divsets import is_factorization_brute, is_factorization_sands
from .errors import BudgetExceeded, GenerationFailed, NotSumsetForm, PreconditionViolated
from .residue import ModulusContext, ZmSet, subgroup_containment, translate
from .szabo import SzaboWitness, build_a, build_b, recover_uvw, verify_szabo_pair

__all__ = [
    "SearchOptions",
    "SearchResult",
    "TheoremReport",
    "complement_search",
    "collect_complements",
    "verify_theorem",
    "random_instance",
    "random_uvw",
    "random_h_sets",
    "resolve_workers",
]

THREADS_ENV = "CYCLOTILE_THREADS"
_TICK = 2048


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for complement_search.

    ``branching`` picks the residue to cover next: "mrv" takes the uncovered
    residue with the fewest admissible translates (smallest residue on ties),
    "smallest" always takes the smallest uncovered residue. ``frontier`` is
    the depth at which subtrees are interleaved round-robin (0 gives plain
    depth-first order).
    """

    max_solutions: int | None = None
    time_budget: float | None = None
    require_not_subgroup: bool = False
    seed: int | None = None
    workers: int = 1
    stable: bool = True
    branching: str = "mrv"
    frontier: int = 2


@dataclass
class SearchResult:
    solutions: list[ZmSet]
    complete: bool


@dataclass
class TheoremReport:
    instances_checked: int = 0
    szabo_confirmed: int = 0
    subgroup_excluded: int = 0
    violations: list[tuple[ZmSet, ZmSet]] = field(default_factory=list)
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "instances_checked": self.instances_checked,
            "szabo_confirmed": self.szabo_confirmed,
            "subgroup_excluded": self.subgroup_excluded,
            "violations": [{"A": a.to_dict(), "B": b.to_dict()} for a, b in self.violations],
            "complete": self.complete,
        }


def resolve_workers(requested: int | None = None) -> int:
    """Worker count, capped by CYCLOTILE_THREADS and the CPU count."""
    n = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


class _Cover:
    """Depth-first exact cover of Z_M by translates of A.

    Every node computes the admissible translates (A + b disjoint from the
    cover) and, with bit-sliced counters, how many of them reach each
    uncovered residue; a residue nobody can reach kills the subtree.
    """

    def __init__(self, elements, M: int, order, deadline: float | None,
                 branching: str = "mrv"):
        if branching not in ("mrv", "smallest"):
            raise ValueError(f"unknown branching rule {branching!r}")
        self.M = M
        self.full = (1 << M) - 1
        self.elements = list(elements)
        self.mask = 0
        for a in self.elements:
            self.mask |= 1 << a
        self.order = list(order)
        self.deadline = deadline
        self.mrv = branching == "mrv"
        self._rot: dict[int, int] = {}
        self._nodes = 0

    def rotate(self, x: int, b: int) -> int:
        b %= self.M
        if b == 0:
            return x
        return ((x << b) | (x >> (self.M - b))) & self.full

    def rot(self, b: int) -> int:
        """Mask of A + b."""
        t = self._rot.get(b)
        if t is None:
            t = self._rot[b] = self.rotate(self.mask, b)
        return t

    def _check_time(self):
        self._nodes += 1
        if self.deadline is not None and self._nodes % _TICK == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded()

    def branches(self, covered: int) -> list[int]:
        """Admissible translates covering the chosen residue; empty when some
        uncovered residue can no longer be covered."""
        blocked = 0
        for a in self.elements:
            blocked |= self.rotate(covered, -a)
        valid = ~blocked & self.full
        # planes[i] holds bit i of the per-residue count of admissible translates
        planes: list[int] = []
        for a in self.elements:
            carry = self.rotate(valid, a)
            i = 0
            while carry:
                if i == len(planes):
                    planes.append(carry)
                    break
                nxt = planes[i] & carry
                planes[i] ^= carry
                carry = nxt
                i += 1
        free = ~covered & self.full
        reach = 0
        for plane in planes:
            reach |= plane
        if free & ~reach:
            return []
        pick = free
        if self.mrv:
            k = 1
            while True:
                pick = free
                for i, plane in enumerate(planes):
                    pick &= plane if (k >> i) & 1 else ~plane
                if pick:
                    break
                k += 1
        g = (pick & -pick).bit_length() - 1
        out = []
        for a in self.order:
            b = (g - a) % self.M
            if (valid >> b) & 1:
                out.append(b)
        return out

    def solve(self, covered: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        if covered == self.full:
            yield tuple(sorted(chosen))
            return
        self._check_time()
        for b in self.branches(covered):
            chosen.append(b)
            yield from self.solve(covered | self.rot(b), chosen)
            chosen.pop()

    def frontier(self, depth: int) -> list[tuple[int, list[int]]]:
        """Partial covers ``depth`` levels below the root {0}."""
        states = [(self.rot(0), [0])]
        for _ in range(depth):
            nxt = []
            for covered, chosen in states:
                if covered == self.full:
                    nxt.append((covered, chosen))
                    continue
                for b in self.branches(covered):
                    nxt.append((covered | self.rot(b), chosen + [b]))
            states = nxt
        return states

    def interleaved(self, depth: int) -> Iterator[tuple[int, ...]]:
        """All solutions, taking one from each frontier subtree in turn."""
        gens = deque(self.solve(c, list(ch)) for c, ch in self.frontier(depth))
        while gens:
            gen = gens.popleft()
            try:
                sol = next(gen)
            except StopIteration:
                continue
            gens.append(gen)
            yield sol


def _branch_order(A: ZmSet, seed: int | None) -> list[int]:
    order = list(A.elements)
    if seed is not None:
        random.Random(seed).shuffle(order)
    return order


def _deadline(opts: SearchOptions) -> float | None:
    return None if opts.time_budget is None else time.monotonic() + opts.time_budget


def _subtree(elements, M, order, branching, state, limit, deadline_in, require_nonsub):
    """Worker entry: complements below one frontier state."""
    deadline = None if deadline_in is None else time.monotonic() + deadline_in
    cover = _Cover(elements, M, order, deadline, branching)
    A = ZmSet(M, tuple(elements))
    covered, chosen = state
    found = []
    try:
        for sol in cover.solve(covered, list(chosen)):
            B = ZmSet(M, sol)
            if require_nonsub and subgroup_containment(B) is not None:
                continue
            assert is_factorization_brute(A, B) and is_factorization_sands(A, B)
            found.append(sol)
            if limit is not None and len(found) >= limit:
                break
    except BudgetExceeded:
        return found, False
    return found, True


def complement_search(A: ZmSet, opts: SearchOptions | None = None,
                      ctx: ModulusContext | None = None) -> Iterator[ZmSet]:
    """Yield every B containing 0 with A + B = Z_M exactly once per residue.

    Each node picks an uncovered residue g (see SearchOptions.branching) and
    branches over the translates b = g - a, a in A, in ascending order of a
    (or a seed-shuffled order). Subtrees at the frontier depth are consumed
    round-robin so early output is not confined to one corner of the tree.
    With ``workers > 1`` and ``stable=False`` the frontier subtrees run in
    separate processes and solutions arrive in completion order.

    Raises BudgetExceeded once the time budget is spent; ``exc.partial`` holds
    the solutions already yielded.
    """
    opts = opts or SearchOptions()
    M = A.modulus
    if ctx is not None and ctx.M != M:
        raise PreconditionViolated(f"A is over Z_{M}, context has M={ctx.M}")
    if 0 not in A:
        raise PreconditionViolated("A must contain 0")
    if M % len(A):
        raise PreconditionViolated(f"|A|={len(A)} does not divide M={M}")
    emitted: list[ZmSet] = []
    if opts.time_budget is not None and opts.time_budget <= 0:
        raise BudgetExceeded(partial=emitted)
    if opts.max_solutions is not None and opts.max_solutions <= 0:
        return

    order = _branch_order(A, opts.seed)
    workers = resolve_workers(opts.workers)
    if opts.stable or workers <= 1:
        yield from _sequential(A, order, opts, emitted)
    else:
        yield from _parallel(A, order, opts, workers, emitted)


def _accept(A: ZmSet, B: ZmSet, opts: SearchOptions) -> bool:
    if opts.require_not_subgroup and subgroup_containment(B) is not None:
        return False
    assert is_factorization_brute(A, B) and is_factorization_sands(A, B), B
    return True


def _sequential(A, order, opts, emitted):
    cover = _Cover(A.elements, A.modulus, order, _deadline(opts), opts.branching)
    try:
        for sol in cover.interleaved(opts.frontier):
            B = ZmSet(A.modulus, sol)
            if not _accept(A, B, opts):
                continue
            emitted.append(B)
            yield B
            if opts.max_solutions is not None and len(emitted) >= opts.max_solutions:
                return
    except BudgetExceeded as exc:
        exc.partial = emitted
        raise


def _parallel(A, order, opts, workers, emitted):
    M = A.modulus
    root = _Cover(A.elements, M, order, None, opts.branching)
    states = root.frontier(max(1, opts.frontier))
    deadline = _deadline(opts)
    incomplete = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {
            pool.submit(_subtree, A.elements, M, order, opts.branching, st,
                        opts.max_solutions, opts.time_budget, opts.require_not_subgroup)
            for st in states
        }
        try:
            while pending:
                timeout = None if deadline is None else max(0.0, deadline - time.monotonic())
                done, pending = wait(pending, timeout=timeout, return_when=FIRST_COMPLETED)
                if not done:
                    incomplete = True
                    break
                for fut in done:
                    sols, complete = fut.result()
                    incomplete |= not complete
                    for sol in sols:
                        B = ZmSet(M, sol)
                        emitted.append(B)
                        yield B
                        if opts.max_solutions is not None and len(emitted) >= opts.max_solutions:
                            return
        finally:
            for fut in pending:
                fut.cancel()
    if incomplete:
        raise BudgetExceeded(partial=emitted)


def collect_complements(A: ZmSet, opts: SearchOptions | None = None,
                        ctx: ModulusContext | None = None) -> SearchResult:
    """Run complement_search to the end, folding a budget overrun into the
    ``complete`` flag instead of raising."""
    out: list[ZmSet] = []
    try:
        for B in complement_search(A, opts, ctx):
            out.append(B)
    except BudgetExceeded:
        return SearchResult(out, False)
    return SearchResult(out, True)


def verify_theorem(A: ZmSet, opts: SearchOptions | None, ctx: ModulusContext) -> TheoremReport:
    """Search complements of a sumset tile A and require each complement that
    avoids proper subgroups to form a Szabó pair with A, in either order.

    On budget exhaustion BudgetExceeded is raised with the partial report.
    """
    opts = opts or SearchOptions()
    try:
        recover_uvw(A, ctx)
    except NotSumsetForm as exc:
        raise PreconditionViolated(f"A is not a sumset tile: {exc}") from exc
    report = TheoremReport()
    deadline = _deadline(opts)
    try:
        for B in complement_search(A, opts, ctx):
            report.instances_checked += 1
            if subgroup_containment(B) is not None:
                report.subgroup_excluded += 1
            elif verify_szabo_pair(A, B, ctx) or verify_szabo_pair(B, A, ctx):
                report.szabo_confirmed += 1
            else:
                report.violations.append((A, B))
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceeded()
    except BudgetExceeded as exc:
        report.complete = False
        raise BudgetExceeded(f"time budget exceeded after {report.instances_checked} instances",
                             partial=report) from exc
    return report


# -- random Szabó pairs --------------------------------------------------------------

def random_uvw(rng: random.Random, ctx: ModulusContext) -> tuple[list[int], list[int], list[int]]:
    """Random U, V, W: 0 plus one representative mod a^2 of each nonzero class mod a."""
    out = []
    for a in ctx.primes:
        out.append([0] + [i + a * rng.randrange(a) for i in range(1, a)])
    return tuple(out)


def _orbit(o: int, step: int, n: int) -> frozenset[int]:
    return frozenset(range(o, n, step))


def random_h_sets(rng: random.Random, ctx: ModulusContext, density: float = 0.5,
                  tries: int = 200):
    """Random disjoint H_p, H_q, H_r in Z_pqr avoiding 0, invariant under
    +qr, +rp, +pq, with a random nonzero class for every orbit.

    Returns ((H_p, H_q, H_r), (assign_p, assign_q, assign_r)).
    """
    n = ctx.pqr
    candidates = [(a, o) for a in ctx.primes for o in range(1, ctx.pair_product(a))]
    for _ in range(tries):
        chosen: dict[int, dict[int, frozenset[int]]] = {a: {} for a in ctx.primes}
        used: set[int] = set()
        ok = True
        for a in ctx.primes:
            step = ctx.pair_product(a)
            options = [o for o in range(1, step) if not _orbit(o, step, n) & used]
            if not options:
                ok = False
                break
            o = rng.choice(options)
            chosen[a][o] = _orbit(o, step, n)
            used |= chosen[a][o]
        if not ok:
            continue
        order = candidates[:]
        rng.shuffle(order)
        for a, o in order:
            if o in chosen[a] or rng.random() >= density:
                continue
            orb = _orbit(o, ctx.pair_product(a), n)
            if not orb & used:
                chosen[a][o] = orb
                used |= orb
        hs = tuple(sorted(set().union(*chosen[a].values())) for a in ctx.primes)
        assigns = tuple({o: rng.randrange(1, a) for o in sorted(chosen[a])} for a in ctx.primes)
        return hs, assigns
    raise GenerationFailed(f"no disjoint invariant H sets found for {ctx}")


def random_instance(seed: int, ctx: ModulusContext, retries: int = 20,
                    ) -> tuple[ZmSet, ZmSet, SzaboWitness]:
    """A random Szabó pair (A, B) with its certificate, deterministic per seed.

    B is additionally translated by a random element of itself, so the
    certificate offset is not always 0. The pair is re-checked by the
    coverage oracle before it is returned.
    """
    rng = random.Random(seed)
    for _ in range(retries):
        A = build_a(*random_uvw(rng, ctx), ctx)
        hs, assigns = random_h_sets(rng, ctx)
        B = build_b(*hs, *assigns, ctx=ctx)
        B = translate(B, rng.choice(B.elements))
        if not is_factorization_brute(A, B):
            continue
        w = verify_szabo_pair(A, B, ctx)
        if w is not None:
            return A, B, w
    raise GenerationFailed(f"seed {seed}: no verified instance after {retries} attempts")
