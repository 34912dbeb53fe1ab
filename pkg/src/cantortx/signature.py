"""Signatures and membership.

For a synchronizing machine whose states all have clopen images, the
signature is the sum of the image-antichain sizes of the states forced by the
words of the minimal synchronizing length, in lexicographic order; its
residue mod n-1 (kept in 1..n-1) is a multiplicative invariant.  Membership of
a core element over r roots is the congruence r*(sig - 1) = 0 mod n-1 on top
of the structural validation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as cartesian

from .words import EMPTY, InvalidInput
from .transducer import Transducer
from .synchronize import (
    NotSynchronizing,
    core,
    forced_state,
    is_synchronizing,
    minimal_sync_level,
)
from .images import (
    Orientation,
    NotClopenImage,
    images,
    is_injective_state,
    orientation,
)
from .invert import is_bisynchronizing_core


def residue(value, n):
    """value mod n-1 represented in 1..n-1 (so units stay visibly units)."""
    return (value - 1) % (n - 1) + 1


@dataclass
class SignatureReport:
    sync_level: int
    per_word_m: tuple
    sig: int
    rsig: int


def signature_report(T):
    """Signature data of a synchronizing machine with injective clopen-image
    states; preconditions are checked and named."""
    if not is_synchronizing(T):
        raise NotSynchronizing("signature needs a synchronizing machine")
    img = images(T)
    for q in T.states:
        if not is_injective_state(T, q):
            raise InvalidInput(f"state {q!r} is not injective")
    k = minimal_sync_level(T)
    per = []
    for word in cartesian(range(T.n), repeat=k):
        per.append(len(img[forced_state(T, word)].cones))
    sig = sum(per)
    return SignatureReport(k, tuple(per), sig, residue(sig, T.n))


def reduced_signature(T):
    return signature_report(T).rsig


def validation_failure(T):
    """None when T is a valid core element (core, bi-synchronizing, every
    state injective with clopen image); otherwise the reason."""
    if not isinstance(T, Transducer):
        return "not a plain transducer"
    if not is_synchronizing(T):
        return "not synchronizing"
    if set(core(T).states) != set(T.states):
        return "not core: some states are not forced by long words"
    try:
        img = images(T)
    except NotClopenImage:
        return "some state image is not clopen within the iteration bound"
    for q in T.states:
        if not is_injective_state(T, q):
            return f"state {q!r} is not injective"
    if not is_bisynchronizing_core(T):
        return "the inverse is not synchronizing"
    return None


def member_over_roots(T, r):
    """Is T the long-run behaviour of some homeomorphism machine over r
    roots?  False (never an exception) when validation or the congruence
    fails."""
    n = T.n
    if not (1 <= r <= n - 1):
        raise InvalidInput(f"root count must be in 1..{n - 1}")
    if validation_failure(T) is not None:
        return False
    sig = signature_report(T).sig
    return (r * (sig - 1)) % (n - 1) == 0


def member_over_roots_ordered(T, r):
    """Membership over r roots for the circle-compatible subgroup: the
    element must additionally preserve or reverse the lexicographic order."""
    if not member_over_roots(T, r):
        return False
    return orientation(T) in (Orientation.PRESERVING, Orientation.REVERSING)


def inverse_reduced_signature(T):
    """Reduced signature of the inverse, computed directly on T: pick a state
    q and an image cone v, take j with every length-j output from q at least
    |v| long, and count the length-j inputs whose output starts with v."""
    fail = validation_failure(T)
    if fail is not None:
        raise InvalidInput(f"not a valid core element: {fail}")
    q = T.states[0]
    img = images(T)
    if img[q].is_empty():
        raise InvalidInput("state has empty image")
    v = min(img[q].cones)
    j = _depth_with_min_output(T, q, len(v))
    count = _count_outputs_with_prefix(T, q, j, v)
    return residue(count, T.n)


def _depth_with_min_output(T, q, need, cap=4096):
    minlen = {p: 0 for p in T.states}
    j = 0
    while j < cap:
        if minlen[q] >= need:
            return j
        minlen = {
            p: min(len(T.output(p, i)) + minlen[T.dest(p, i)] for i in range(T.n))
            for p in T.states
        }
        j += 1
    raise InvalidInput("outputs do not grow; machine is degenerate")


def _count_outputs_with_prefix(T, q, depth, v):
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def count(p, d, t):
        if d == 0:
            return 1 if t == EMPTY else 0
        total = 0
        for i in range(T.n):
            w, p2 = T.step(p, i)
            k = min(len(w), len(t))
            if w[:k] != t[:k]:
                continue
            total += count(p2, d - 1, t[len(w):])
        return total

    return count(q, depth, tuple(v))


# --- the class partition and the units lattice ------------------------------


def signature_class_partition(n, sigs):
    """Partition of the root counts 1..n-1 induced by a set of achieved
    reduced signatures: r and s fall together iff every j in the set makes
    r(j-1) and s(j-1) vanish mod n-1 simultaneously.

    This is the per-element biconditional derived from the membership
    congruence; it reproduces the published n=7 classes.  The source text
    states the grouping condition in a single-sided form; the biconditional
    is what the congruence actually yields."""
    m = n - 1
    canon = set()
    for s in sigs:
        s = residue(s, n)
        if math.gcd(s, m) != 1:
            raise InvalidInput(f"reduced signature {s} is not a unit mod {m}")
        canon.add(s)

    def profile(r):
        return tuple((r * (j - 1)) % m == 0 for j in sorted(canon))

    groups = {}
    for r in range(1, n):
        groups.setdefault(profile(r), []).append(r)
    return {frozenset(g) for g in groups.values()}


def units(m):
    return [a for a in range(m) if math.gcd(a, m) == 1] or [0]


def units_fixing_subgroup(m, i):
    """Units a of Z_m with a*i = i mod m; depends only on gcd(i, m)."""
    return {a for a in units(m) if (a * i) % m == i % m}


def subgroup_generated(m, gens):
    gens = {g % m for g in gens}
    elems = {1 % m}
    frontier = set(elems)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                b = (a * g) % m
                if b not in elems:
                    elems.add(b)
                    new.add(b)
        frontier = new
    return elems


def verify_lcm_claim(m, i, j):
    """The subgroup generated by the fixers of i and j equals the fixer of
    lcm(gcd(i,m), gcd(j,m))."""
    gen = subgroup_generated(m, units_fixing_subgroup(m, i) | units_fixing_subgroup(m, j))
    r = math.lcm(math.gcd(i, m), math.gcd(j, m))
    return gen == units_fixing_subgroup(m, r)


def divisors_generate_units(n):
    m = n - 1
    divs = {d % m for d in range(1, n + 1) if n % d == 0}
    return subgroup_generated(m, divs) == set(units(m))


def membership_monotonicity_check(T, i, j):
    """Property helper: membership at i propagates along multipliers m with
    m*i = j mod n-1, and membership at j matches membership at gcd(j, n-1)."""
    m = T.n - 1
    ok = True
    if member_over_roots(T, i) and any((k * i) % m == j % m for k in range(m)):
        ok = ok and member_over_roots(T, j)
    d = math.gcd(j, m)
    d = residue(d, T.n)
    ok = ok and (member_over_roots(T, j) == member_over_roots(T, d))
    return ok
