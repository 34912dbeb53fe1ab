"""The reproducibility suite: every published computation the library must
reproduce exactly, grouped into named checks.  Each check returns (ok,
detail); the CLI `tx verify` runs them and prints one PASS/FAIL line each.
The pytest acceptance module asserts the same facts with frozen values."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from itertools import product as cartesian

from .words import rotation_class_of
from .transducer import evaluate, minimize_rooted, product
from .initial import evaluate_initial, split_rooted
from .synchronize import minimal_sync_level
from .images import Orientation, images, is_homeomorphism_state, orientation
from .invert import invert_initial, is_bisynchronizing_core
from .signature import (
    divisors_generate_units,
    inverse_reduced_signature,
    member_over_roots,
    member_over_roots_ordered,
    membership_monotonicity_check,
    signature_class_partition,
    signature_report,
    verify_lcm_claim,
)
from .machines import (
    cycle_transducer,
    identity_transducer,
    letter_complement,
    machine_T,
    machine_U,
    machine_g4,
    oplus,
    realize,
    swap_transducer,
)
from .group import (
    GroupElement,
    commutator_word,
    element_order,
    group_product,
    identity_element,
    invert_element,
    is_identity,
    orbit_lengths,
    verify_relation,
)


def _expect(failures, ok, label):
    if not ok:
        failures.append(label)


def check_g_suite():
    failures = []
    g = machine_g4()
    _expect(failures, minimal_sync_level(g) == 1, "sync level 1")
    img = images(g)
    _expect(failures, img["a"].cones == ((0,), (1,)), "im(a) = {0,1}")
    _expect(failures, img["b"].cones == ((2,), (3,)), "im(b) = {2,3}")
    rep = signature_report(g)
    _expect(failures, rep.per_word_m == (2, 2, 2, 2), "m values")
    _expect(failures, rep.sig == 8 and rep.rsig == 2, "sig 8, rsig 2")
    members = [member_over_roots_ordered(g, r) for r in (1, 2, 3)]
    _expect(failures, members == [False, False, True], "member exactly at r=3")
    G = GroupElement.from_machine(g)
    order = element_order(G, 8)
    _expect(failures, order.finite and order.value == 2, "order 2")
    _expect(failures, orientation(g) is Orientation.PRESERVING, "orientation")
    return not failures, "; ".join(failures) or "all exact values reproduced"


def check_pi_r_identity():
    failures = []
    for n in (3, 4):
        piR = GroupElement.from_machine(letter_complement(n))
        order = element_order(piR, 8)
        _expect(failures, order.finite and order.value == 2, f"order piR n={n}")
        _expect(failures, piR.rsig == 1, f"rsig piR n={n}")
        for r in range(1, n):
            _expect(
                failures,
                member_over_roots_ordered(piR.machine, r),
                f"piR member r={r} n={n}",
            )
        ident = identity_element(n)
        _expect(failures, is_identity(ident), f"identity n={n}")
        _expect(
            failures,
            is_identity(group_product(ident, piR)) is False
            and group_product(ident, piR) == piR,
            f"identity law n={n}",
        )
    return not failures, "; ".join(failures) or "orders, signatures, membership"


def check_f_relations():
    failures = []
    rel1 = commutator_word([("U", -1), ("T", 1)], [("T", 1), ("U", 1), ("T", -1)])
    rel2 = commutator_word(
        [("U", -1), ("T", 1)], [("T", 1), ("T", 1), ("U", 1), ("T", -1), ("T", -1)]
    )
    for n in (3, 4, 5):
        T = machine_T(n)
        U = machine_U(n)
        for (M, q) in ((T, "a"), (T, "b"), (U, "p")):
            _expect(failures, is_homeomorphism_state(M, q), f"homeo state {q} n={n}")
        _expect(failures, member_over_roots_ordered(T, 1), f"T member r=1 n={n}")
        _expect(failures, member_over_roots_ordered(U, 1), f"U member r=1 n={n}")
        gens = {"T": GroupElement.from_machine(T), "U": GroupElement.from_machine(U)}
        _expect(failures, verify_relation(gens, rel1), f"relation 1 n={n}")
        _expect(failures, verify_relation(gens, rel2), f"relation 2 n={n}")
    return not failures, "; ".join(failures) or "both relations at n=3,4,5"


def check_infinite_order():
    failures = []
    T3 = GroupElement.from_machine(machine_T(3))
    lens = orbit_lengths(T3, rotation_class_of((1, 2)), 6)
    _expect(
        failures,
        all(a < b for a, b in zip(lens, lens[1:])),
        f"orbit lengths grow: {lens}",
    )
    order = element_order(T3, 16)
    _expect(failures, not order.finite, "order exceeds bound 16")
    return not failures, "; ".join(failures) or f"orbit {lens}, no order up to 16"


def _block_summand(d):
    return swap_transducer() if d == 2 else cycle_transducer(d)


def check_block_sums():
    failures = []
    for n, d in ((4, 2), (6, 2), (6, 3)):
        M = oplus(d, _block_summand(d), n)
        rep = signature_report(M)
        _expect(failures, rep.rsig == d, f"rsig={d} for n={n},d={d}")
        _expect(failures, is_bisynchronizing_core(M), f"bi-synchronizing n={n},d={d}")
        img = images(M)
        m = n // d
        for i in range(m):
            want = tuple((d * i + b,) for b in range(d))
            for q in _block_summand(d).states:
                _expect(
                    failures,
                    img[(q, i)].cones == want,
                    f"image block {i} n={n},d={d}",
                )
    return not failures, "; ".join(failures) or "rsig=d, bi-sync, block images"


def _generator_pool(n):
    base = [identity_transducer(n), letter_complement(n)]
    if n == 4:
        base.append(machine_g4())
    if n >= 3:
        base.append(machine_T(n))
        base.append(machine_U(n))
    for d in range(2, n):
        if n % d == 0:
            base.append(oplus(d, _block_summand(d), n))
    return [GroupElement.from_machine(M) for M in base]


def _close_pool(gens, max_len=3):
    """Products of up to max_len generators, deduplicated by canonical
    machine; returns {length: [elements]}."""
    layers = {1: []}
    seen = {}
    for g in gens:
        if g.machine not in seen:
            seen[g.machine] = g
            layers[1].append(g)
    for k in range(2, max_len + 1):
        layers[k] = []
        for e in layers[k - 1]:
            for g in gens:
                p = group_product(e, g)
                if p.machine not in seen:
                    seen[p.machine] = p
                    layers[k].append(p)
    return layers


def check_rsig_homomorphism():
    failures = []
    for n in (3, 4):
        gens = _generator_pool(n)
        layers = _close_pool(gens, 3)
        m = n - 1
        for i, j in ((1, 1), (1, 2), (2, 1)):
            for X in layers[i]:
                for Y in layers[j]:
                    P = group_product(X, Y)
                    want = (X.rsig * Y.rsig - 1) % m + 1
                    if P.rsig != want:
                        failures.append(f"rsig({i}+{j} product) n={n}")
        everything = layers[1] + layers[2] + layers[3]
        for X in everything:
            if inverse_reduced_signature(X.machine) != invert_element(X).rsig:
                failures.append(f"inverse signature mismatch n={n}")
            img = images(X.machine)
            residues = {(len(img[q].cones) - 1) % m + 1 for q in X.machine.states}
            if residues != {X.rsig}:
                failures.append(f"m_q not constant n={n}")
        if failures:
            break
    return not failures, "; ".join(sorted(set(failures))) or "homomorphism verified"


def check_n7_partition():
    got = signature_class_partition(7, {1, 5})
    want = {frozenset({1, 2, 4, 5}), frozenset({3, 6})}
    ok = got == want
    return ok, f"partition {sorted(map(sorted, got))}"


def check_units_lattice():
    failures = []
    for m in range(2, 51):
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if not verify_lcm_claim(m, i, j):
                    failures.append(f"lcm claim m={m},i={i},j={j}")
    for n in (4, 10, 28):
        if not divisors_generate_units(n):
            failures.append(f"divisors do not generate units for n={n}")
    return not failures, "; ".join(failures[:4]) or "lcm claim m<=50; divisor family"


def _padded_outputs_agree(out1, out2):
    k = min(len(out1), len(out2))
    return out1[:k] == out2[:k]


def check_oracle_equivalence():
    failures = []
    for n in (2, 3, 4):
        pool = [identity_transducer(n), letter_complement(n)]
        if n == 4:
            pool.append(machine_g4())
            pool.append(oplus(2, swap_transducer(), 4))
        if n >= 3:
            pool.append(machine_T(n))
            pool.append(machine_U(n))
        pad = (0,) * 6
        words = [w for k in range(7) for w in cartesian(range(n), repeat=k)]
        for M in pool:
            root = M.states[0]
            Mmin, rt = minimize_rooted(M, root)
            for w in words:
                a, _ = evaluate(M, root, w + pad)
                b, _ = evaluate(Mmin, rt, w + pad)
                if not _padded_outputs_agree(a, b):
                    failures.append(f"minimize oracle n={n}")
                    break
        for A, B in zip(pool, pool[1:]):
            P = product(A, B)
            ra, rb = A.states[0], B.states[0]
            for w in words:
                mid, _ = evaluate(A, ra, w + pad)
                direct, _ = evaluate(B, rb, mid)
                got, _ = evaluate(P, (ra, rb), w + pad)
                if not _padded_outputs_agree(direct, got):
                    failures.append(f"product oracle n={n}")
                    break
        if n >= 3:
            for M in pool[2:3]:
                X = GroupElement.from_machine(M)
                A = realize(X.machine, n - 1, ordered=member_over_roots_ordered(X.machine, n - 1))
                Ainv = invert_initial(A)
                for a in range(A.r):
                    for w in cartesian(range(n), repeat=4):
                        out, _ = evaluate_initial(A, a, w + pad)
                        b, tail = split_rooted(out)
                        back, _ = evaluate_initial(Ainv, b, tail)
                        b2, tail2 = split_rooted(back)
                        if b2 != a or not _padded_outputs_agree(tail2, w + pad):
                            failures.append(f"invert oracle n={n}")
                            break
    return not failures, "; ".join(sorted(set(failures))) or "all oracles agree"


def check_membership_lattice():
    failures = []
    for n in (3, 4):
        for X in _generator_pool(n):
            T = X.machine
            if not member_over_roots(T, n - 1):
                failures.append(f"member at n-1 fails n={n}")
            for i in range(1, n):
                for j in range(1, n):
                    if not membership_monotonicity_check(T, i, j):
                        failures.append(f"monotonicity i={i},j={j} n={n}")
    return not failures, "; ".join(sorted(set(failures))) or "lattice laws hold"


CHECKS = [
    ("g-suite", check_g_suite),
    ("pi-R-and-identity", check_pi_r_identity),
    ("F-relations", check_f_relations),
    ("infinite-order-witness", check_infinite_order),
    ("block-sum-suite", check_block_sums),
    ("rsig-homomorphism", check_rsig_homomorphism),
    ("n7-partition", check_n7_partition),
    ("units-lattice", check_units_lattice),
    ("oracle-equivalence", check_oracle_equivalence),
    ("membership-lattice", check_membership_lattice),
]

SUITES = {
    "paper": [name for name, _ in CHECKS],
    "F-relations": ["F-relations"],
}


def run_suite(suite="paper", jobs=1):
    """Run the named suite; returns [(name, ok, detail, seconds)]."""
    names = SUITES.get(suite)
    if names is None:
        raise KeyError(f"unknown suite {suite!r}")
    chosen = [(name, fn) for name, fn in CHECKS if name in names]

    def run_one(item):
        name, fn = item
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure with the reason attached
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        return name, ok, detail, time.perf_counter() - start

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_one, chosen))
    return [run_one(item) for item in chosen]
