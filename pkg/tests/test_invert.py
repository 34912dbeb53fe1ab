from itertools import product as cartesian

import pytest

from cantortx.words import EMPTY, gcp
from cantortx.transducer import evaluate
from cantortx.initial import (
    evaluate_initial,
    initial_equal,
    minimize_initial,
    product_initial,
    split_rooted,
)
from cantortx.invert import (
    EmptyPreimage,
    inverse_closure,
    invert_initial,
    is_bisynchronizing_core,
    is_bisynchronizing_initial,
    bisynchronizing_failure_initial,
    preimage_gcp,
)
from cantortx.machines import (
    identity_transducer,
    letter_complement,
    machine_T,
    machine_U,
    machine_g4,
    oplus,
    realize,
    state_wrapper,
    swap_transducer,
)
from cantortx.group import (
    GroupElement,
    canonical_core,
    group_product,
    identity_element,
    invert_element,
    is_identity,
)
from cantortx.signature import inverse_reduced_signature


def brute_preimage_gcp(T, q, v, depth=6):
    """Oracle: gcp of the depth-`depth` inputs whose output settles inside
    the cone v."""
    hits = []
    for w in cartesian(range(T.n), repeat=depth):
        out, _ = evaluate(T, q, w)
        assert len(out) >= len(v), "oracle depth too small"
        if out[: len(v)] == tuple(v):
            hits.append(w)
    assert hits
    return gcp(hits)


class TestPreimageGcp:
    def test_identity(self):
        I = identity_transducer(3)
        for v in [(0,), (2, 1), (1, 0, 2)]:
            assert preimage_gcp(I, "0", v) == v

    def test_letter_complement(self):
        piR = letter_complement(4)
        assert preimage_gcp(piR, "0", (2, 3)) == (1, 0)

    def test_g_boundary_case(self):
        g = machine_g4()
        # inputs 0 and 1 both land in the cone 0, so the prefix is empty
        assert preimage_gcp(g, "a", (0,)) == EMPTY
        assert preimage_gcp(g, "a", (0,)) == brute_preimage_gcp(g, "a", (0,))

    def test_against_oracle(self):
        for M in (machine_g4(), machine_T(3), machine_U(3)):
            q = M.states[0]
            for k in (1, 2):
                for v in cartesian(range(M.n), repeat=k):
                    try:
                        got = preimage_gcp(M, q, v)
                    except EmptyPreimage:
                        # no depth-6 input may land inside v either
                        for w in cartesian(range(M.n), repeat=6):
                            out, _ = evaluate(M, q, w)
                            assert out[: len(v)] != v
                        continue
                    assert got == brute_preimage_gcp(M, q, v)

    def test_empty_preimage_raises(self):
        g = machine_g4()
        with pytest.raises(EmptyPreimage):
            preimage_gcp(g, "a", (2,))  # U_2 misses im(a)


class TestInvertInitial:
    def test_identity_wrapper_is_self_inverse(self):
        A = minimize_initial(state_wrapper(identity_transducer(3), "0", 2))
        assert invert_initial(A) == A

    def test_complement_wrapper_is_involution(self):
        A = minimize_initial(state_wrapper(letter_complement(3), "0", 1))
        assert invert_initial(A) == A

    def test_realized_element_inverts(self):
        g = machine_g4()
        A = realize(g, 3)
        Ainv = invert_initial(A)
        P = minimize_initial(product_initial(A, Ainv))
        assert initial_equal(P, state_wrapper(identity_transducer(4), "0", 3))
        # and pointwise: round trip on padded words
        pad = (0,) * 6
        for a in range(3):
            for w in cartesian(range(4), repeat=3):
                out, _ = evaluate_initial(A, a, w + pad)
                b, tail = split_rooted(out)
                back, _ = evaluate_initial(Ainv, b, tail)
                b2, tail2 = split_rooted(back)
                k = min(len(tail2), len(w + pad))
                assert b2 == a and tail2[:k] == (w + pad)[:k]

    def test_both_compositions_trivial_for_pool(self):
        ident2 = state_wrapper(identity_transducer(3), "0", 2)
        for A in (
            minimize_initial(state_wrapper(machine_T(3), "a", 2)),
            minimize_initial(state_wrapper(machine_U(3), "p", 2)),
            minimize_initial(state_wrapper(letter_complement(3), "0", 2)),
        ):
            Ainv = invert_initial(A)
            assert initial_equal(product_initial(A, Ainv), ident2)
            assert initial_equal(product_initial(Ainv, A), ident2)

    def test_non_invertible_rejected(self):
        from cantortx.words import InvalidInput

        A = state_wrapper(machine_g4(), "a", 1)  # image misses half the space
        with pytest.raises(InvalidInput):
            invert_initial(A)


class TestInvertCore:
    def test_involution_elements(self):
        g = GroupElement.from_machine(machine_g4())
        assert invert_element(g) == g
        piR = GroupElement.from_machine(letter_complement(5))
        assert invert_element(piR) == piR

    def test_group_inverse_law(self):
        T3 = GroupElement.from_machine(machine_T(3))
        assert is_identity(group_product(T3, invert_element(T3)))
        assert is_identity(group_product(invert_element(T3), T3))
        U4 = GroupElement.from_machine(machine_U(4))
        assert is_identity(group_product(U4, invert_element(U4)))

    def test_double_inverse(self):
        for M in (machine_T(3), machine_U(4), oplus(2, swap_transducer(), 4)):
            g = GroupElement.from_machine(M)
            assert invert_element(invert_element(g)) == g

    def test_root_independence(self):
        for M in (machine_g4(), machine_T(3), machine_U(3)):
            g = GroupElement.from_machine(M)
            results = {invert_element(g, root=q).machine for q in g.machine.states}
            assert len(results) == 1

    def test_inverse_signature_cross_check(self):
        for M in (machine_g4(), machine_T(3), machine_U(4), letter_complement(6)):
            g = GroupElement.from_machine(M)
            assert inverse_reduced_signature(g.machine) == invert_element(g).rsig


class TestBisynchronizing:
    def test_initial_examples(self):
        assert is_bisynchronizing_initial(realize(machine_g4(), 3))
        assert is_bisynchronizing_initial(
            state_wrapper(identity_transducer(3), "0", 2)
        )
        W = realize(oplus(2, swap_transducer(), 4), 3, ordered=False)
        assert is_bisynchronizing_initial(W)

    def test_failure_reason_distinguishes_noninvertible(self):
        A = state_wrapper(machine_g4(), "a", 1)
        reason = bisynchronizing_failure_initial(A)
        assert reason is not None and "not invertible" in reason

    def test_core_variant(self):
        assert is_bisynchronizing_core(machine_g4())
        assert is_bisynchronizing_core(machine_T(4))
        assert is_bisynchronizing_core(oplus(3, identity_transducer(3), 6))
