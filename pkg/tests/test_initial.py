from itertools import product as cartesian

import pytest

from cantortx.words import EMPTY, EvPeriodicWord, InvalidInput
from cantortx.transducer import DegenerateTransducer
from cantortx.initial import (
    InitialTransducer,
    dot,
    evaluate_initial,
    evaluate_periodic_initial,
    initial_equal,
    minimize_initial,
    product_initial,
    rooted_word,
    split_rooted,
)
from cantortx.machines import (
    identity_transducer,
    letter_complement,
    machine_g4,
    state_wrapper,
    reversing_complement_wrapper,
)


def identity_wrapper(n, r):
    return state_wrapper(identity_transducer(n), "0", r)


class TestConstruction:
    def test_wrapper_evaluates(self):
        A = identity_wrapper(3, 2)
        out, q = evaluate_initial(A, 1, (0, 2, 1))
        assert split_rooted(out) == (1, (0, 2, 1))

    def test_root_cannot_be_reentered(self):
        with pytest.raises(InvalidInput):
            InitialTransducer(
                2, 1,
                {0: ((dot(0),), "s")},
                {"s": {0: ((0,), "q0"), 1: ((1,), "s")}},
            )

    def test_letters_before_root_rejected(self):
        with pytest.raises(InvalidInput):
            InitialTransducer(
                2, 1,
                {0: ((0,), "s")},  # plain letters before the output root
                {"s": {0: ((0,), "s"), 1: ((1,), "s")}},
            )

    def test_second_root_rejected(self):
        with pytest.raises(InvalidInput):
            InitialTransducer(
                2, 1,
                {0: ((dot(0),), "s")},
                {"s": {0: ((dot(0),), "s"), 1: ((1,), "s")}},
            )

    def test_rootless_cycle_rejected(self):
        with pytest.raises(InvalidInput):
            InitialTransducer(
                2, 1,
                {0: (EMPTY, "s")},
                {"s": {0: (EMPTY, "s"), 1: ((dot(0),), "t")},
                 "t": {0: ((0,), "t"), 1: ((1,), "t")}},
            )

    def test_empty_output_cycle_rejected(self):
        with pytest.raises(DegenerateTransducer):
            InitialTransducer(
                2, 1,
                {0: ((dot(0),), "s")},
                {"s": {0: (EMPTY, "s"), 1: ((1,), "s")}},
            )


class TestEvaluate:
    def test_delayed_root(self):
        # output root emitted on the second letter
        A = InitialTransducer(
            2, 2,
            {0: (EMPTY, "w"), 1: ((dot(1),), "id")},
            {
                "w": {0: (rooted_word(0, (0,)), "id"), 1: (rooted_word(1, EMPTY), "id")},
                "id": {0: ((0,), "id"), 1: ((1,), "id")},
            },
        )
        out, _ = evaluate_initial(A, 0, (0, 1))
        assert split_rooted(out) == (0, (0, 1))
        out, _ = evaluate_initial(A, 0, (1, 0))
        assert split_rooted(out) == (1, (0,))

    def test_periodic(self):
        A = identity_wrapper(3, 2)
        root, pt = evaluate_periodic_initial(A, 1, EvPeriodicWord((0,), (2, 1)))
        assert root == 1 and pt == EvPeriodicWord((0,), (2, 1))

    def test_periodic_reversing(self):
        W = reversing_complement_wrapper(4, 3)
        root, pt = evaluate_periodic_initial(W, 0, EvPeriodicWord((), (0,)))
        assert root == 2 and pt == EvPeriodicWord((), (3,))


class TestProductMinimize:
    def test_product_matches_functional_composition(self):
        g = machine_g4()
        A = state_wrapper(g, "a", 2)
        B = state_wrapper(g, "b", 2)
        P = product_initial(A, B)
        for a in range(2):
            for w in cartesian(range(4), repeat=5):
                mid, _ = evaluate_initial(A, a, w)
                b, tail = split_rooted(mid)
                end, _ = evaluate_initial(B, b, tail)
                got, _ = evaluate_initial(P, a, w)
                k = min(len(got), len(end))
                assert got[:k] == end[:k]

    def test_minimize_merges_wrapper(self):
        n = 3
        A = identity_wrapper(n, 2)
        M = minimize_initial(A)
        assert len(M.states) == 2  # the root plus one identity state

    def test_minimize_canonical_names(self):
        M = minimize_initial(identity_wrapper(2, 1))
        assert M.root == "0"
        assert set(M.states) == {"0", "1"}

    def test_initial_equal_across_presentations(self):
        # same map built with a redundant duplicated state
        A = identity_wrapper(2, 1)
        B = InitialTransducer(
            2, 1,
            {0: ((dot(0),), "p")},
            {
                "p": {0: ((0,), "q"), 1: ((1,), "p")},
                "q": {0: ((0,), "p"), 1: ((1,), "q")},
            },
        )
        assert initial_equal(A, B)

    def test_reversing_wrapper_involution(self):
        W = reversing_complement_wrapper(3, 2)
        P = minimize_initial(product_initial(W, W))
        assert initial_equal(P, identity_wrapper(3, 2))

    def test_minimize_strips_incomplete_response(self):
        # root output missing the forced prefix: interior always emits 1 first
        A = InitialTransducer(
            2, 1,
            {0: ((dot(0),), "s")},
            {"s": {0: ((1, 0), "id"), 1: ((1, 1), "id")},
             "id": {0: ((0,), "id"), 1: ((1,), "id")}},
        )
        M = minimize_initial(A)
        out, _ = M.step(M.root, dot(0))
        assert split_rooted(out) == (0, (1,))

    def test_minimize_pulls_forced_dot_upstream(self):
        # both branches of the pending state emit root 1, so the root
        # transition must carry the dot after minimization
        A = InitialTransducer(
            2, 2,
            {0: (EMPTY, "w"), 1: ((dot(0),), "id")},
            {
                "w": {0: ((dot(1), 0), "id"), 1: ((dot(1), 1), "id")},
                "id": {0: ((0,), "id"), 1: ((1,), "id")},
            },
        )
        M = minimize_initial(A)
        out, _ = M.step(M.root, dot(0))
        assert split_rooted(out) == (1, EMPTY)
        assert len(M.states) == 2  # the pending state dissolves into the sink
        assert initial_equal(A, M)

    def test_minimize_idempotent(self):
        from cantortx.machines import machine_g4, realize

        for A in (
            realize(machine_g4(), 3),
            state_wrapper(letter_complement(3), "0", 2),
        ):
            M = minimize_initial(A)
            assert minimize_initial(M) == M

    def test_images_of_delayed_machine(self):
        from cantortx.images import images_initial
        from cantortx.words import RootedClopen

        A = InitialTransducer(
            2, 2,
            {0: (EMPTY, "w"), 1: ((dot(1),), "id")},
            {
                "w": {0: (rooted_word(0, (0,)), "id"), 1: (rooted_word(1, EMPTY), "id")},
                "id": {0: ((0,), "id"), 1: ((1,), "id")},
            },
        )
        img = images_initial(A)
        assert isinstance(img["w"], RootedClopen)
        # branch 0 fills the 0-cone of root 0; branch 1 fills all of root 1
        assert img["w"].parts[0].cones == ((0,),)
        assert img["w"].parts[1].is_whole()
        assert img["id"].is_whole()
        root_img = img[A.root]
        assert root_img.parts[1].is_whole()
        assert not root_img.is_whole()  # the 1-cone of root 0 is never hit
