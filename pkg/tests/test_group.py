import random
from itertools import product as cartesian

import pytest

from cantortx.words import InvalidInput, rotation_class_of
from cantortx.machines import (
    identity_transducer,
    letter_complement,
    machine_T,
    machine_U,
    machine_g4,
    oplus,
    swap_transducer,
)
from cantortx.group import (
    GroupElement,
    ZeroFixing,
    canonical_core,
    commutator_word,
    element_order,
    equal,
    evaluate_group_word,
    group_product,
    identity_element,
    invert_element,
    is_identity,
    orbit_lengths,
    rotation_action,
    verify_relation,
    zero_fixing_check,
)


def pool(n):
    base = [identity_transducer(n), letter_complement(n)]
    if n == 4:
        base.append(machine_g4())
    if n >= 3:
        base += [machine_T(n), machine_U(n)]
    return [GroupElement.from_machine(M) for M in base]


class TestProductAndEquality:
    def test_g_squared(self):
        g = GroupElement.from_machine(machine_g4())
        assert is_identity(group_product(g, g))

    def test_identity_laws(self):
        for h in pool(3):
            e = identity_element(3)
            assert group_product(e, h) == h
            assert group_product(h, e) == h

    def test_inverse_laws(self):
        for h in pool(4):
            assert is_identity(group_product(h, invert_element(h)))
            assert is_identity(group_product(invert_element(h), h))

    def test_sampled_associativity(self):
        elems = pool(3)
        rng = random.Random(9)
        for _ in range(6):
            a, b, c = (rng.choice(elems) for _ in range(3))
            assert group_product(group_product(a, b), c) == group_product(
                a, group_product(b, c)
            )

    def test_equal_is_consistent_with_product(self):
        g = GroupElement.from_machine(machine_g4())
        assert equal(g, g)
        assert not equal(g, identity_element(4))
        assert equal(group_product(g, g), identity_element(4))
        # slow path agrees with the canonical fast path
        T = GroupElement.from_machine(machine_T(3))
        assert not equal(T, invert_element(T))

    def test_alphabet_mismatch(self):
        with pytest.raises(InvalidInput):
            group_product(identity_element(2), identity_element(3))


class TestOrder:
    def test_examples(self):
        g = GroupElement.from_machine(machine_g4())
        assert element_order(g, 8).value == 2
        assert element_order(identity_element(3), 8).value == 1
        res = element_order(GroupElement.from_machine(machine_T(3)), 16)
        assert not res.finite
        assert len(res.growth) >= 2

    def test_state_cap_stops_growth(self):
        T = GroupElement.from_machine(machine_T(3))
        res = element_order(T, 10**6, state_cap=8)
        assert not res.finite


class TestRotationAction:
    def test_T_pushes_the_mixed_class(self):
        T = GroupElement.from_machine(machine_T(3))
        assert rotation_action(T, rotation_class_of((1, 2))) == rotation_class_of(
            (1, 2, 2)
        )

    def test_identity_fixes_everything(self):
        I = identity_element(3)
        for w in [(0,), (1, 2), (0, 1, 2)]:
            c = rotation_class_of(w)
            assert rotation_action(I, c) == c

    def test_g_swaps_middle_letters(self):
        g = GroupElement.from_machine(machine_g4())
        one, two = rotation_class_of((1,)), rotation_class_of((2,))
        assert rotation_action(g, one) == two
        assert rotation_action(g, two) == one

    def test_orbit_lengths(self):
        T = GroupElement.from_machine(machine_T(3))
        assert orbit_lengths(T, rotation_class_of((1, 2)), 4) == [2, 3, 4, 5, 6]
        g = GroupElement.from_machine(machine_g4())
        assert orbit_lengths(g, rotation_class_of((1,)), 4) == [1, 1, 1, 1, 1]
        I = identity_element(3)
        assert orbit_lengths(I, rotation_class_of((0, 1)), 3) == [2, 2, 2, 2]

    def test_action_composes(self):
        # input flows through the left factor first
        T = GroupElement.from_machine(machine_T(3))
        U = GroupElement.from_machine(machine_U(3))
        TU = group_product(T, U)
        for w in [(0,), (1,), (1, 2), (0, 1, 2), (2, 2, 1)]:
            c = rotation_class_of(w)
            assert rotation_action(TU, c) == rotation_action(U, rotation_action(T, c))

    def test_action_inverts(self):
        T = GroupElement.from_machine(machine_T(3))
        Ti = invert_element(T)
        for k in range(1, 5):
            for w in cartesian(range(3), repeat=k):
                c = rotation_class_of(w)
                assert rotation_action(Ti, rotation_action(T, c)) == c

    def test_well_defined_on_rotations(self):
        T = GroupElement.from_machine(machine_T(4))
        w = (0, 1, 3)
        expect = rotation_action(T, rotation_class_of(w))
        for k in range(3):
            rot = w[k:] + w[:k]
            assert rotation_action(T, rotation_class_of(rot)) == expect


class TestWordsAndRelations:
    def test_f_relations(self):
        gens = {
            "T": GroupElement.from_machine(machine_T(3)),
            "U": GroupElement.from_machine(machine_U(3)),
        }
        p = [("U", -1), ("T", 1)]
        q1 = [("T", 1), ("U", 1), ("T", -1)]
        q2 = [("T", 1), ("T", 1), ("U", 1), ("T", -1), ("T", -1)]
        assert verify_relation(gens, commutator_word(p, q1))
        assert verify_relation(gens, commutator_word(p, q2))

    def test_trivial_relation(self):
        gens = {"T": GroupElement.from_machine(machine_T(3))}
        assert verify_relation(gens, [("T", 1), ("T", -1)])

    def test_unknown_generator(self):
        with pytest.raises(InvalidInput):
            evaluate_group_word({}, [("X", 1)])


class TestZeroFixing:
    def test_examples(self):
        g = GroupElement.from_machine(machine_g4())
        assert zero_fixing_check(g) is ZeroFixing.FIXES_BOTH
        piR = GroupElement.from_machine(letter_complement(4))
        assert zero_fixing_check(piR) is ZeroFixing.SWAPS
        for n in (3, 4):
            T = GroupElement.from_machine(machine_T(n))
            assert zero_fixing_check(T) is ZeroFixing.FIXES_BOTH

    def test_agrees_with_orientation(self):
        from cantortx.images import Orientation

        for h in pool(4):
            if h.orientation is Orientation.PRESERVING:
                assert zero_fixing_check(h) is ZeroFixing.FIXES_BOTH
            elif h.orientation is Orientation.REVERSING:
                assert zero_fixing_check(h) is ZeroFixing.SWAPS

    def test_unordered_element_rejected(self):
        M = GroupElement.from_machine(oplus(2, swap_transducer(), 4))
        with pytest.raises(InvalidInput):
            zero_fixing_check(M)
