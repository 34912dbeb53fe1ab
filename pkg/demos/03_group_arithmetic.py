#!/usr/bin/env python3
"""Group arithmetic on core elements: products, inverses, orders, the
rotation-class action, and the two relations that pin down a copy of
Thompson's group F inside the order-compatible elements."""

from cantortx.words import rotation_class_of
from cantortx.machines import machine_T, machine_U, machine_g4
from cantortx.group import (
    GroupElement,
    commutator_word,
    element_order,
    group_product,
    invert_element,
    is_identity,
    orbit_lengths,
    rotation_action,
    verify_relation,
)

g = GroupElement.from_machine(machine_g4())
print("g * g is the identity element:", is_identity(group_product(g, g)))
print("g equals its inverse:", invert_element(g) == g)
print("order of g:", element_order(g, 8))

T = GroupElement.from_machine(machine_T(3))
U = GroupElement.from_machine(machine_U(3))

print("\nrotation-class action of T:")
c = rotation_class_of((1, 2))
for _ in range(4):
    nxt = rotation_action(T, c)
    print(f"  {c} -> {nxt}")
    c = nxt
print("orbit lengths grow without bound:", orbit_lengths(T, rotation_class_of((1, 2)), 6))
print("so T has infinite order:", element_order(T, 16))

print("\nthe two defining relations of F hold for <T, U>:")
p = [("U", -1), ("T", 1)]
gens = {"T": T, "U": U}
for name, q in (
    ("[U^-1 T, T U T^-1]", [("T", 1), ("U", 1), ("T", -1)]),
    ("[U^-1 T, T^2 U T^-2]", [("T", 1), ("T", 1), ("U", 1), ("T", -1), ("T", -1)]),
):
    print(f"  {name} = 1:", verify_relation(gens, commutator_word(p, q)))
