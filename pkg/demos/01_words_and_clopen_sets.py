#!/usr/bin/env python3
"""Value vocabulary tour: finite words, eventually periodic points, rotation
classes, and clopen sets in canonical antichain form."""

from cantortx.words import (
    EvPeriodicWord,
    canonicalize_clopen,
    cone,
    lex_compare_evp,
    rotation_class_of,
)

print("== canonical antichains ==")
print("n=2, {00, 01, 1}  ->", canonicalize_clopen(2, [(0, 0), (0, 1), (1,)]))
print("n=4, {0, 1}       ->", canonicalize_clopen(4, [(0,), (1,)]))
print("n=3, {0, 00, 12}  ->", canonicalize_clopen(3, [(0,), (0, 0), (1, 2)]))

print("\n== exact boolean algebra ==")
half = canonicalize_clopen(4, [(0,), (1,)])
other = canonicalize_clopen(4, [(2,), (3,)])
print("union:       ", half.union(other))
print("intersection:", half.intersection(other))
print("complement of {01} over n=2:", cone(2, (0, 1)).complement())

print("\n== eventually periodic points ==")
x = EvPeriodicWord((0,), (1, 0))  # 0(10)^w, canonicalized to (01)^w
y = EvPeriodicWord((), (0, 1))
print(f"0.(10)^w canonical form: {x}  equals (01)^w: {x == y}")
cmp = lex_compare_evp(EvPeriodicWord((2,), (3,)), EvPeriodicWord((), (2, 3)))
print("2.3^w vs (23)^w:", {-1: "less", 0: "equal", 1: "greater"}[cmp])

print("\n== rotation classes ==")
for w in [(1, 0), (2,), (1, 2, 0)]:
    print(f"class of {w}: {rotation_class_of(w)}")
