"""Group arithmetic on core elements: canonical forms, products, inverses,
identity and equality tests, orders, the rotation-class action, and word or
relation checking."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .words import InvalidInput, rotation_class_of
from .transducer import (
    Transducer,
    behavior_partition,
    evaluate,
    minimize_rooted,
    product,
    relabel,
    strip_common_prefixes,
)
from .synchronize import core
from .images import Orientation, orientation
from .invert import inverse_closure
from .signature import signature_report, validation_failure


def canonical_core(T):
    """Canonical machine of a synchronizing T's long-run behaviour: take the
    core, push forced output prefixes upstream, merge equivalent states, then
    relabel by the breadth-first order minimizing the serialized table over
    all start states (core machines have no distinguished root)."""
    C = core(T)
    S = strip_common_prefixes(C)
    part = behavior_partition(S)
    rep = {}
    for q in S.states:
        rep.setdefault(part[q], q)
    table = {
        b: {i: (S.output(q, i), part[S.dest(q, i)]) for i in range(S.n)}
        for b, q in rep.items()
    }
    M = Transducer(S.n, table)
    best = None
    for start in M.states:
        names = {start: 0}
        order = [start]
        k = 0
        while k < len(order):
            q = order[k]
            k += 1
            for i in range(M.n):
                p = M.dest(q, i)
                if p not in names:
                    names[p] = len(names)
                    order.append(p)
        if len(order) != len(M.states):
            continue  # not strongly connected from here; cores always are
        key = tuple(
            (M.output(q, i), names[M.dest(q, i)])
            for q in order
            for i in range(M.n)
        )
        if best is None or key < best[0]:
            best = (key, names)
    return relabel(M, {q: str(v) for q, v in best[1].items()})


class GroupElement:
    """A core element: canonical minimal core bi-synchronizing machine with
    injective clopen-image states.  Signature data and orientation are
    computed once and cached."""

    __slots__ = ("machine", "_sig", "_orient")

    def __init__(self, machine):
        self.machine = machine
        self._sig = None
        self._orient = None

    @classmethod
    def from_machine(cls, T, validate=True):
        M = canonical_core(T)
        if validate:
            fail = validation_failure(M)
            if fail is not None:
                raise InvalidInput(f"not a valid core element: {fail}")
        return cls(M)

    @property
    def n(self):
        return self.machine.n

    @property
    def signature(self):
        if self._sig is None:
            self._sig = signature_report(self.machine)
        return self._sig

    @property
    def rsig(self):
        return self.signature.rsig

    @property
    def orientation(self):
        if self._orient is None:
            self._orient = orientation(self.machine)
        return self._orient

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.machine == other.machine

    def __hash__(self):
        return hash((self.n, len(self.machine.states)))

    def __repr__(self):
        return f"<GroupElement n={self.n} states={len(self.machine.states)}>"


def identity_element(n):
    from .machines import identity_transducer

    return GroupElement.from_machine(identity_transducer(n))


def group_product(g, h):
    """g then h: root the product machine at a pair of states, minimize the
    rooted behaviour, and take the core.  The result is independent of the
    chosen roots."""
    if g.n != h.n:
        raise InvalidInput("product of elements over different alphabets")
    P = product(g.machine, h.machine)
    root = (g.machine.states[0], h.machine.states[0])
    M, entry = minimize_rooted(P, root)
    result = GroupElement.from_machine(M, validate=False)
    fail = validation_failure(result.machine)
    if fail is not None:
        raise RuntimeError(f"product left the group, inputs were invalid: {fail}")
    return result


def invert_element(g, root=None):
    """The inverse element, via the inverse closure rooted at any state."""
    fail = validation_failure(g.machine)
    if fail is not None:
        raise InvalidInput(f"not a valid core element: {fail}")
    closure = inverse_closure(g.machine, root)
    return GroupElement.from_machine(closure)


def is_identity(g):
    M = g.machine
    return len(M.states) == 1 and all(
        M.output(M.states[0], i) == (i,) for i in range(M.n)
    )


def equal(g, h):
    """Canonical machines agree, with the product-with-inverse identity test
    as the defining (slow) criterion."""
    if g.machine == h.machine:
        return True
    return is_identity(group_product(g, invert_element(h)))


@dataclass
class OrderResult:
    finite: bool
    value: int | None
    growth: tuple

    def __repr__(self):
        return f"Finite({self.value})" if self.finite else f"ExceedsBound{self.growth}"


def element_order(g, bound, state_cap=512):
    """Iterate powers until the identity, the iteration bound, or the state
    cap; an ExceedsBound result carries the state-count growth sequence."""
    acc = g
    growth = [len(g.machine.states)]
    k = 1
    while k <= bound:
        if is_identity(acc):
            return OrderResult(True, k, tuple(growth))
        if len(acc.machine.states) > state_cap:
            return OrderResult(False, None, tuple(growth))
        acc = group_product(acc, g)
        growth.append(len(acc.machine.states))
        k += 1
    return OrderResult(False, None, tuple(growth))


def loop_state(T, w):
    """The unique state q with the w-cycle q -> q; uniqueness holds for valid
    core elements, and failure signals an invalid input."""
    hits = [q for q in T.states if evaluate(T, q, w)[1] == q]
    if len(hits) != 1:
        raise RuntimeError(
            f"expected exactly one loop state for {w}, found {len(hits)}"
        )
    return hits[0]


def rotation_action(g, c):
    """The permutation induced on rotation classes: read the representative
    around its unique loop state and take the class of the output."""
    w = c.rep
    q = loop_state(g.machine, w)
    out, _ = evaluate(g.machine, q, w)
    if not out:
        raise RuntimeError("loop output is empty; machine is degenerate")
    return rotation_class_of(out)


def orbit_lengths(g, c, steps):
    """Representative lengths along the orbit of c, including the start;
    strictly growing lengths certify infinite order."""
    out = [len(c)]
    for _ in range(steps):
        c = rotation_action(g, c)
        out.append(len(c))
    return out


def evaluate_group_word(generators, word):
    """Left-to-right product of (name, +-1) factors."""
    if not word:
        raise InvalidInput("empty group word; use the identity element")
    acc = None
    for name, exp in word:
        if name not in generators:
            raise InvalidInput(f"unknown generator {name!r}")
        g = generators[name]
        if exp == -1:
            g = invert_element(g)
        elif exp != 1:
            raise InvalidInput("exponents must be +1 or -1")
        acc = g if acc is None else group_product(acc, g)
    return acc


def verify_relation(generators, word):
    return is_identity(evaluate_group_word(generators, word))


def inverse_word(word):
    return [(name, -exp) for name, exp in reversed(word)]


def commutator_word(p, q):
    return inverse_word(p) + inverse_word(q) + list(p) + list(q)


class ZeroFixing(Enum):
    FIXES_BOTH = "fixes-both"
    SWAPS = "swaps"


def zero_fixing_check(g):
    """Orientation-preserving elements fix the rotation classes of 0 and n-1;
    reversing elements swap them."""
    if g.orientation is Orientation.NEITHER:
        raise InvalidInput("element neither preserves nor reverses the order")
    n = g.n
    lo, hi = rotation_class_of((0,)), rotation_class_of((n - 1,))
    a, b = rotation_action(g, lo), rotation_action(g, hi)
    if a == lo and b == hi:
        return ZeroFixing.FIXES_BOTH
    if a == hi and b == lo:
        return ZeroFixing.SWAPS
    raise RuntimeError("boundary classes moved to interior classes")
