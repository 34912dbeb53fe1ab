"""Synchronization: the collapsing procedure, minimal synchronizing level,
and core extraction.

A machine is synchronizing when some length k exists with the property that
the end state after reading any length-k word is independent of the start
state.  Equivalently the underlying automaton collapses to a single state
under repeated merging of states with identical transition rows.
"""

from __future__ import annotations

from .transducer import Transducer, restrict
from .initial import InitialTransducer, underlying_interior


class NotSynchronizing(ValueError):
    pass


class Automaton:
    """Transition-only view: states plus a row of destinations per state."""

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        self.n = n
        self.rows = dict(rows)  # state -> tuple of destinations

    def __eq__(self, other):
        return isinstance(other, Automaton) and (self.n, self.rows) == (other.n, other.rows)

    def __repr__(self):
        return f"<Automaton n={self.n} states={len(self.rows)}>"

    @property
    def states(self):
        return tuple(self.rows)


def automaton_of(T):
    if isinstance(T, InitialTransducer):
        T = underlying_interior(T)
    return Automaton(T.n, {q: tuple(T.dest(q, i) for i in range(T.n)) for q in T.states})


def collapse(A):
    """One collapsing step: merge states whose transition rows agree."""
    if isinstance(A, (Transducer, InitialTransducer)):
        A = automaton_of(A)
    cls = {}
    group = {}
    for q, row in A.rows.items():
        group[q] = cls.setdefault(row, len(cls))
    rows = {}
    for q, row in A.rows.items():
        rows.setdefault(group[q], tuple(group[p] for p in row))
    return Automaton(A.n, rows)


def collapse_fixpoint(A):
    if isinstance(A, (Transducer, InitialTransducer)):
        A = automaton_of(A)
    while True:
        B = collapse(A)
        if len(B.rows) == len(A.rows):
            return A
        A = B


def is_synchronizing(T):
    return len(collapse_fixpoint(T).rows) == 1


def minimal_sync_level(T):
    """Least k such that every length-k word forces the end state.

    Computed by iterating the family of subset images of the full state set
    under single letters; the machine must be synchronizing."""
    if not is_synchronizing(T):
        raise NotSynchronizing("machine is not synchronizing")
    A = automaton_of(T)
    family = {frozenset(A.states)}
    k = 0
    while any(len(S) > 1 for S in family):
        family = {
            frozenset(A.rows[q][i] for q in S)
            for S in family
            for i in range(A.n)
        }
        k += 1
    return k


def forced_state(T, word):
    """The state forced by `word`, which must be at least the sync level long."""
    A = automaton_of(T)
    S = set(A.states)
    for i in word:
        S = {A.rows[q][i] for q in S}
    if len(S) != 1:
        raise NotSynchronizing("word does not force a unique state")
    return next(iter(S))


def core_states(T):
    """States forced by words of the minimal synchronizing length."""
    if not is_synchronizing(T):
        raise NotSynchronizing("machine is not synchronizing")
    A = automaton_of(T)
    family = {frozenset(A.states)}
    while any(len(S) > 1 for S in family):
        family = {
            frozenset(A.rows[q][i] for q in S)
            for S in family
            for i in range(A.n)
        }
    return {next(iter(S)) for S in family}


def core(T):
    """The sub-transducer on the forced states; strongly connected and equal
    to its own core.  For an initial machine the forced states are taken
    among the states reachable from the initial state (the interior)."""
    if isinstance(T, InitialTransducer):
        M = underlying_interior(T)
        return restrict(M, sorted(core_states(M), key=str))
    return restrict(T, sorted(core_states(T), key=str))
