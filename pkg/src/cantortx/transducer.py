"""Finite letter-to-word transducers over {0..n-1}.

A transducer here is total: every (state, letter) pair has a transition and an
output word over the same alphabet.  A machine is *productive* when no
reachable cycle outputs the empty word all the way around, which is exactly
the condition that every infinite input produces an infinite output.  All
behavioural operations (common output prefixes, omega-equivalence, rooted
minimization) assume productivity and check it.
"""

from __future__ import annotations

from .words import (
    EMPTY,
    EvPeriodicWord,
    InvalidInput,
    check_letters,
    gcp,
    subtract_prefix,
)


class DegenerateTransducer(ValueError):
    """A reachable cycle outputs the empty word: some infinite input would
    produce a finite output."""


class DepthExceeded(RuntimeError):
    """A bounded computation did not resolve within its configured bound."""


class Transducer:
    """Immutable-by-convention machine.  `table` maps state -> letter ->
    (output word, destination state).  State names are arbitrary hashables;
    canonical machines use the strings "0", "1", ..."""

    __slots__ = ("n", "states", "_out", "_dest")

    def __init__(self, n, table):
        if n < 2:
            raise InvalidInput("alphabet must have at least 2 letters")
        self.n = n
        self.states = tuple(table)
        if len(set(self.states)) != len(self.states):
            raise InvalidInput("duplicate state names")
        out = {}
        dest = {}
        for q, row in table.items():
            if set(row) != set(range(n)):
                raise InvalidInput(f"state {q!r} must have one transition per letter")
            for i, (w, p) in row.items():
                w = tuple(w)
                check_letters(n, w)
                if p not in table:
                    raise InvalidInput(f"transition {q!r},{i} targets unknown state {p!r}")
                out[(q, i)] = w
                dest[(q, i)] = p
        self._out = out
        self._dest = dest

    def step(self, q, i):
        """One letter: (output word, destination)."""
        try:
            return self._out[(q, i)], self._dest[(q, i)]
        except KeyError:
            raise InvalidInput(f"no transition for state {q!r} on letter {i}") from None

    def output(self, q, i):
        return self._out[(q, i)]

    def dest(self, q, i):
        return self._dest[(q, i)]

    def __eq__(self, other):
        return (
            isinstance(other, Transducer)
            and self.n == other.n
            and set(self.states) == set(other.states)
            and self._out == other._out
            and self._dest == other._dest
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.states)))

    def __repr__(self):
        return f"<Transducer n={self.n} states={len(self.states)}>"

    def rows(self):
        for q in self.states:
            for i in range(self.n):
                yield q, i, self._out[(q, i)], self._dest[(q, i)]


def make_transducer(n, table):
    return Transducer(n, table)


def evaluate(T, q, w):
    """Run the word w from state q: (accumulated output, end state)."""
    check_letters(T.n, w)
    out = []
    for i in w:
        piece, q = T.step(q, i)
        out.extend(piece)
    return tuple(out), q


def check_productive(T, states=None):
    """Raise DegenerateTransducer if some cycle outputs the empty word.

    The empty-output edges form a subgraph; an empty-output cycle exists iff
    that subgraph has a cycle."""
    pool = T.states if states is None else tuple(states)
    colors = dict.fromkeys(pool, 0)  # 0 new, 1 in progress, 2 done
    for start in pool:
        if colors[start]:
            continue
        stack = [(start, 0)]
        colors[start] = 1
        while stack:
            q, i = stack[-1]
            if i == T.n:
                colors[q] = 2
                stack.pop()
                continue
            stack[-1] = (q, i + 1)
            w, p = T.step(q, i)
            if w or p not in colors:
                continue
            if colors[p] == 1:
                raise DegenerateTransducer(
                    f"cycle through state {p!r} outputs the empty word"
                )
            if colors[p] == 0:
                colors[p] = 1
                stack.append((p, 0))


def reachable(T, roots):
    """States reachable from the given roots, BFS order, letters ascending."""
    order = []
    seen = set()
    queue = list(roots)
    for q in queue:
        if q not in seen:
            seen.add(q)
            order.append(q)
    k = 0
    while k < len(order):
        q = order[k]
        k += 1
        for i in range(T.n):
            p = T.dest(q, i)
            if p not in seen:
                seen.add(p)
                order.append(p)
    return order


def restrict(T, states):
    """Sub-transducer on a transition-closed subset of states."""
    states = list(states)
    keep = set(states)
    table = {}
    for q in states:
        row = {}
        for i in range(T.n):
            w, p = T.step(q, i)
            if p not in keep:
                raise InvalidInput(f"state set not closed: {q!r} -> {p!r}")
            row[i] = (w, p)
        table[q] = row
    return Transducer(T.n, table)


def relabel(T, mapping):
    table = {}
    for q in T.states:
        table[mapping[q]] = {
            i: (T.output(q, i), mapping[T.dest(q, i)]) for i in range(T.n)
        }
    return Transducer(T.n, table)


def product(A, B):
    """The composite machine: input runs through A, A's output through B.

    States are pairs (a, b); the behaviour at (a, b) is h_b after h_a."""
    if A.n != B.n:
        raise InvalidInput("product of transducers over different alphabets")
    table = {}
    for a in A.states:
        for b in B.states:
            row = {}
            for i in range(A.n):
                w, a2 = A.step(a, i)
                v, b2 = evaluate(B, b, w)
                row[i] = (v, (a2, b2))
            table[(a, b)] = row
    return Transducer(A.n, table)


def evaluate_periodic(T, q, x):
    """The image of the eventually periodic point x under the state map of q,
    again as an eventually periodic point.

    Runs the preperiod, then pumps the period until the machine state repeats
    at a period boundary."""
    head, s = evaluate(T, q, x.pre)
    seen = {s: 0}
    chunks = []
    states = [s]
    while True:
        piece, s = evaluate(T, s, x.per)
        chunks.append(piece)
        if s in seen:
            start = seen[s]
            break
        seen[s] = len(chunks)
        states.append(s)
    pre = head + sum(chunks[:start], ())
    per = sum(chunks[start:], ())
    if not per:
        raise DegenerateTransducer(
            "state map produces a finite output on an infinite input"
        )
    return EvPeriodicWord(pre, per)


def common_prefixes(T, bound=64, states=None):
    """For each state q, the greatest common prefix of all infinite outputs
    from q (the forced output).

    Computed by downward iteration from genuine reference-output prefixes of
    length `bound`; on stabilization the fixpoint equation pins the value
    exactly, provided every value resolved strictly below the bound.  A value
    reaching the bound is a hard DepthExceeded error, never a truncation.
    """
    pool = T.states if states is None else tuple(states)
    check_productive(T, pool)
    ref = {}
    for q in pool:
        out = []
        s = q
        guard = 0
        while len(out) < bound:
            w, s = T.step(s, 0)
            out.extend(w)
            guard += 1
            if guard > bound * len(pool) + len(pool) + 1:
                raise DegenerateTransducer("letter-0 path stopped producing output")
        ref[q] = tuple(out[:bound])
    g = ref
    maxiter = 2 * bound * len(pool) + len(pool) + 8
    for _ in range(maxiter):
        new = {}
        for q in pool:
            new[q] = gcp(
                [T.output(q, i) + g[T.dest(q, i)] for i in range(T.n)]
            )
        if new == g:
            break
        g = new
    else:
        raise DepthExceeded(
            f"common output prefixes did not stabilize within {maxiter} rounds"
        )
    for q, w in g.items():
        if len(w) >= bound:
            raise DepthExceeded(
                f"forced output at state {q!r} reaches the depth bound {bound}"
            )
    return g


def strip_common_prefixes(T, bound=64):
    """Push every state's forced output upstream: the result has no state of
    incomplete response, and the state map of q changes from h to
    (forced prefix of q)^-1 . h."""
    c = common_prefixes(T, bound)
    table = {}
    for q in T.states:
        row = {}
        for i in range(T.n):
            w, p = T.step(q, i)
            row[i] = (subtract_prefix(c[q], w + c[p]), p)
        table[q] = row
    return Transducer(T.n, table)


def behavior_partition(T, states=None):
    """Coarsest partition of a complete-response machine in which equivalent
    states have equal letter outputs and equivalent successors.  On such a
    machine two states are in one block iff their state maps are equal.

    Returns {state: block index}, block indices deterministic."""
    pool = list(T.states if states is None else states)
    block = {}
    keys = {}
    for q in pool:
        key = tuple(T.output(q, i) for i in range(T.n))
        block[q] = keys.setdefault(key, len(keys))
    while True:
        keys = {}
        new = {}
        for q in pool:
            key = (block[q], tuple(block[T.dest(q, i)] for i in range(T.n)))
            new[q] = keys.setdefault(key, len(keys))
        if new == block:
            return block
        block = new


def omega_equivalent(T, q1, q2, bound=64):
    """True iff the two states induce the same map on infinite words."""
    c = common_prefixes(T, bound)
    if c[q1] != c[q2]:
        return False
    S = strip_common_prefixes(T, bound)
    part = behavior_partition(S)
    return part[q1] == part[q2]


_ROOT = "__root__"


def remove_incomplete_response_rooted(T, root, bound=64):
    """An omega-equivalent rooted machine in which every state carries its
    full forced output on each letter.

    Interior states get their forced prefixes stripped; the root keeps its
    behaviour exactly, so when the root has a nonempty forced output it
    becomes a fresh entry state that is never re-entered."""
    order = reachable(T, [root])
    R = restrict(T, order)
    c = common_prefixes(R, bound)
    table = {}
    for q in order:
        row = {}
        for i in range(R.n):
            w, p = R.step(q, i)
            row[i] = (subtract_prefix(c[q], w + c[p]), p)
        table[q] = row
    if c[root] == EMPTY:
        return Transducer(R.n, table), root
    entry = (_ROOT, root)
    table[entry] = {
        i: (R.output(root, i) + c[R.dest(root, i)], R.dest(root, i))
        for i in range(R.n)
    }
    return Transducer(R.n, table), entry


def minimize_rooted(T, root, bound=64):
    """The canonical minimal machine of the rooted behaviour h_root:
    accessible, complete response, no omega-equivalent pair, states renamed
    "0", "1", ... in breadth-first order from the root with letters ascending.
    Returns (machine, root name); two rooted machines with equal behaviour
    produce structurally identical results."""
    S, entry = remove_incomplete_response_rooted(T, root, bound)
    part = behavior_partition(S)
    rep = {}
    for q in S.states:
        rep.setdefault(part[q], q)
    table = {}
    for b, q in rep.items():
        table[b] = {
            i: (S.output(q, i), part[S.dest(q, i)]) for i in range(S.n)
        }
    merged = Transducer(S.n, table)
    order = reachable(merged, [part[entry]])
    merged = restrict(merged, order)
    names = {b: str(k) for k, b in enumerate(order)}
    return relabel(merged, names), "0"


def rooted_equal(A, roota, B, rootb, bound=64):
    """Behavioural equality of two rooted machines, via canonical forms."""
    return minimize_rooted(A, roota, bound) == minimize_rooted(B, rootb, bound)
