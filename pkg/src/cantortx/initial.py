"""Initial transducers over the disjoint union of r copies of Cantor space.

Inputs are points .a x1 x2 ... : a dotted root letter read once at the initial
state, then ordinary letters.  Outputs are "rooted words": a tuple that may
start with a root marker.  The structural rules are enforced at construction:
until the output root is emitted the machine outputs nothing or a rooted word
(the "pending" region), after it only plain letters; the pending region has no
cycles; and no reachable cycle outputs the empty word.
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
from .transducer import DegenerateTransducer, DepthExceeded


def dot(a):
    """Root marker for root letter a, usable inside word tuples."""
    return ("^", a)


def is_dot(sym):
    return isinstance(sym, tuple) and len(sym) == 2 and sym[0] == "^"


def rooted_word(root, tail):
    """Word .root tail as a marker tuple; root may be None for a plain word."""
    tail = tuple(tail)
    if root is None:
        return tail
    return (dot(root),) + tail


def split_rooted(w):
    """(root or None, plain tail) of a marker tuple."""
    if w and is_dot(w[0]):
        return w[0][1], w[1:]
    return None, w


def check_oword(n, r, w):
    root, tail = split_rooted(w)
    if root is not None and not (0 <= root < r):
        raise InvalidInput(f"root {root} out of range for {r} roots")
    if any(is_dot(sym) for sym in tail):
        raise InvalidInput("root marker not at the start of a word")
    check_letters(n, tail)


PENDING, DONE = "pending", "done"


class InitialTransducer:
    """A machine inducing a continuous map of the r-rooted n-ary Cantor space.

    `root_table` maps root letter a -> (output rooted word, state);
    `table` maps state -> letter -> (output rooted word, state).
    Only states reachable from the initial state are kept."""

    __slots__ = ("n", "r", "root", "states", "_out", "_dest", "region")

    def __init__(self, n, r, root_table, table, root="q0"):
        if n < 2 or r < 1:
            raise InvalidInput("need n >= 2 and r >= 1")
        self.n = n
        self.r = r
        self.root = root
        if set(root_table) != set(range(r)):
            raise InvalidInput("initial state needs exactly one transition per root letter")
        if root in table:
            raise InvalidInput("the initial state reads only root letters")
        out = {}
        dest = {}
        for a, (w, p) in root_table.items():
            w = tuple(w)
            check_oword(n, r, w)
            out[(root, dot(a))] = w
            dest[(root, dot(a))] = p
        for q, row in table.items():
            if set(row) != set(range(n)):
                raise InvalidInput(f"state {q!r} must have one transition per letter")
            for i, (w, p) in row.items():
                w = tuple(w)
                check_oword(n, r, w)
                out[(q, i)] = w
                dest[(q, i)] = p
        # accessible part only
        order = [root]
        seen = {root}
        k = 0
        while k < len(order):
            q = order[k]
            k += 1
            for sym in self._symbols_at(q):
                p = dest[(q, sym)]
                if p == root:
                    raise InvalidInput("the initial state cannot be re-entered")
                if p not in table:
                    raise InvalidInput(f"transition targets unknown state {p!r}")
                if p not in seen:
                    seen.add(p)
                    order.append(p)
        self.states = tuple(order)
        self._out = {k: v for k, v in out.items() if k[0] in seen}
        self._dest = {k: v for k, v in dest.items() if k[0] in seen}
        self.region = self._classify()
        self._check_structure()

    def _symbols_at(self, q):
        if q == self.root:
            return [dot(a) for a in range(self.r)]
        return list(range(self.n))

    def symbols_at(self, q):
        return self._symbols_at(q)

    def step(self, q, sym):
        try:
            return self._out[(q, sym)], self._dest[(q, sym)]
        except KeyError:
            raise InvalidInput(f"no transition for state {q!r} on {sym!r}") from None

    def output(self, q, sym):
        return self._out[(q, sym)]

    def dest(self, q, sym):
        return self._dest[(q, sym)]

    def _classify(self):
        region = {self.root: PENDING}
        changed = True
        while changed:
            changed = False
            for (q, sym), w in self._out.items():
                if q not in region:
                    continue
                p = self._dest[(q, sym)]
                root_emitted, tail = split_rooted(w)
                if region[q] is PENDING:
                    if root_emitted is None and tail:
                        raise InvalidInput(
                            f"state {q!r} outputs letters before the output root"
                        )
                    mark = DONE if root_emitted is not None else PENDING
                else:
                    if root_emitted is not None:
                        raise InvalidInput(f"state {q!r} emits a second output root")
                    mark = DONE
                if region.get(p, mark) != mark:
                    raise InvalidInput(
                        f"state {p!r} is reached both before and after the output root"
                    )
                if p not in region:
                    region[p] = mark
                    changed = True
        return region

    def _check_structure(self):
        # no cycles among pending states: the output root must always be emitted
        pend = [q for q in self.states if self.region[q] is PENDING]
        colors = dict.fromkeys(pend, 0)
        for start in pend:
            if colors[start]:
                continue
            stack = [(start, iter(self._symbols_at(start)))]
            colors[start] = 1
            while stack:
                q, it = stack[-1]
                sym = next(it, None)
                if sym is None:
                    colors[q] = 2
                    stack.pop()
                    continue
                p = self._dest[(q, sym)]
                if p not in colors:
                    continue
                if colors[p] == 1:
                    raise InvalidInput("cycle that never emits the output root")
                if colors[p] == 0:
                    colors[p] = 1
                    stack.append((p, iter(self._symbols_at(p))))
        # no empty-output cycle (pending cycles are already excluded)
        colors = dict.fromkeys(self.states, 0)
        for start in self.states:
            if colors[start]:
                continue
            stack = [(start, iter(self._symbols_at(start)))]
            colors[start] = 1
            while stack:
                q, it = stack[-1]
                sym = next(it, None)
                if sym is None:
                    colors[q] = 2
                    stack.pop()
                    continue
                if self._out[(q, sym)]:
                    continue
                p = self._dest[(q, sym)]
                if colors[p] == 1:
                    raise DegenerateTransducer(
                        f"cycle through {p!r} outputs the empty word"
                    )
                if colors[p] == 0:
                    colors[p] = 1
                    stack.append((p, iter(self._symbols_at(p))))

    def __eq__(self, other):
        return (
            isinstance(other, InitialTransducer)
            and (self.n, self.r, self.root) == (other.n, other.r, other.root)
            and set(self.states) == set(other.states)
            and self._out == other._out
            and self._dest == other._dest
        )

    def __hash__(self):
        return hash((self.n, self.r, len(self.states)))

    def __repr__(self):
        return f"<InitialTransducer n={self.n} r={self.r} states={len(self.states)}>"


def evaluate_initial(A, a, w):
    """Run the dotted input .a w from the initial state.
    Returns (output rooted word, end state)."""
    if not (0 <= a < A.r):
        raise InvalidInput(f"root letter {a} out of range")
    out, q = A.step(A.root, dot(a))
    out = list(out)
    for i in w:
        piece, q = A.step(q, i)
        out.extend(piece)
    return tuple(out), q


def evaluate_periodic_initial(A, a, x):
    """Image of the point .a x, x eventually periodic: (output root, point)."""
    head, q = evaluate_initial(A, a, x.pre)
    seen = {q: 0}
    chunks = []
    while True:
        piece, q = _run_letters(A, q, x.per)
        chunks.append(piece)
        if q in seen:
            start = seen[q]
            break
        seen[q] = len(chunks)
    pre = head + sum(chunks[:start], ())
    per = sum(chunks[start:], ())
    root, tail = split_rooted(pre)
    if root is None or not per:
        raise DegenerateTransducer("initial machine produced a degenerate output")
    return root, EvPeriodicWord(tail, per)


def _run_letters(A, q, w):
    out = []
    for i in w:
        piece, q = A.step(q, i)
        out.extend(piece)
    return tuple(out), q


def _feed(B, q, w):
    """Push a rooted word through B from state q (the root marker, if any,
    must arrive while B still sits at its initial state)."""
    out = []
    for sym in w:
        piece, q = B.step(q, sym)
        out.extend(piece)
    return tuple(out), q


def product_initial(A, B):
    """Composite machine on C_{n,r}: input through A, then through B."""
    if A.n != B.n or A.r != B.r:
        raise InvalidInput("initial product needs matching n and r")
    root = (A.root, B.root)
    root_table = {}
    table = {}
    queue = [root]
    seen = {root}
    while queue:
        qa, qb = queue.pop()
        syms = [dot(a) for a in range(A.r)] if qa == A.root else list(range(A.n))
        row = {}
        for sym in syms:
            w, qa2 = A.step(qa, sym)
            v, qb2 = _feed(B, qb, w)
            state = (qa2, qb2)
            key = sym[1] if is_dot(sym) else sym
            row[key] = (v, state)
            if state not in seen:
                seen.add(state)
                queue.append(state)
        if qa == A.root:
            root_table = row
        else:
            table[(qa, qb)] = row
    return InitialTransducer(A.n, A.r, root_table, table, root=root)


def _common_prefixes_initial(A, bound=64):
    """Forced outputs (as rooted words) of every non-initial state."""
    pool = [q for q in A.states if q != A.root]
    ref = {}
    for q in pool:
        out = []
        s = q
        guard = 0
        while len(out) < bound:
            w, s = A.step(s, 0)
            out.extend(w)
            guard += 1
            if guard > bound * len(pool) + len(pool) + 1:
                raise DegenerateTransducer("letter-0 path stopped producing output")
        ref[q] = tuple(out[:bound])
    g = ref
    maxiter = 2 * bound * len(pool) + len(pool) + 8
    for _ in range(maxiter):
        new = {
            q: gcp([A.output(q, i) + g[A.dest(q, i)] for i in range(A.n)])
            for q in pool
        }
        if new == g:
            break
        g = new
    else:
        raise DepthExceeded("forced outputs did not stabilize")
    for q, w in g.items():
        if len(w) >= bound:
            raise DepthExceeded(f"forced output at state {q!r} reaches the bound {bound}")
    return g


def minimize_initial(A, bound=64):
    """The canonical minimal machine inducing the same map of C_{n,r}:
    accessible, complete response, no pair of equivalent non-initial states,
    states renamed "0" (initial), "1", ... in breadth-first order."""
    c = _common_prefixes_initial(A, bound)
    c[A.root] = EMPTY  # the initial state keeps its behaviour
    stripped_out = {}
    for q in A.states:
        for sym in A.symbols_at(q):
            w, p = A.step(q, sym)
            stripped_out[(q, sym)] = subtract_prefix(c[q], w + c[p])
    # behaviour partition of non-initial states
    pool = [q for q in A.states if q != A.root]
    block = {}
    keys = {}
    for q in pool:
        key = tuple(stripped_out[(q, i)] for i in range(A.n))
        block[q] = keys.setdefault(key, len(keys))
    while True:
        keys = {}
        new = {}
        for q in pool:
            key = (block[q], tuple(block[A.dest(q, i)] for i in range(A.n)))
            new[q] = keys.setdefault(key, len(keys))
        if new == block:
            break
        block = new
    rep = {}
    for q in pool:
        rep.setdefault(block[q], q)
    root_table = {
        a: (stripped_out[(A.root, dot(a))], ("b", block[A.dest(A.root, dot(a))]))
        for a in range(A.r)
    }
    table = {}
    for b, q in rep.items():
        table[("b", b)] = {
            i: (stripped_out[(q, i)], ("b", block[A.dest(q, i)]))
            for i in range(A.n)
        }
    M = InitialTransducer(A.n, A.r, root_table, table, root=("b", "root"))
    # breadth-first renaming
    names = {M.root: "0"}
    order = [M.root]
    k = 0
    while k < len(order):
        q = order[k]
        k += 1
        for sym in M.symbols_at(q):
            p = M.dest(q, sym)
            if p not in names:
                names[p] = str(len(names))
                order.append(p)
    new_root_table = {
        a: (M.output(M.root, dot(a)), names[M.dest(M.root, dot(a))])
        for a in range(M.r)
    }
    new_table = {}
    for q in order[1:]:
        new_table[names[q]] = {
            i: (M.output(q, i), names[M.dest(q, i)]) for i in range(M.n)
        }
    return InitialTransducer(M.n, M.r, new_root_table, new_table, root="0")


def initial_equal(A, B, bound=64):
    return minimize_initial(A, bound) == minimize_initial(B, bound)


def underlying_interior(A):
    """The non-initial part of the machine as a plain total transducer over
    X_n (every non-initial state reads plain letters).  Outputs keep their
    root markers only in the pending region; for synchronization the outputs
    are irrelevant, and core states are always past the output root."""
    from .transducer import Transducer

    table = {}
    for q in A.states:
        if q == A.root:
            continue
        table[q] = {i: (_strip_marker(A.output(q, i)), A.dest(q, i)) for i in range(A.n)}
    return Transducer(A.n, table)


def _strip_marker(w):
    root, tail = split_rooted(w)
    return tail
