"""Words over {0..n-1}, eventually periodic infinite words, rotation classes,
and clopen subsets of n-ary Cantor space kept in canonical antichain form.

A finite word is a plain tuple of ints.  The n-ary Cantor space is the set of
infinite words; a cone U_w is the set of infinite words with prefix w.  A
clopen set is a finite union of cones and is stored as the unique antichain of
maximal cones it contains.
"""

from __future__ import annotations

import math
from itertools import product as cartesian

Word = tuple  # tuple of ints in range(n)

EMPTY: Word = ()


class InvalidInput(ValueError):
    """Raised when a value violates a documented precondition."""


def check_letters(n, w):
    for a in w:
        if not (0 <= a < n):
            raise InvalidInput(f"letter {a} out of range for alphabet of size {n}")


def is_prefix(u, v):
    """True if u is a (non-strict) prefix of v."""
    return len(u) <= len(v) and v[: len(u)] == u


class SubtractionError(RuntimeError):
    """Internal invariant violation: subtraction of a non-prefix."""


def subtract_prefix(u, v):
    """v - u: the remainder of v after its prefix u.  Hard error otherwise;
    callers rely on invariants that make this impossible on valid machines."""
    if not is_prefix(u, v):
        raise SubtractionError(f"word subtraction of a non-prefix: {u!r} from {v!r}")
    return v[len(u):]


def gcp(words):
    """Greatest common prefix of a nonempty collection of tuples."""
    it = iter(words)
    out = next(it)
    for w in it:
        k = 0
        top = min(len(out), len(w))
        while k < top and out[k] == w[k]:
            k += 1
        out = out[:k]
        if not out:
            break
    return out


# --- serialization: letters as comma-separated decimals, `e` for the empty word,
# --- dotted roots as `.2`, eventually periodic words as `u|v`.

def format_word(w):
    if not w:
        return "e"
    return ",".join(str(a) for a in w)


def parse_word(text):
    text = text.strip()
    if text == "e" or text == "":
        return EMPTY
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise InvalidInput(f"malformed word {text!r}") from None


def format_dotted(root, w):
    if w:
        return f".{root}," + format_word(w)
    return f".{root}"


def parse_dotted(text):
    """Parse `.a` or `.a,x,y,...` into (root, tail)."""
    text = text.strip()
    if not text.startswith("."):
        raise InvalidInput(f"dotted word must start with '.': {text!r}")
    head, _, rest = text[1:].partition(",")
    try:
        root = int(head)
    except ValueError:
        raise InvalidInput(f"malformed dotted word {text!r}") from None
    return root, parse_word(rest) if rest else EMPTY


def _primitive(p):
    # shortest word whose power equals p
    L = len(p)
    for d in range(1, L):
        if L % d == 0 and p == p[:d] * (L // d):
            return p[:d]
    return p


class EvPeriodicWord:
    """An eventually periodic infinite word pre . per^omega in canonical form:
    the period is primitive and the preperiod is as short as possible, so
    equality of the underlying infinite words is structural equality."""

    __slots__ = ("pre", "per")

    def __init__(self, pre, per):
        pre, per = tuple(pre), tuple(per)
        if not per:
            raise InvalidInput("period of an eventually periodic word must be nonempty")
        per = _primitive(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        self.pre = pre
        self.per = per

    def __eq__(self, other):
        return (
            isinstance(other, EvPeriodicWord)
            and self.pre == other.pre
            and self.per == other.per
        )

    def __hash__(self):
        return hash((self.pre, self.per))

    def __repr__(self):
        return f"EvPeriodicWord({self.pre!r}, {self.per!r})"

    def __str__(self):
        return f"{format_word(self.pre)}|{format_word(self.per)}"

    def letter(self, i):
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, k):
        return tuple(self.letter(i) for i in range(k))

    def with_prefix(self, w):
        return EvPeriodicWord(tuple(w) + self.pre, self.per)


def parse_evp(text):
    pre, sep, per = text.partition("|")
    if not sep:
        raise InvalidInput(f"eventually periodic word needs 'u|v' form: {text!r}")
    return EvPeriodicWord(parse_word(pre), parse_word(per))


LESS, EQUAL, GREATER = -1, 0, 1


def lex_compare_evp(x, y):
    """Lexicographic order of two infinite words; returns LESS/EQUAL/GREATER.

    Two eventually periodic words that agree up to the longer preperiod plus
    the lcm of the period lengths agree everywhere, so comparing that many
    positions decides the order.
    """
    bound = max(len(x.pre), len(y.pre)) + math.lcm(len(x.per), len(y.per))
    for i in range(bound):
        a, b = x.letter(i), y.letter(i)
        if a != b:
            return LESS if a < b else GREATER
    return EQUAL


class RotationClass:
    """A cyclic-rotation class of a nonempty finite word, stored as the
    lexicographically least rotation."""

    __slots__ = ("rep",)

    def __init__(self, rep):
        self.rep = tuple(rep)

    def __eq__(self, other):
        return isinstance(other, RotationClass) and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return f"[{format_word(self.rep)}]"

    def __len__(self):
        return len(self.rep)


def rotation_class_of(w):
    w = tuple(w)
    if not w:
        raise InvalidInput("rotation class of the empty word is undefined")
    rep = min(w[i:] + w[:i] for i in range(len(w)))
    return RotationClass(rep)


class ClopenSet:
    """A clopen subset of n-ary Cantor space as its canonical antichain: the
    set of maximal cones contained in it.  The empty antichain is the empty
    set; the antichain {e} is the whole space.  Instances are immutable; build
    them with canonicalize_clopen."""

    __slots__ = ("n", "cones")

    def __init__(self, n, cones):
        self.n = n
        self.cones = cones  # sorted tuple of words, already canonical

    def __eq__(self, other):
        return (
            isinstance(other, ClopenSet)
            and self.n == other.n
            and self.cones == other.cones
        )

    def __hash__(self):
        return hash((self.n, self.cones))

    def __repr__(self):
        inner = ", ".join(format_word(w) for w in self.cones)
        return "{" + inner + "}"

    def _check_same(self, other):
        if self.n != other.n:
            raise InvalidInput("clopen sets over different alphabets")

    def is_empty(self):
        return not self.cones

    def is_whole(self):
        return self.cones == (EMPTY,)

    def contains_cone(self, w):
        """True if the full cone U_w lies inside the set."""
        return any(is_prefix(c, w) for c in self.cones)

    def meets_cone(self, w):
        """True if U_w intersects the set."""
        return any(is_prefix(c, w) or is_prefix(w, c) for c in self.cones)

    def contains_point(self, x: EvPeriodicWord):
        return any(x.prefix(len(c)) == c for c in self.cones)

    def union(self, other):
        self._check_same(other)
        return canonicalize_clopen(self.n, self.cones + other.cones)

    def intersection(self, other):
        self._check_same(other)
        out = []
        for u in self.cones:
            for v in other.cones:
                if is_prefix(u, v):
                    out.append(v)
                elif is_prefix(v, u):
                    out.append(u)
        return canonicalize_clopen(self.n, out)

    def complement(self):
        return canonicalize_clopen(self.n, _complement(self.n, list(self.cones)))

    def disjoint(self, other):
        return self.intersection(other).is_empty()

    def issubset(self, other):
        return self.intersection(other) == self

    def shift(self, w):
        """The set w . self, every point prefixed by the finite word w."""
        check_letters(self.n, w)
        w = tuple(w)
        if not w:
            return self
        if not self.cones:
            return self
        return ClopenSet(self.n, tuple(sorted(w + c for c in self.cones)))

    def min_point(self):
        """Lexicographically least point; the set must be nonempty."""
        if not self.cones:
            raise InvalidInput("minimum of the empty clopen set")
        w = min(self.cones, key=lambda c: (c, len(c)))
        return EvPeriodicWord(w, (0,))

    def max_point(self):
        if not self.cones:
            raise InvalidInput("maximum of the empty clopen set")
        w = max(self.cones, key=lambda c: (c, -len(c)))
        return EvPeriodicWord(w, (self.n - 1,))


def _complement(n, cones):
    if any(c == EMPTY for c in cones):
        return []
    if not cones:
        return [EMPTY]
    out = []
    for i in range(n):
        sub = [c[1:] for c in cones if c[0] == i]
        out.extend((i,) + w for w in _complement(n, sub))
    return out


def canonicalize_clopen(n, cones):
    """Canonical antichain with the same union of cones: prefixes absorb
    extensions and complete sibling families merge upward, to a fixpoint."""
    if n < 2:
        raise InvalidInput("alphabet must have at least 2 letters")
    s = set()
    for c in cones:
        c = tuple(c)
        check_letters(n, c)
        s.add(c)
    changed = True
    while changed:
        # drop any word with a proper prefix already present
        s = {w for w in s if not any(w[:k] in s for k in range(len(w)))}
        changed = False
        parents = {}
        for w in s:
            if w:
                parents.setdefault(w[:-1], set()).add(w[-1])
        for parent, kids in parents.items():
            if len(kids) == n:
                s.difference_update(parent + (i,) for i in range(n))
                s.add(parent)
                changed = True
    return ClopenSet(n, tuple(sorted(s)))


def empty_clopen(n):
    return ClopenSet(n, ())


def whole_space(n):
    return ClopenSet(n, (EMPTY,))


def cone(n, w):
    return canonicalize_clopen(n, [tuple(w)])


def union_all(n, sets):
    out = []
    for s in sets:
        out.extend(s.cones)
    return canonicalize_clopen(n, out)


def cones_of_depth(n, depth):
    """All words of the given length, in lexicographic order."""
    return [tuple(w) for w in cartesian(range(n), repeat=depth)]


class RootedClopen:
    """A clopen subset of the disjoint union of r copies of Cantor space,
    one ClopenSet per root."""

    __slots__ = ("n", "r", "parts")

    def __init__(self, n, r, parts):
        if len(parts) != r:
            raise InvalidInput("rooted clopen needs one part per root")
        self.n = n
        self.r = r
        self.parts = tuple(parts)

    def __eq__(self, other):
        return (
            isinstance(other, RootedClopen)
            and (self.n, self.r, self.parts) == (other.n, other.r, other.parts)
        )

    def __hash__(self):
        return hash((self.n, self.r, self.parts))

    def __repr__(self):
        return "RootedClopen(" + ", ".join(f".{a}:{p!r}" for a, p in enumerate(self.parts)) + ")"

    def is_whole(self):
        return all(p.is_whole() for p in self.parts)

    def is_empty(self):
        return all(p.is_empty() for p in self.parts)

    def union(self, other):
        return RootedClopen(self.n, self.r,
                            [a.union(b) for a, b in zip(self.parts, other.parts)])

    def intersection(self, other):
        return RootedClopen(self.n, self.r,
                            [a.intersection(b) for a, b in zip(self.parts, other.parts)])

    def disjoint(self, other):
        return all(a.disjoint(b) for a, b in zip(self.parts, other.parts))


def whole_rooted(n, r):
    return RootedClopen(n, r, [whole_space(n)] * r)


def empty_rooted(n, r):
    return RootedClopen(n, r, [empty_clopen(n)] * r)
