"""Per-state image analysis: exact clopen images, minimal cone-cover sizes,
injectivity, homeomorphism states, and lexicographic orientation.

Images are computed as the stabilizing limit of the decreasing approximants
A_0(q) = whole space, A_{m+1}(q) = union over letters of out(i,q).A_m(dest);
on stabilization the fixpoint equation holds exactly, and for a productive
machine the fixpoint is exactly the image."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .words import (
    ClopenSet,
    EvPeriodicWord,
    RootedClopen,
    empty_clopen,
    lex_compare_evp,
    union_all,
    whole_rooted,
    whole_space,
    GREATER,
)
from .transducer import check_productive, evaluate_periodic, reachable
from .initial import DONE, split_rooted


class NotClopenImage(RuntimeError):
    """Image iteration failed to stabilize within the configured bound."""


def images(T, max_iter=32):
    """Exact clopen image of every state of a plain transducer."""
    check_productive(T)
    img = {q: whole_space(T.n) for q in T.states}
    for _ in range(max_iter):
        new = {
            q: union_all(
                T.n,
                [img[T.dest(q, i)].shift(T.output(q, i)) for i in range(T.n)],
            )
            for q in T.states
        }
        if new == img:
            return img
        img = new
    raise NotClopenImage(f"images did not stabilize within {max_iter} iterations")


def image(T, q, max_iter=32):
    return images(T, max_iter)[q]


def m_of_state(T, q, max_iter=32):
    """Size of the smallest set of cones inside the image that covers it;
    this is the size of the canonical antichain."""
    return len(image(T, q, max_iter).cones)


def is_injective_state(T, q, max_iter=32):
    """True iff h_q is injective: at every state reachable from q the images
    of distinct branches are pairwise disjoint."""
    img = images(T, max_iter)
    for p in reachable(T, [q]):
        pieces = [img[T.dest(p, i)].shift(T.output(p, i)) for i in range(T.n)]
        for a in range(T.n):
            for b in range(a + 1, T.n):
                if not pieces[a].disjoint(pieces[b]):
                    return False
    return True


def is_homeomorphism_state(T, q, max_iter=32):
    return is_injective_state(T, q, max_iter) and image(T, q, max_iter).is_whole()


class Orientation(Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"
    NEITHER = "neither"


def orientation(T, max_iter=32):
    """Lexicographic orientation decided by the boundary condition at every
    state: for letters x < y the image of x.(n-1)^w must not exceed the image
    of y.0^w (preserving), or the mirrored inequality must hold (reversing).
    States must all be injective with clopen image, else NEITHER.

    An order-preserving or order-reversing core element automatically
    respects the endpoint identifications of the circle quotient; that is a
    theorem about these machines, so no separate check exists for it."""
    try:
        for q in T.states:
            if not is_injective_state(T, q, max_iter):
                return Orientation.NEITHER
    except NotClopenImage:
        return Orientation.NEITHER
    n = T.n
    preserving = True
    reversing = True
    for q in T.states:
        vals_hi = [evaluate_periodic(T, q, EvPeriodicWord((x,), (n - 1,))) for x in range(n)]
        vals_lo = [evaluate_periodic(T, q, EvPeriodicWord((x,), (0,))) for x in range(n)]
        for x in range(n):
            for y in range(x + 1, n):
                if lex_compare_evp(vals_hi[x], vals_lo[y]) == GREATER:
                    preserving = False
                if lex_compare_evp(vals_lo[y], vals_hi[x]) == GREATER:
                    reversing = False
        if not (preserving or reversing):
            return Orientation.NEITHER
    if preserving:
        return Orientation.PRESERVING
    if reversing:
        return Orientation.REVERSING
    return Orientation.NEITHER


@dataclass
class StateReport:
    image: ClopenSet
    m: int
    injective: bool
    homeomorphism: bool


def analyze(T, max_iter=32):
    """One StateReport per state plus the machine orientation."""
    img = images(T, max_iter)
    reports = {}
    for q in T.states:
        inj = is_injective_state(T, q, max_iter)
        reports[q] = StateReport(
            image=img[q],
            m=len(img[q].cones),
            injective=inj,
            homeomorphism=inj and img[q].is_whole(),
        )
    return reports, orientation(T, max_iter)


# --- images over the r-rooted space ---------------------------------------


def images_initial(A, max_iter=32):
    """Image of every state of an initial machine: a ClopenSet for states past
    the output root, a RootedClopen for the initial state and pending states."""
    n, r = A.n, A.r
    img = {}
    for q in A.states:
        img[q] = whole_space(n) if A.region[q] is DONE else whole_rooted(n, r)

    def branch(q, sym):
        w, p = A.step(q, sym)
        root, tail = split_rooted(w)
        target = img[p]
        if root is None:
            if isinstance(target, RootedClopen):
                # pending output, pending successor: shift each part? tail is
                # empty here by the structure rules, so this is just target
                return target
            return target.shift(tail)
        part = target.shift(tail)
        parts = [empty_clopen(n)] * r
        parts[root] = part
        return RootedClopen(n, r, parts)

    for _ in range(max_iter):
        new = {}
        for q in A.states:
            pieces = [branch(q, sym) for sym in A.symbols_at(q)]
            acc = pieces[0]
            for piece in pieces[1:]:
                acc = acc.union(piece)
            new[q] = acc
        if new == img:
            return img
        img = new
    raise NotClopenImage(f"images did not stabilize within {max_iter} iterations")


def is_injective_initial(A, max_iter=32):
    img = images_initial(A, max_iter)

    def piece(q, sym):
        w, p = A.step(q, sym)
        root, tail = split_rooted(w)
        target = img[p]
        if root is None:
            if isinstance(target, RootedClopen):
                return target
            return target.shift(tail)
        parts = [empty_clopen(A.n)] * A.r
        parts[root] = target.shift(tail)
        return RootedClopen(A.n, A.r, parts)

    for q in A.states:
        syms = A.symbols_at(q)
        pieces = [piece(q, sym) for sym in syms]
        for a in range(len(syms)):
            for b in range(a + 1, len(syms)):
                if not pieces[a].disjoint(pieces[b]):
                    return False
    return True


def is_homeomorphism_initial(A, max_iter=32):
    """True iff the induced map of C_{n,r} is a homeomorphism."""
    if not is_injective_initial(A, max_iter):
        return False
    return images_initial(A, max_iter)[A.root].is_whole()
