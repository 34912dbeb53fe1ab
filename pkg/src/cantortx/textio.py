"""The on-disk text format, one machine per file.

    TRANSDUCER n=<int> r=<int|0> states=<id,id,...> initial=<id|->
    <state> <letter> -> <state> : <word|e>

r=0 and initial=- mark a plain machine whose states all read letters 0..n-1.
With r>=1 the initial state reads exactly the dotted letters .0 ... .r-1 and
outputs may be dotted words like .1,0,2.  Lines starting with # are comments.
Parsing is strict: every (state, letter) pair must appear exactly once."""

from __future__ import annotations

from .words import EMPTY, InvalidInput, format_word, parse_word
from .transducer import Transducer
from .initial import InitialTransducer, dot, is_dot, rooted_word, split_rooted


class ParseError(InvalidInput):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _fmt_out(w):
    root, tail = split_rooted(w)
    if root is None:
        return format_word(tail)
    if tail:
        return f".{root}," + format_word(tail)
    return f".{root}"


def _fmt_letter(sym):
    if is_dot(sym):
        return f".{sym[1]}"
    return str(sym)


def _safe_name(q):
    s = str(q)
    if not s or any(ch.isspace() for ch in s) or "," in s or ":" in s:
        raise InvalidInput(f"state name {s!r} cannot be serialized; relabel first")
    return s


def serialize(T):
    """Serialize a plain or initial machine; deterministic ordering."""
    lines = []
    if isinstance(T, Transducer):
        names = [_safe_name(q) for q in T.states]
        if len(set(names)) != len(names):
            raise InvalidInput("state names collide as strings; relabel first")
        head = f"TRANSDUCER n={T.n} r=0 states={','.join(names)} initial=-"
        lines.append(head)
        for q in T.states:
            for i in range(T.n):
                w, p = T.step(q, i)
                lines.append(f"{_safe_name(q)} {i} -> {_safe_name(p)} : {format_word(w)}")
        return "\n".join(lines) + "\n"
    if isinstance(T, InitialTransducer):
        names = [_safe_name(q) for q in T.states]
        if len(set(names)) != len(names):
            raise InvalidInput("state names collide as strings; relabel first")
        head = (
            f"TRANSDUCER n={T.n} r={T.r} states={','.join(names)}"
            f" initial={_safe_name(T.root)}"
        )
        lines.append(head)
        for q in T.states:
            for sym in T.symbols_at(q):
                w, p = T.step(q, sym)
                lines.append(
                    f"{_safe_name(q)} {_fmt_letter(sym)} -> {_safe_name(p)} : {_fmt_out(w)}"
                )
        return "\n".join(lines) + "\n"
    raise InvalidInput(f"cannot serialize {type(T).__name__}")


def _parse_out(text, lineno):
    text = text.strip()
    if text.startswith("."):
        head, _, rest = text[1:].partition(",")
        try:
            root = int(head)
        except ValueError:
            raise ParseError(lineno, f"bad dotted output {text!r}") from None
        return rooted_word(root, parse_word(rest) if rest else EMPTY)
    return parse_word(text)


def parse(text):
    """Parse the text format; returns a Transducer or InitialTransducer."""
    header = None
    body = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = (lineno, line)
        else:
            body.append((lineno, line))
    if header is None:
        raise ParseError(0, "empty input")
    lineno, line = header
    if not line.startswith("TRANSDUCER "):
        raise ParseError(lineno, "header must start with TRANSDUCER")
    fields = {}
    for tok in line.split()[1:]:
        key, _, val = tok.partition("=")
        if not _ or key in fields:
            raise ParseError(lineno, f"bad header field {tok!r}")
        fields[key] = val
    if set(fields) != {"n", "r", "states", "initial"}:
        raise ParseError(lineno, "header needs n=, r=, states=, initial=")
    try:
        n = int(fields["n"])
        r = int(fields["r"])
    except ValueError:
        raise ParseError(lineno, "n and r must be integers") from None
    states = fields["states"].split(",")
    if len(set(states)) != len(states) or "" in states:
        raise ParseError(lineno, "bad state list")
    initial = fields["initial"]
    if (r == 0) != (initial == "-"):
        raise ParseError(lineno, "r=0 exactly when initial=-")
    known = set(states)

    entries = {}
    for lineno, line in body:
        try:
            left, right = line.split("->")
            src_tok = left.split()
            dst, _, out_tok = right.partition(":")
            if not _:
                raise ValueError
            dst = dst.strip()
            if len(src_tok) != 2:
                raise ValueError
        except ValueError:
            raise ParseError(
                lineno, "expected '<state> <letter> -> <state> : <word>'"
            ) from None
        src, letter_tok = src_tok
        if src not in known:
            raise ParseError(lineno, f"unknown source state {src!r}")
        if dst not in known:
            raise ParseError(lineno, f"unknown target state {dst!r}")
        if letter_tok.startswith("."):
            try:
                sym = dot(int(letter_tok[1:]))
            except ValueError:
                raise ParseError(lineno, f"bad dotted letter {letter_tok!r}") from None
            if r == 0:
                raise ParseError(lineno, "dotted letter in a plain machine")
            if src != initial:
                raise ParseError(lineno, "dotted letters only from the initial state")
            if not (0 <= sym[1] < r):
                raise ParseError(lineno, f"root letter {letter_tok!r} out of range")
        else:
            try:
                sym = int(letter_tok)
            except ValueError:
                raise ParseError(lineno, f"bad letter {letter_tok!r}") from None
            if not (0 <= sym < n):
                raise ParseError(lineno, f"letter {sym} out of range")
            if r > 0 and src == initial:
                raise ParseError(lineno, "the initial state reads only dotted letters")
        try:
            out = _parse_out(out_tok, lineno)
        except InvalidInput as exc:
            raise ParseError(lineno, str(exc)) from None
        if (src, sym) in entries:
            raise ParseError(lineno, f"duplicate transition {src} {letter_tok}")
        entries[(src, sym)] = (out, dst)

    if r == 0:
        table = {}
        for q in states:
            row = {}
            for i in range(n):
                if (q, i) not in entries:
                    raise ParseError(0, f"missing transition {q} {i}")
                row[i] = entries[(q, i)]
            table[q] = row
        if len(entries) != n * len(states):
            raise ParseError(0, "stray transitions")
        return Transducer(n, table)

    root_table = {}
    for a in range(r):
        if (initial, dot(a)) not in entries:
            raise ParseError(0, f"missing transition {initial} .{a}")
        root_table[a] = entries[(initial, dot(a))]
    table = {}
    for q in states:
        if q == initial:
            continue
        row = {}
        for i in range(n):
            if (q, i) not in entries:
                raise ParseError(0, f"missing transition {q} {i}")
            row[i] = entries[(q, i)]
        table[q] = row
    if len(entries) != r + n * (len(states) - 1):
        raise ParseError(0, "stray transitions")
    return InitialTransducer(n, r, root_table, table, root=initial)
