"""Parsing and canonical emission for every on-disk format.

Formats are line-oriented plain text so corpora stay diffable:

``.dfa``   ``dfa <name>`` / ``alphabet <tok> ...`` / ``states <m>`` /
           ``initial <id>`` / ``final <id> ...`` / ``trans <src> <tok> <dst>``.
           ``#`` starts a comment (outside quotes); multi-character tokens
           are double-quoted.  Omitted transitions are an error in strict
           mode; otherwise they route to one implicitly added dead state.

``.int``   ``use <path.dfa>`` lines, order significant, paths relative to
           the instance file.

``.ntm``   ``ntm <name>`` / ``states <n>`` / ``initial <id>`` /
           ``accept <id> ...`` / ``delta <q> <r0> <r1> -> <q'> <w> <m0> <m1>``.
           Because ``#`` is a work-tape symbol, only whole-line comments
           (first non-blank character ``#``) are recognised here.

Sidecar metadata is ``key=value`` per line; benchmark output is CSV with a
fixed column set.  Emission is canonical (sorted, byte-stable), so
``parse(emit(x)) == x`` for every type.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .automata import Dfa, IntersectionInstance
from .errors import ParseError, ValidationError
from .machine import INPUT_READS, MOVES, OfflineNtm, WORK_SYMBOLS

BENCH_COLUMNS = ("construction", "n", "k_or_S", "strategy", "dfas",
                 "max_states", "product_states_explored", "time_ns", "verdict")


def _tokenize(line, lineno, *, allow_comment=True):
    """Split a line into tokens; double quotes group, ``#`` starts a comment."""
    tokens = []
    current = []
    in_quote = False
    was_quoted = False
    for ch in line:
        if in_quote:
            if ch == '"':
                in_quote = False
            else:
                current.append(ch)
        elif ch == '"':
            in_quote = True
            was_quoted = True
        elif allow_comment and ch == "#":
            break
        elif ch.isspace():
            if current or was_quoted:
                tokens.append("".join(current))
                current = []
                was_quoted = False
        else:
            current.append(ch)
    if in_quote:
        raise ParseError("unterminated quote", lineno)
    if current or was_quoted:
        tokens.append("".join(current))
    return tokens


def _quote(token):
    if len(token) == 1 and not token.isspace() and token not in ('"', "#"):
        return token
    return f'"{token}"'


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        yield lineno, raw


def _int_field(tokens, at, what, lineno):
    try:
        return int(tokens[at])
    except (IndexError, ValueError):
        raise ParseError(f"expected integer {what}", lineno) from None


# ---------------------------------------------------------------------------
# .dfa

def parse_dfa(text, *, strict=False):
    name = None
    alphabet = None
    n_states = None
    initial = None
    finals = []
    trans = {}
    for lineno, raw in _lines(text):
        tokens = _tokenize(raw, lineno)
        if not tokens:
            continue
        head, rest = tokens[0], tokens[1:]
        if head == "dfa":
            if len(rest) != 1:
                raise ParseError("dfa line needs exactly one name", lineno)
            name = rest[0]
        elif head == "alphabet":
            if len(set(rest)) != len(rest):
                raise ParseError("alphabet tokens are not distinct", lineno)
            alphabet = tuple(rest)
        elif head == "states":
            n_states = _int_field(tokens, 1, "state count", lineno)
        elif head == "initial":
            initial = _int_field(tokens, 1, "initial state", lineno)
        elif head == "final":
            finals.extend(_int_field(tokens, i, "final state", lineno)
                          for i in range(1, len(tokens)))
        elif head == "trans":
            if len(rest) != 3:
                raise ParseError("trans line needs src, token, dst", lineno)
            src = _int_field(rest, 0, "source state", lineno)
            dst = _int_field(rest, 2, "target state", lineno)
            if alphabet is None:
                raise ParseError("trans before alphabet", lineno)
            if rest[1] not in alphabet:
                raise ParseError(f"unknown symbol {rest[1]!r}", lineno)
            if n_states is None or not (0 <= src < n_states and 0 <= dst < n_states):
                raise ParseError("trans state out of range", lineno)
            if (src, rest[1]) in trans:
                raise ParseError(
                    f"duplicate transition for state {src} on {rest[1]!r}", lineno)
            trans[(src, rest[1])] = dst
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if alphabet is None or n_states is None or initial is None:
        raise ParseError("missing alphabet, states or initial line")

    missing = [(s, tok) for s in range(n_states) for tok in alphabet
               if (s, tok) not in trans]
    total = n_states
    if missing:
        if strict:
            raise ValidationError(
                f"transition mapping is not total ({len(missing)} missing) in strict mode")
        sink = n_states
        total += 1
        for key in missing:
            trans[key] = sink
        for tok in alphabet:
            trans[(sink, tok)] = sink
    table = [[trans[(s, tok)] for tok in alphabet] for s in range(total)]
    return Dfa(alphabet=alphabet, transitions=table, initial=initial,
               finals=finals, name=name or "dfa")


def emit_dfa(dfa):
    out = [f"dfa {_quote(dfa.name)}"]
    out.append("alphabet " + " ".join(_quote(t) for t in dfa.alphabet))
    out.append(f"states {dfa.n_states}")
    out.append(f"initial {dfa.initial}")
    out.append(("final " + " ".join(str(f) for f in sorted(dfa.finals))).rstrip())
    for s in range(dfa.n_states):
        for c, tok in enumerate(dfa.alphabet):
            out.append(f"trans {s} {_quote(tok)} {int(dfa.transitions[s, c])}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# .int

def parse_instance_paths(text):
    paths = []
    for lineno, raw in _lines(text):
        tokens = _tokenize(raw, lineno)
        if not tokens:
            continue
        if tokens[0] != "use" or len(tokens) != 2:
            raise ParseError("instance lines are `use <path.dfa>`", lineno)
        paths.append(tokens[1])
    return paths


def emit_instance_paths(paths):
    return "".join(f"use {_quote(str(p)) if ' ' in str(p) else p}\n" for p in paths)


def load_instance(path, *, strict=False):
    """Read an ``.int`` file and the DFAs it references.

    Errors are re-raised with the offending file's path prepended.
    """
    path = Path(path)
    try:
        paths = parse_instance_paths(path.read_text())
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not paths:
        raise ParseError(f"{path}: instance lists no automata")
    dfas = []
    for p in paths:
        member = path.parent / p
        try:
            dfas.append(parse_dfa(member.read_text(), strict=strict))
        except (ParseError, ValidationError) as exc:
            raise type(exc)(f"{member}: {exc}") from None
    return IntersectionInstance(dfas), paths


def save_instance(instance, directory, stem):
    """Write one ``.dfa`` per member plus the ``.int`` list; returns its path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rel_paths = []
    for i, dfa in enumerate(instance.dfas):
        rel = f"{stem}_{i:03d}_{dfa.name}.dfa"
        (directory / rel).write_text(emit_dfa(dfa))
        rel_paths.append(rel)
    int_path = directory / f"{stem}.int"
    int_path.write_text(emit_instance_paths(rel_paths))
    return int_path


# ---------------------------------------------------------------------------
# .ntm

def parse_ntm(text):
    name = None
    n_states = None
    initial = None
    accepting = []
    delta = {}
    for lineno, raw in _lines(text):
        if raw.lstrip().startswith("#"):
            continue
        tokens = _tokenize(raw, lineno, allow_comment=False)
        if not tokens:
            continue
        head, rest = tokens[0], tokens[1:]
        if head == "ntm":
            if len(rest) != 1:
                raise ParseError("ntm line needs exactly one name", lineno)
            name = rest[0]
        elif head == "states":
            n_states = _int_field(tokens, 1, "state count", lineno)
        elif head == "initial":
            initial = _int_field(tokens, 1, "initial state", lineno)
        elif head == "accept":
            accepting.extend(_int_field(tokens, i, "accepting state", lineno)
                             for i in range(1, len(tokens)))
        elif head == "delta":
            if len(rest) != 8 or rest[3] != "->":
                raise ParseError(
                    "delta lines are `delta <q> <r0> <r1> -> <q'> <w> <m0> <m1>`", lineno)
            q = _int_field(rest, 0, "source state", lineno)
            r0, r1 = rest[1], rest[2]
            q2 = _int_field(rest, 4, "target state", lineno)
            w, m0, m1 = rest[5], rest[6], rest[7]
            if r0 not in INPUT_READS:
                raise ParseError(f"bad input read {r0!r}", lineno)
            if r1 not in WORK_SYMBOLS or w not in WORK_SYMBOLS:
                raise ParseError(f"bad work-tape symbol on delta line", lineno)
            if m0 not in MOVES or m1 not in MOVES:
                raise ParseError(f"bad move token on delta line", lineno)
            delta.setdefault((q, r0, r1), set()).add((q2, w, m0, m1))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if n_states is None or initial is None:
        raise ParseError("missing states or initial line")
    return OfflineNtm(n_states=n_states, initial=initial, accepting=accepting,
                      delta=delta, name=name or "ntm")


def emit_ntm(machine):
    out = [f"ntm {_quote(machine.name)}"]
    out.append(f"states {machine.n_states}")
    out.append(f"initial {machine.initial}")
    out.append(("accept " + " ".join(str(q) for q in sorted(machine.accepting))).rstrip())
    for (q, r0, r1) in sorted(machine.delta):
        for ch in machine.delta[(q, r0, r1)]:
            out.append(f"delta {q} {r0} {r1} -> {ch.state} {ch.write} "
                       f"{ch.move_input} {ch.move_work}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# sidecar metadata and benchmark CSV

def emit_metadata(pairs):
    return "".join(f"{key}={value}\n" for key, value in pairs.items())


def parse_metadata(text):
    out = {}
    for lineno, raw in _lines(text):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError("metadata lines are key=value", lineno)
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def write_bench_csv(rows, stream):
    writer = csv.DictWriter(stream, fieldnames=BENCH_COLUMNS)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def bench_csv_text(rows):
    buf = io.StringIO()
    write_bench_csv(rows, buf)
    return buf.getvalue()
