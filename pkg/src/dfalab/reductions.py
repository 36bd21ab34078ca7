"""Machine-to-DFA family compilers and the witness decoder.

Both compilers emit DFAs over the trace alphabet ``{0, 1, $}`` that jointly
accept exactly the serialised accepting computations of a machine on a
hardcoded input:

* ``compile_kozen``: k+1 DFAs reading 6-field tuples.  The controller
  tracks the machine state and the input head exactly and checks every
  field except the truth of the claimed work-tape read; the k block DFAs
  each store one block of the worktape, integrate the work-head moves to
  know where the head is, and check the read exactly when the head sits in
  their block.
* ``compile_linear``: 1 + (n+2) + 2S + 1 DFAs reading 8-field tuples that
  also carry both head positions.  One controller validates framing and
  transition consistency; one DFA per input position and one per work-tape
  position enforce the head-position chains; one DFA per work-tape cell
  stores that cell's symbol and checks claimed reads; a final DFA rejects
  out-of-range position claims.

A trace consists of one tuple per applied transition followed by a closing
tuple for the accepting configuration whose moves are Stay and whose write
repeats the read.  Every check failure routes to an absorbing dead state;
all DFAs except the controllers accept in every non-dead state, so the
controller alone decides where a witness may end.

Each DFA is defined as a semantic checker (an explicit initial description
plus a transition function) and materialised by breadth-first closure over
its reachable descriptions, which keeps state counts at their natural
size.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass

from .automata import Dfa, IntersectionInstance, Witness
from .encoding import (ENDMARKER_TOKEN, MOVE_CODES, SEPARATOR, SYMBOL_CODES,
                       TRACE_ALPHABET, TraceEncoding, run_to_symbols,
                       tuples_from_symbols)
from .errors import InvalidMachine, InvalidStep, ValidationError
from .machine import (OfflineNtm, Run, Transition, initial_configuration,
                      input_read)

_DEAD = object()
_MOVE_L, _MOVE_R, _MOVE_S = MOVE_CODES["L"], MOVE_CODES["R"], MOVE_CODES["S"]
_MOVE_SHIFT = {_MOVE_L: -1, _MOVE_R: 1, _MOVE_S: 0}


@dataclass(frozen=True)
class Provenance:
    machine: str
    input: str
    construction: str  # "kozen" or "linear"
    parameter: int     # block count k, or space cells S


@dataclass(frozen=True)
class CompiledFamily:
    """A compiled instance plus everything needed to decode its witnesses."""

    instance: IntersectionInstance
    encoding: TraceEncoding
    provenance: Provenance
    machine: OfflineNtm
    input: str
    space_cells: int


def _const_bit(value, width, bit_index):
    return (value >> (width - 1 - bit_index)) & 1


class _TupleChecker:
    """Shared scanning harness: framing, field boundaries, bit dispatch.

    Subclasses see the trace one bit at a time via ``on_bit`` and get an
    ``end_field`` call when a field completes (zero-width fields complete
    before the next consumed token).  ``on_boundary`` commits a finished
    tuple at each separator.  Returning the module-level dead sentinel
    from any hook routes the automaton to its absorbing dead state.
    """

    def __init__(self, encoding):
        self.encoding = encoding
        schedule = []
        pending = []
        for name, width in encoding.fields:
            if width == 0:
                pending.append(name)
                continue
            for j in range(width):
                pre = tuple(pending) if j == 0 else ()
                if j == 0:
                    pending = []
                schedule.append((pre, name, j, j == width - 1))
        self.schedule = tuple(schedule)

    def initial_acc(self):
        raise NotImplementedError

    def on_bit(self, field, fbit, bit, acc):
        raise NotImplementedError

    def end_field(self, field, acc):
        raise NotImplementedError

    def on_boundary(self, acc):
        raise NotImplementedError

    def is_accepting(self, acc):
        return True

    def advance(self, state, token):
        offset, acc = state
        width = len(self.schedule)
        if token == SEPARATOR:
            if offset != width:
                return _DEAD
            acc = self.on_boundary(acc)
            return _DEAD if acc is _DEAD else (0, acc)
        if offset >= width:
            return _DEAD
        pre, field, fbit, last = self.schedule[offset]
        for name in pre:
            acc = self.end_field(name, acc)
            if acc is _DEAD:
                return _DEAD
        acc = self.on_bit(field, fbit, 1 if token == "1" else 0, acc)
        if acc is _DEAD:
            return _DEAD
        if last:
            acc = self.end_field(field, acc)
            if acc is _DEAD:
                return _DEAD
        return (offset + 1, acc)


def materialize(checker, name):
    """Freeze a checker into a dense DFA by reachable-description closure.

    States are numbered in breadth-first discovery order (symbols in
    alphabet order), so the emitted automaton is reproducible.
    """
    start = (0, checker.initial_acc())
    index = {start: 0}
    order = [start]
    rows = []
    head = 0
    while head < len(order):
        state = order[head]
        if state is _DEAD:
            rows.append([head] * len(TRACE_ALPHABET))
            head += 1
            continue
        row = []
        for token in TRACE_ALPHABET:
            nxt = checker.advance(state, token)
            key = _DEAD if nxt is _DEAD else nxt
            if key not in index:
                index[key] = len(order)
                order.append(key)
            row.append(index[key])
        rows.append(row)
        head += 1
    finals = [i for i, st in enumerate(order)
              if st is not _DEAD and checker.is_accepting(st[1])]
    return Dfa(alphabet=TRACE_ALPHABET, transitions=rows, initial=0,
               finals=finals, name=name)


def _delta_codes(machine):
    """delta reindexed as (q, input key, work-read code) -> choice code sets."""
    table = {}
    for (q, r0, r1), choices in machine.delta.items():
        table[(q, r0, SYMBOL_CODES[r1])] = frozenset(
            (ch.state, SYMBOL_CODES[ch.write], MOVE_CODES[ch.move_input],
             MOVE_CODES[ch.move_work]) for ch in choices)
    return table


# ---------------------------------------------------------------------------
# Linear construction (8-field tuples)

_CtrlAcc = namedtuple("_CtrlAcc", "qset q accmode f0 fN ek key entries r1v cur done")


class _LinearController(_TupleChecker):
    """Tracks the machine state, validates transition consistency and the
    closing-tuple form; final exactly after a completed accepting tuple."""

    def __init__(self, encoding, machine):
        super().__init__(encoding)
        self.machine = machine
        self.codes = _delta_codes(machine)
        self.qwidth = encoding.width_of("q")
        self.h0width = encoding.width_of("h0")
        self.n = encoding.input_length

    def initial_acc(self):
        return self._fresh(frozenset((self.machine.initial,)))

    @staticmethod
    def _fresh(qset):
        return _CtrlAcc(qset, -1, False, True, True, -1, None, None, -1, 0, False)

    def is_accepting(self, acc):
        return acc.done

    def on_bit(self, field, fbit, bit, acc):
        if acc.done:
            return _DEAD
        if field == "q":
            qset = frozenset(q for q in acc.qset
                             if _const_bit(q, self.qwidth, fbit) == bit)
            return _DEAD if not qset else acc._replace(qset=qset)
        if field == "h0":
            return acc._replace(
                f0=acc.f0 and _const_bit(0, self.h0width, fbit) == bit,
                fN=acc.fN and _const_bit(self.n + 1, self.h0width, fbit) == bit)
        if field == "h1":
            return acc
        # two-bit symbolic fields accumulate their code
        return acc._replace(cur=(acc.cur << 1 | bit) if fbit else bit)

    def end_field(self, field, acc):
        if acc.done:
            return _DEAD
        if field == "q":
            if not acc.qset:
                return _DEAD
            q = min(acc.qset)
            return acc._replace(qset=None, q=q,
                                accmode=q in self.machine.accepting)
        if field == "h0":
            return acc._replace(ek=0 if acc.f0 else (1 if acc.fN else 2))
        if field == "h1":
            return acc
        if field == "r0":
            if acc.cur == 3:
                key = "<" if acc.ek == 0 else (">" if acc.ek == 1 else None)
            elif acc.cur in (0, 1) and acc.ek == 2:
                key = "01"[acc.cur]
            else:
                key = None
            return _DEAD if key is None else acc._replace(key=key)
        if field == "r1":
            if acc.cur == 3:
                return _DEAD
            if acc.accmode:
                return acc._replace(r1v=acc.cur)
            entries = self.codes.get((acc.q, acc.key, acc.cur), frozenset())
            return _DEAD if not entries else acc._replace(entries=entries)
        if field == "m0":
            if acc.accmode:
                return acc if acc.cur == _MOVE_S else _DEAD
            entries = frozenset(e for e in acc.entries if e[2] == acc.cur)
            return _DEAD if not entries else acc._replace(entries=entries)
        if field == "m1":
            if acc.accmode:
                return acc if acc.cur == _MOVE_S else _DEAD
            entries = frozenset(e for e in acc.entries if e[3] == acc.cur)
            return _DEAD if not entries else acc._replace(entries=entries)
        if field == "w":
            if acc.accmode:
                return acc if acc.cur == acc.r1v else _DEAD
            entries = frozenset(e for e in acc.entries if e[1] == acc.cur)
            return _DEAD if not entries else acc._replace(entries=entries)
        raise AssertionError(field)

    def on_boundary(self, acc):
        if acc.done:
            return _DEAD
        if acc.accmode:
            return _CtrlAcc(None, -1, False, False, False, -1, None, None, -1, 0, True)
        return self._fresh(frozenset(e[0] for e in acc.entries))


_PosAcc = namedtuple("_PosAcc", "here fp fl fr rok cur pend")


class _InputPositionChecker(_TupleChecker):
    """Owns one input-tape position: checks the read when the head is here
    and maintains arrival/departure from the claimed position and move."""

    def __init__(self, encoding, input_bits, position):
        super().__init__(encoding)
        self.p = position
        self.n = len(input_bits)
        self.h0width = encoding.width_of("h0")
        self.expected = (3 if position in (0, self.n + 1)
                         else SYMBOL_CODES[input_bits[position - 1]])
        self.has_left = position - 1 >= 0
        self.has_right = position + 1 <= self.n + 1

    def initial_acc(self):
        return self._fresh(self.p == 1)

    def _fresh(self, here):
        return _PosAcc(here, True, self.has_left, self.has_right, True, 0, False)

    def on_bit(self, field, fbit, bit, acc):
        if field == "h0":
            w = self.h0width
            return acc._replace(
                fp=acc.fp and _const_bit(self.p, w, fbit) == bit,
                fl=acc.fl and _const_bit(max(self.p - 1, 0), w, fbit) == bit,
                fr=acc.fr and _const_bit(min(self.p + 1, self.n + 1), w, fbit) == bit)
        if field == "r0":
            if acc.here:
                return acc._replace(rok=acc.rok and _const_bit(self.expected, 2, fbit) == bit)
            return acc
        if field == "m0":
            return acc._replace(cur=(acc.cur << 1 | bit) if fbit else bit)
        return acc

    def end_field(self, field, acc):
        if field == "h0":
            return _DEAD if acc.fp != acc.here else acc
        if field == "r0":
            return _DEAD if (acc.here and not acc.rok) else acc
        if field == "m0":
            if acc.cur == 3:
                return _DEAD
            pend = ((acc.here and acc.cur == _MOVE_S)
                    or (acc.fl and acc.cur == _MOVE_R)
                    or (acc.fr and acc.cur == _MOVE_L))
            return acc._replace(pend=pend)
        return acc

    def on_boundary(self, acc):
        return self._fresh(acc.pend)


class _WorkPositionChecker(_TupleChecker):
    """Head-position chain for one work-tape position (no read checks)."""

    def __init__(self, encoding, space_cells, position):
        super().__init__(encoding)
        self.c = position
        self.top = space_cells - 1
        self.h1width = encoding.width_of("h1")
        self.has_left = position - 1 >= 0
        self.has_right = position + 1 <= self.top

    def initial_acc(self):
        return self._fresh(self.c == 0)

    def _fresh(self, here):
        return _PosAcc(here, True, self.has_left, self.has_right, True, 0, False)

    def on_bit(self, field, fbit, bit, acc):
        if field == "h1":
            w = self.h1width
            return acc._replace(
                fp=acc.fp and _const_bit(self.c, w, fbit) == bit,
                fl=acc.fl and _const_bit(max(self.c - 1, 0), w, fbit) == bit,
                fr=acc.fr and _const_bit(min(self.c + 1, self.top), w, fbit) == bit)
        if field == "m1":
            return acc._replace(cur=(acc.cur << 1 | bit) if fbit else bit)
        return acc

    def end_field(self, field, acc):
        if field == "h1":
            return _DEAD if acc.fp != acc.here else acc
        if field == "m1":
            if acc.cur == 3:
                return _DEAD
            pend = ((acc.here and acc.cur == _MOVE_S)
                    or (acc.fl and acc.cur == _MOVE_R)
                    or (acc.fr and acc.cur == _MOVE_L))
            return acc._replace(pend=pend)
        return acc

    def on_boundary(self, acc):
        return self._fresh(acc.pend)


_CellAcc = namedtuple("_CellAcc", "stored fc owned cur")


class _CellChecker(_TupleChecker):
    """Stores one work-tape cell; checks the claimed read and applies the
    write whenever the claimed head position is this cell."""

    def __init__(self, encoding, cell):
        super().__init__(encoding)
        self.c = cell
        self.h1width = encoding.width_of("h1")

    def initial_acc(self):
        return _CellAcc(SYMBOL_CODES["0"], True, False, 0)

    def on_bit(self, field, fbit, bit, acc):
        if field == "h1":
            return acc._replace(
                fc=acc.fc and _const_bit(self.c, self.h1width, fbit) == bit)
        if field in ("r1", "w"):
            return acc._replace(cur=(acc.cur << 1 | bit) if fbit else bit)
        return acc

    def end_field(self, field, acc):
        if field == "h1":
            return acc._replace(owned=acc.fc)
        if field == "r1":
            if acc.owned and acc.cur != acc.stored:
                return _DEAD
            return acc
        if field == "w":
            if acc.owned:
                if acc.cur == 3:
                    return _DEAD
                return acc._replace(stored=acc.cur)
            return acc
        return acc

    def on_boundary(self, acc):
        return _CellAcc(acc.stored, True, False, 0)


_RangeAcc = namedtuple("_RangeAcc", "cmp0 cmp1")
_EQ, _LT, _GT = 0, 1, 2


class _PositionRangeChecker(_TupleChecker):
    """Rejects tuples whose position fields exceed the tape bounds (the
    position fields can encode values no checker would otherwise own)."""

    def __init__(self, encoding):
        super().__init__(encoding)
        self.h0width = encoding.width_of("h0")
        self.h1width = encoding.width_of("h1")
        self.h0max = encoding.input_length + 1
        self.h1max = encoding.space_cells - 1

    def initial_acc(self):
        return _RangeAcc(_EQ, _EQ)

    @staticmethod
    def _compare(state, limit_bit, bit):
        if state != _EQ:
            return state
        if bit > limit_bit:
            return _GT
        if bit < limit_bit:
            return _LT
        return _EQ

    def on_bit(self, field, fbit, bit, acc):
        if field == "h0":
            return acc._replace(
                cmp0=self._compare(acc.cmp0, _const_bit(self.h0max, self.h0width, fbit), bit))
        if field == "h1":
            return acc._replace(
                cmp1=self._compare(acc.cmp1, _const_bit(self.h1max, self.h1width, fbit), bit))
        return acc

    def end_field(self, field, acc):
        if field == "h0" and acc.cmp0 == _GT:
            return _DEAD
        if field == "h1" and acc.cmp1 == _GT:
            return _DEAD
        return acc

    def on_boundary(self, acc):
        return _RangeAcc(_EQ, _EQ)


# ---------------------------------------------------------------------------
# Fixed-k construction (6-field tuples)

_K0Acc = namedtuple("_K0Acc", "qset q accmode h0 rok entries r1v m0v cur done")


class _FixedKController(_TupleChecker):
    """The distinguished DFA: tracks the machine state and the input head
    exactly, so it checks the true input read and every field except the
    work-tape read, which it conditions on the claim."""

    def __init__(self, encoding, machine, input_bits):
        super().__init__(encoding)
        self.machine = machine
        self.input = input_bits
        self.n = len(input_bits)
        self.codes = _delta_codes(machine)
        self.qwidth = encoding.width_of("q")

    def initial_acc(self):
        return self._fresh(frozenset((self.machine.initial,)), 1)

    @staticmethod
    def _fresh(qset, h0):
        return _K0Acc(qset, -1, False, h0, True, None, -1, -1, 0, False)

    def is_accepting(self, acc):
        return acc.done

    def _expected_code(self, h0):
        read = input_read(self.input, h0)
        return 3 if read in ("<", ">") else SYMBOL_CODES[read]

    def on_bit(self, field, fbit, bit, acc):
        if acc.done:
            return _DEAD
        if field == "q":
            qset = frozenset(q for q in acc.qset
                             if _const_bit(q, self.qwidth, fbit) == bit)
            return _DEAD if not qset else acc._replace(qset=qset)
        if field == "r0":
            expected = self._expected_code(acc.h0)
            return acc._replace(rok=acc.rok and _const_bit(expected, 2, fbit) == bit)
        return acc._replace(cur=(acc.cur << 1 | bit) if fbit else bit)

    def end_field(self, field, acc):
        if acc.done:
            return _DEAD
        if field == "q":
            if not acc.qset:
                return _DEAD
            q = min(acc.qset)
            return acc._replace(qset=None, q=q,
                                accmode=q in self.machine.accepting)
        if field == "r0":
            return acc if acc.rok else _DEAD
        if field == "r1":
            if acc.cur == 3:
                return _DEAD
            if acc.accmode:
                return acc._replace(r1v=acc.cur)
            key = input_read(self.input, acc.h0)
            entries = self.codes.get((acc.q, key, acc.cur), frozenset())
            return _DEAD if not entries else acc._replace(entries=entries)
        if field == "m0":
            if acc.cur == 3:
                return _DEAD
            if acc.accmode:
                if acc.cur != _MOVE_S:
                    return _DEAD
            else:
                entries = frozenset(e for e in acc.entries if e[2] == acc.cur)
                if not entries:
                    return _DEAD
                acc = acc._replace(entries=entries)
            if not 0 <= acc.h0 + _MOVE_SHIFT[acc.cur] <= self.n + 1:
                return _DEAD
            return acc._replace(m0v=acc.cur)
        if field == "m1":
            if acc.accmode:
                return acc if acc.cur == _MOVE_S else _DEAD
            entries = frozenset(e for e in acc.entries if e[3] == acc.cur)
            return _DEAD if not entries else acc._replace(entries=entries)
        if field == "w":
            if acc.accmode:
                return acc if acc.cur == acc.r1v else _DEAD
            entries = frozenset(e for e in acc.entries if e[1] == acc.cur)
            return _DEAD if not entries else acc._replace(entries=entries)
        raise AssertionError(field)

    def on_boundary(self, acc):
        if acc.done:
            return _DEAD
        if acc.accmode:
            return _K0Acc(None, -1, False, -1, False, None, -1, -1, 0, True)
        return self._fresh(frozenset(e[0] for e in acc.entries),
                           acc.h0 + _MOVE_SHIFT[acc.m0v])


_BlockAcc = namedtuple("_BlockAcc", "content h1 pend cur")


class _FixedKBlock(_TupleChecker):
    """Stores one work-tape block, integrates the claimed head moves to an
    exact head position, and checks reads/applies writes inside the block.

    A claimed move that leaves the tape kills the trace in every block.
    """

    def __init__(self, encoding, block_index, block_len, space_cells):
        super().__init__(encoding)
        self.lo = (block_index - 1) * block_len
        self.hi = block_index * block_len - 1
        self.block_len = block_len
        self.space = space_cells

    def initial_acc(self):
        return _BlockAcc((SYMBOL_CODES["0"],) * self.block_len, 0, 0, 0)

    def on_bit(self, field, fbit, bit, acc):
        if field in ("r1", "m1", "w"):
            return acc._replace(cur=(acc.cur << 1 | bit) if fbit else bit)
        return acc

    def end_field(self, field, acc):
        owned = self.lo <= acc.h1 <= self.hi
        if field == "r1":
            if owned and acc.cur != acc.content[acc.h1 - self.lo]:
                return _DEAD
            return acc
        if field == "m1":
            if acc.cur == 3:
                return _DEAD
            pend = acc.h1 + _MOVE_SHIFT[acc.cur]
            if not 0 <= pend < self.space:
                return _DEAD
            return acc._replace(pend=pend)
        if field == "w":
            if owned:
                if acc.cur == 3:
                    return _DEAD
                slot = acc.h1 - self.lo
                content = acc.content[:slot] + (acc.cur,) + acc.content[slot + 1:]
                return acc._replace(content=content)
            return acc
        return acc

    def on_boundary(self, acc):
        return _BlockAcc(acc.content, acc.pend, acc.pend, 0)


# ---------------------------------------------------------------------------
# Compiler entry points

def kozen_block_length(input_length):
    """Work-tape block size: ceil(log2 n) cells, but at least one."""
    return max(1, (input_length - 1).bit_length())


def _validate_compile(machine, input_bits, *, allow_stay):
    if len(input_bits) < 1:
        raise ValidationError("input must be at least one bit")
    if any(b not in "01" for b in input_bits):
        raise ValidationError(f"input must be a bit string, got {input_bits!r}")
    if not allow_stay and machine.uses_stay:
        raise InvalidMachine(f"{machine.name}: Stay moves disallowed by --no-stay")
    for choices in machine.delta.values():
        for ch in choices:
            if not 0 <= ch.state < machine.n_states:
                raise InvalidMachine(f"{machine.name}: transition to undeclared state")


def compile_kozen(machine, input_bits, k, *, allow_stay=True):
    """Fixed-count family: k+1 DFAs for a machine running in k blocks of
    ceil(log2 n) work-tape cells."""
    _validate_compile(machine, input_bits, allow_stay=allow_stay)
    if k < 1:
        raise ValidationError("block count must be at least 1")
    n = len(input_bits)
    block = kozen_block_length(n)
    space = k * block
    encoding = TraceEncoding.for_tuple6(machine.n_states)
    dfas = [materialize(_FixedKController(encoding, machine, input_bits), "ctrl")]
    for i in range(1, k + 1):
        dfas.append(materialize(_FixedKBlock(encoding, i, block, space), f"blk{i}"))
    return CompiledFamily(
        instance=IntersectionInstance(dfas),
        encoding=encoding,
        provenance=Provenance(machine.name, input_bits, "kozen", k),
        machine=machine,
        input=input_bits,
        space_cells=space,
    )


def compile_linear(machine, input_bits, space_cells, *, allow_stay=True):
    """Per-position family: 1 + (n+2) + 2S + 1 DFAs for S work-tape cells."""
    _validate_compile(machine, input_bits, allow_stay=allow_stay)
    if space_cells < 1:
        raise ValidationError("space bound must be at least one cell")
    n = len(input_bits)
    encoding = TraceEncoding.for_tuple8(machine.n_states, n, space_cells)
    dfas = [materialize(_LinearController(encoding, machine), "ctrl")]
    for p in range(n + 2):
        dfas.append(materialize(_InputPositionChecker(encoding, input_bits, p), f"in{p}"))
    for c in range(space_cells):
        dfas.append(materialize(_WorkPositionChecker(encoding, space_cells, c), f"wp{c}"))
    for c in range(space_cells):
        dfas.append(materialize(_CellChecker(encoding, c), f"cell{c}"))
    dfas.append(materialize(_PositionRangeChecker(encoding), "range"))
    return CompiledFamily(
        instance=IntersectionInstance(dfas),
        encoding=encoding,
        provenance=Provenance(machine.name, input_bits, "linear", space_cells),
        machine=machine,
        input=input_bits,
        space_cells=space_cells,
    )


# ---------------------------------------------------------------------------
# Witness decoding

def decode_witness(family, witness):
    """Parse an accepted witness back into the machine run it encodes.

    Every decoded step is re-validated against the machine's transitions;
    a failure here on an accepted witness signals a compiler bug.
    """
    tuples = tuples_from_symbols(family.encoding, witness.symbols)
    machine = family.machine
    input_bits = family.input
    n = len(input_bits)
    config = initial_configuration(machine, family.space_cells)
    steps = []
    for at, tup in enumerate(tuples):
        actual_r0 = input_read(input_bits, config.input_head)
        actual_r1 = config.worktape[config.work_head]
        claimed_r0 = ENDMARKER_TOKEN if actual_r0 in ("<", ">") else actual_r0
        if tup.q != config.state:
            raise InvalidStep(f"tuple {at}: state claim {tup.q} != {config.state}")
        if family.encoding.has_positions:
            if tup.h0 != config.input_head or tup.h1 != config.work_head:
                raise InvalidStep(f"tuple {at}: head position claim is wrong")
        if tup.r0 != claimed_r0:
            raise InvalidStep(f"tuple {at}: input read claim {tup.r0!r} is wrong")
        if tup.r1 != actual_r1:
            raise InvalidStep(f"tuple {at}: work read claim {tup.r1!r} is wrong")
        if at == len(tuples) - 1:
            if config.state not in machine.accepting:
                raise InvalidStep("trace does not end in an accepting state")
            if tup.m0 != "S" or tup.m1 != "S" or tup.w != tup.r1:
                raise InvalidStep("closing tuple must stay in place and rewrite the read")
            steps.append((config, None))
        else:
            choice = Transition(tuples[at + 1].q, tup.w, tup.m0, tup.m1)
            if choice not in machine.choices(config.state, actual_r0, actual_r1):
                raise InvalidStep(f"tuple {at}: no such transition from state {config.state}")
            h0 = config.input_head + {"L": -1, "R": 1, "S": 0}[tup.m0]
            h1 = config.work_head + {"L": -1, "R": 1, "S": 0}[tup.m1]
            if not (0 <= h0 <= n + 1 and 0 <= h1 < family.space_cells):
                raise InvalidStep(f"tuple {at}: move leaves the tape")
            tape = config.worktape
            tape = tape[:config.work_head] + tup.w + tape[config.work_head + 1:]
            steps.append((config, choice))
            config = type(config)(choice.state, h0, h1, tape)
    return Run(tuple(steps))


def run_to_witness(family, run):
    """Serialise a run with the family's encoding (inverse of decoding)."""
    return Witness(tuple(run_to_symbols(family.encoding, family.machine,
                                        family.input, run)))
