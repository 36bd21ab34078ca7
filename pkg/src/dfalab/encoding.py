"""Fixed-width binary serialisation of computation-trace tuples.

A trace is a string over ``{0, 1, $}``: each tuple is serialised as a
fixed number of bits (most significant bit first) terminated by one ``$``.
Two tuple shapes exist: the 6-field shape ``(q, r0, r1, m0, m1, w)`` and
the 8-field shape ``(q, h0, h1, r0, r1, m0, m1, w)`` that additionally
carries both head positions.

Field widths: q takes ceil(log2 |Q|) bits, h0 ceil(log2 (n+2)), h1
ceil(log2 S) (any of which may be zero bits wide), and every symbolic
field takes two bits with the code table

    00 = symbol 0      01 = symbol 1      10 = #      11 = endmarker/unused
    00 = move L        01 = move R        10 = move S

The input-endmarker code 11 stands for either ``<`` or ``>``; which one is
meant is recovered from the head position during decoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import EncodingOverflow, MalformedTrace
from .machine import input_read

TRACE_ALPHABET = ("0", "1", "$")
SEPARATOR = "$"

SYMBOL_CODES = {"0": 0, "1": 1, "#": 2}
ENDMARKER_CODE = 3
ENDMARKER_TOKEN = "E"
MOVE_CODES = {"L": 0, "R": 1, "S": 2}
_SYMBOL_FROM_CODE = {v: k for k, v in SYMBOL_CODES.items()}
_MOVE_FROM_CODE = {v: k for k, v in MOVE_CODES.items()}

MAX_FIELD_BITS = 63


class TraceTuple6(NamedTuple):
    q: int
    r0: str  # '0', '1' or 'E' (either endmarker)
    r1: str
    m0: str
    m1: str
    w: str


class TraceTuple8(NamedTuple):
    q: int
    h0: int
    h1: int
    r0: str
    r1: str
    m0: str
    m1: str
    w: str


def _width(values):
    """Bits needed to address ``values`` distinct items; 0 when only one."""
    if values < 1:
        raise EncodingOverflow("cannot encode an empty value domain")
    bits = (values - 1).bit_length()
    if bits > MAX_FIELD_BITS:
        raise EncodingOverflow(f"field needs {bits} bits (limit {MAX_FIELD_BITS})")
    return bits


def _read_code(token):
    return ENDMARKER_CODE if token in ("<", ">", ENDMARKER_TOKEN) else SYMBOL_CODES[token]


@dataclass(frozen=True)
class TraceEncoding:
    """Field layout of one serialised tuple."""

    fields: tuple            # ((name, width), ...) in serialisation order
    n_states: int
    input_length: int | None  # None for the 6-field shape
    space_cells: int | None

    @staticmethod
    def for_tuple6(n_states):
        fields = (("q", _width(n_states)), ("r0", 2), ("r1", 2),
                  ("m0", 2), ("m1", 2), ("w", 2))
        return TraceEncoding(fields, n_states, None, None)

    @staticmethod
    def for_tuple8(n_states, input_length, space_cells):
        fields = (("q", _width(n_states)),
                  ("h0", _width(input_length + 2)),
                  ("h1", _width(space_cells)),
                  ("r0", 2), ("r1", 2), ("m0", 2), ("m1", 2), ("w", 2))
        return TraceEncoding(fields, n_states, input_length, space_cells)

    @property
    def has_positions(self):
        return self.input_length is not None

    @property
    def tuple_bits(self):
        return sum(w for _, w in self.fields)

    def width_of(self, name):
        for fname, w in self.fields:
            if fname == name:
                return w
        raise KeyError(name)

    def _field_values(self, trace_tuple):
        vals = {"q": trace_tuple.q,
                "r0": _read_code(trace_tuple.r0),
                "r1": SYMBOL_CODES[trace_tuple.r1],
                "m0": MOVE_CODES[trace_tuple.m0],
                "m1": MOVE_CODES[trace_tuple.m1],
                "w": SYMBOL_CODES[trace_tuple.w]}
        if self.has_positions:
            vals["h0"] = trace_tuple.h0
            vals["h1"] = trace_tuple.h1
        return vals

    def encode_tuple(self, trace_tuple):
        """Serialise one tuple to its bit tokens plus the separator."""
        vals = self._field_values(trace_tuple)
        out = []
        for name, width in self.fields:
            v = vals[name]
            if not 0 <= v < (1 << width):
                raise EncodingOverflow(f"{name}={v} does not fit in {width} bits")
            for j in range(width - 1, -1, -1):
                out.append("1" if (v >> j) & 1 else "0")
        out.append(SEPARATOR)
        return out

    def decode_frame(self, bits):
        """Decode one frame (the bits between separators) into a tuple."""
        if len(bits) != self.tuple_bits:
            raise MalformedTrace(
                f"frame has {len(bits)} bits, expected {self.tuple_bits}")
        vals = {}
        at = 0
        for name, width in self.fields:
            v = 0
            for j in range(width):
                v = (v << 1) | (1 if bits[at + j] == "1" else 0)
            vals[name] = v
            at += width
        if vals["q"] >= self.n_states:
            raise MalformedTrace(f"state field {vals['q']} out of range")
        for name in ("r1", "w"):
            if vals[name] not in _SYMBOL_FROM_CODE:
                raise MalformedTrace(f"{name} field holds the unused code 11")
        for name in ("m0", "m1"):
            if vals[name] not in _MOVE_FROM_CODE:
                raise MalformedTrace(f"{name} field holds an invalid move code")
        r0 = (ENDMARKER_TOKEN if vals["r0"] == ENDMARKER_CODE
              else _SYMBOL_FROM_CODE.get(vals["r0"]))
        if r0 is None or r0 == "#":
            raise MalformedTrace("r0 field holds a non-input code")
        common = dict(q=vals["q"], r0=r0, r1=_SYMBOL_FROM_CODE[vals["r1"]],
                      m0=_MOVE_FROM_CODE[vals["m0"]], m1=_MOVE_FROM_CODE[vals["m1"]],
                      w=_SYMBOL_FROM_CODE[vals["w"]])
        if not self.has_positions:
            return TraceTuple6(**common)
        if vals["h0"] > self.input_length + 1:
            raise MalformedTrace(f"h0 field {vals['h0']} out of range")
        if vals["h1"] >= self.space_cells:
            raise MalformedTrace(f"h1 field {vals['h1']} out of range")
        return TraceTuple8(h0=vals["h0"], h1=vals["h1"], **common)


def tuples_from_symbols(encoding, symbols):
    """Split a witness into frames and decode each; strict framing."""
    frames = []
    current = []
    for tok in symbols:
        if tok == SEPARATOR:
            frames.append(current)
            current = []
        elif tok in ("0", "1"):
            current.append(tok)
        else:
            raise MalformedTrace(f"unexpected token {tok!r} in trace")
    if current:
        raise MalformedTrace("trace does not end at a tuple boundary")
    if not frames:
        raise MalformedTrace("trace contains no tuples")
    return [encoding.decode_frame(f) for f in frames]


def run_to_symbols(encoding, machine, input_bits, run):
    """Serialise an accepting run into its canonical trace.

    One tuple per applied transition, in order, then a closing tuple for
    the accepting configuration with both moves Stay and the write equal
    to the read (so cell trackers see a no-op).
    """
    out = []
    steps = run.steps
    for config, choice in steps[:-1]:
        r0 = input_read(input_bits, config.input_head)
        r1 = config.worktape[config.work_head]
        out.extend(encoding.encode_tuple(_make_tuple(
            encoding, config, r0, r1, choice.move_input, choice.move_work,
            choice.write)))
    final_config, closing = steps[-1]
    assert closing is None
    r0 = input_read(input_bits, final_config.input_head)
    r1 = final_config.worktape[final_config.work_head]
    out.extend(encoding.encode_tuple(_make_tuple(
        encoding, final_config, r0, r1, "S", "S", r1)))
    return out


def _make_tuple(encoding, config, r0, r1, m0, m1, w):
    r0_token = ENDMARKER_TOKEN if r0 in ("<", ">") else r0
    if encoding.has_positions:
        return TraceTuple8(config.state, config.input_head, config.work_head,
                           r0_token, r1, m0, m1, w)
    return TraceTuple6(config.state, r0_token, r1, m0, m1, w)
