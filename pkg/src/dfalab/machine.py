"""Offline nondeterministic Turing machines with a bounded worktape.

The model is a two-tape machine: a read-only input tape holding a bit
string between the endmarkers ``<`` (position 0) and ``>`` (position n+1),
and a worktape of a fixed number of cells over ``{0, 1, #}``.  Space is
counted in worktape cells.  Acceptance is by halting in an accepting
state; accepting states carry no outgoing transitions.

Machines and configurations are immutable; the reachability routines are
pure functions and safe to run concurrently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as iproduct
from types import MappingProxyType
from typing import NamedTuple

from .errors import StateSpaceTooLarge, ValidationError

WORK_SYMBOLS = ("#", "0", "1")
INPUT_READS = ("0", "1", "<", ">")
MOVES = ("L", "R", "S")
_MOVE_DELTA = {"L": -1, "R": 1, "S": 0}

DEFAULT_CONFIG_CAP = 10_000_000


class Transition(NamedTuple):
    """One nondeterministic choice: successor state, write, head moves."""

    state: int
    write: str
    move_input: str
    move_work: str


class OfflineNtm:
    """Nondeterministic 2-tape machine; delta maps (q, input read, work read)
    to a canonically sorted tuple of Transition choices."""

    __slots__ = ("name", "n_states", "initial", "accepting", "delta")

    def __init__(self, n_states, initial, accepting, delta, name="ntm"):
        self.name = str(name)
        self.n_states = int(n_states)
        self.initial = int(initial)
        self.accepting = frozenset(int(q) for q in accepting)
        if self.n_states < 1:
            raise ValidationError(f"{self.name}: need at least one state")
        if not 0 <= self.initial < self.n_states:
            raise ValidationError(f"{self.name}: initial state out of range")
        if any(not 0 <= q < self.n_states for q in self.accepting):
            raise ValidationError(f"{self.name}: accepting state out of range")
        table = {}
        for (q, r0, r1), choices in delta.items():
            q = int(q)
            if not 0 <= q < self.n_states:
                raise ValidationError(f"{self.name}: transition from undeclared state {q}")
            if q in self.accepting:
                raise ValidationError(
                    f"{self.name}: accepting state {q} must have no outgoing transitions")
            if r0 not in INPUT_READS:
                raise ValidationError(f"{self.name}: bad input read {r0!r}")
            if r1 not in WORK_SYMBOLS:
                raise ValidationError(f"{self.name}: bad work read {r1!r}")
            seen = set()
            for ch in choices:
                ch = Transition(int(ch[0]), ch[1], ch[2], ch[3])
                if not 0 <= ch.state < self.n_states:
                    raise ValidationError(
                        f"{self.name}: transition to undeclared state {ch.state}")
                if ch.write not in WORK_SYMBOLS:
                    raise ValidationError(f"{self.name}: bad write symbol {ch.write!r}")
                if ch.move_input not in MOVES or ch.move_work not in MOVES:
                    raise ValidationError(f"{self.name}: bad move token")
                seen.add(ch)
            if seen:
                table[(q, r0, r1)] = tuple(sorted(seen))
        self.delta = MappingProxyType(table)

    def choices(self, state, input_read, work_read):
        return self.delta.get((state, input_read, work_read), ())

    @property
    def uses_stay(self):
        return any(ch.move_input == "S" or ch.move_work == "S"
                   for choices in self.delta.values() for ch in choices)

    def delimiter_writes(self):
        """Number of distinct transition choices that write ``#``.

        The binary-worktape discipline allows only a fixed sprinkling of
        delimiters; this is surfaced as a lint count, not enforced.
        """
        return sum(1 for choices in self.delta.values()
                   for ch in choices if ch.write == "#")

    def __eq__(self, other):
        if not isinstance(other, OfflineNtm):
            return NotImplemented
        return (self.name == other.name and self.n_states == other.n_states
                and self.initial == other.initial
                and self.accepting == other.accepting
                and self.delta == other.delta)

    def __repr__(self):
        return (f"OfflineNtm({self.name!r}, states={self.n_states}, "
                f"accepting={sorted(self.accepting)}, entries={len(self.delta)})")


@dataclass(frozen=True)
class Configuration:
    """Instantaneous description: state, both head positions, worktape."""

    state: int
    input_head: int
    work_head: int
    worktape: str


@dataclass(frozen=True)
class Run:
    """Accepting computation: (configuration, chosen transition) pairs,
    the final pair carrying None in place of a transition."""

    steps: tuple

    @property
    def configurations(self):
        return tuple(c for c, _ in self.steps)

    @property
    def length(self):
        return len(self.steps) - 1


def initial_configuration(machine, space_cells):
    """Start state, input head on the first bit, work head on cell 0, zeros."""
    if space_cells < 1:
        raise ValidationError("space bound must be at least one cell")
    return Configuration(machine.initial, 1, 0, "0" * space_cells)


def input_read(input_bits, position):
    n = len(input_bits)
    if position == 0:
        return "<"
    if position == n + 1:
        return ">"
    return input_bits[position - 1]


def step(machine, input_bits, config):
    """All configurations one transition away, in canonical choice order.

    Moves that would push a head off the tape ends are excluded, so an
    accepting or stuck configuration yields the empty list.
    """
    n = len(input_bits)
    space = len(config.worktape)
    r0 = input_read(input_bits, config.input_head)
    r1 = config.worktape[config.work_head]
    out = []
    for ch in machine.choices(config.state, r0, r1):
        h0 = config.input_head + _MOVE_DELTA[ch.move_input]
        h1 = config.work_head + _MOVE_DELTA[ch.move_work]
        if not (0 <= h0 <= n + 1 and 0 <= h1 < space):
            continue
        tape = config.worktape
        if ch.write != r1:
            tape = tape[:config.work_head] + ch.write + tape[config.work_head + 1:]
        out.append(Configuration(ch.state, h0, h1, tape))
    return out


def configuration_count(machine, input_length, space_cells):
    return machine.n_states * (input_length + 2) * space_cells * 3 ** space_cells


def all_configurations(machine, input_bits, space_cells):
    """Every configuration within the space bound, in a fixed enumeration order."""
    n = len(input_bits)
    for q in range(machine.n_states):
        for h0 in range(n + 2):
            for h1 in range(space_cells):
                for tape in iproduct(WORK_SYMBOLS, repeat=space_cells):
                    yield Configuration(q, h0, h1, "".join(tape))


def _check_cap(machine, input_bits, space_cells, cap):
    count = configuration_count(machine, len(input_bits), space_cells)
    if cap is not None and count > cap:
        raise StateSpaceTooLarge(
            f"{count} configurations exceed the cap of {cap}")
    return count


def oracle_accepts(machine, input_bits, space_cells, *, cap=DEFAULT_CONFIG_CAP):
    """Ground truth by exhaustive breadth-first search of the configuration graph."""
    _check_cap(machine, input_bits, space_cells, cap)
    start = initial_configuration(machine, space_cells)
    if start.state in machine.accepting:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        config = queue.popleft()
        for nxt in step(machine, input_bits, config):
            if nxt in seen:
                continue
            if nxt.state in machine.accepting:
                return True
            seen.add(nxt)
            queue.append(nxt)
    return False


def find_accepting_run(machine, input_bits, space_cells, *, cap=DEFAULT_CONFIG_CAP):
    """Shortest accepting run (BFS over configurations), or None.

    Deterministic: ties are broken by the canonical order of ``step``.
    """
    _check_cap(machine, input_bits, space_cells, cap)
    start = initial_configuration(machine, space_cells)
    if start.state in machine.accepting:
        return Run(((start, None),))
    parents = {start: None}
    queue = deque([start])
    goal = None
    while queue and goal is None:
        config = queue.popleft()
        r0 = input_read(input_bits, config.input_head)
        r1 = config.worktape[config.work_head]
        n = len(input_bits)
        space = len(config.worktape)
        for ch in machine.choices(config.state, r0, r1):
            h0 = config.input_head + _MOVE_DELTA[ch.move_input]
            h1 = config.work_head + _MOVE_DELTA[ch.move_work]
            if not (0 <= h0 <= n + 1 and 0 <= h1 < space):
                continue
            tape = config.worktape
            if ch.write != r1:
                tape = tape[:config.work_head] + ch.write + tape[config.work_head + 1:]
            nxt = Configuration(ch.state, h0, h1, tape)
            if nxt in parents:
                continue
            parents[nxt] = (config, ch)
            if nxt.state in machine.accepting:
                goal = nxt
                break
            queue.append(nxt)
    if goal is None:
        return None
    path = [goal]
    at = goal
    while parents[at] is not None:
        at = parents[at][0]
        path.append(at)
    path.reverse()
    steps = []
    for i, config in enumerate(path[:-1]):
        steps.append((config, parents[path[i + 1]][1]))
    steps.append((path[-1], None))
    return Run(tuple(steps))


def savitch_reach(machine, input_bits, start, goal, budget, *,
                  cap=DEFAULT_CONFIG_CAP):
    """Is ``goal`` reachable from ``start`` in at most ``budget`` steps?

    Realises the halving recursion deterministically: enumerate every
    candidate midpoint configuration and recurse on both halves with
    budgets ceil(t/2) and floor(t/2).  Recursion depth is ceil(log2 t) and
    the working storage is one configuration per level; the price is the
    usual quasi-polynomial running time, so keep budgets small.
    """
    if budget < 0:
        raise ValidationError("budget must be non-negative")
    space = len(start.worktape)
    if len(goal.worktape) != space:
        raise ValidationError("configurations use different space bounds")
    _check_cap(machine, input_bits, space, cap)

    def reach(a, b, t):
        if a == b:
            return True
        if t <= 0:
            return False
        if t == 1:
            return b in step(machine, input_bits, a)
        upper = (t + 1) // 2
        lower = t // 2
        for mid in all_configurations(machine, input_bits, space):
            if reach(a, mid, upper) and reach(mid, b, lower):
                return True
        return False

    return reach(start, goal, budget)


def savitch_accepts(machine, input_bits, space_cells, budget, *,
                    cap=DEFAULT_CONFIG_CAP):
    """Acceptance via the halving recursion: some accepting configuration
    is reachable from the initial one within the step budget."""
    start = initial_configuration(machine, space_cells)
    if start.state in machine.accepting:
        return True
    for q in sorted(machine.accepting):
        for goal in all_configurations(machine, input_bits, space_cells):
            if goal.state != q:
                continue
            if savitch_reach(machine, input_bits, start, goal, budget, cap=cap):
                return True
    return False
