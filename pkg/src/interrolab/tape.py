"""Turing-machine execution over pluggable tape backends.

Two backends share one observable contract (read/write/move, logical head
position, non-blank window): a direct flat tape, and a chain of fixed-capacity
message-passing cells that grows one cell at a time at either end. A lockstep
differ checks they are observationally identical, and a bounded-storage
halting decider settles termination for machines clamped to a fixed tape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True)
class TuringMachineSpec:
    states: tuple[str, ...]
    initial: str
    halting: frozenset[str]
    blank: str
    tape_alphabet: tuple[str, ...]
    # (state, read) -> (next state, write, move); partial. Undefined = halt.
    transitions: Mapping[tuple[str, str], tuple[str, str, str]]

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state unknown")
        if not self.halting <= set(self.states):
            raise ValueError("halting states unknown")
        if self.blank not in self.tape_alphabet:
            raise ValueError("blank missing from tape alphabet")
        for (state, read), (nxt, write, move) in self.transitions.items():
            if state in self.halting:
                raise ValueError(f"transition from halting state {state}")
            if state not in self.states or nxt not in self.states:
                raise ValueError(f"unknown state in transition ({state},{read})")
            if read not in self.tape_alphabet or write not in self.tape_alphabet:
                raise ValueError(f"unknown symbol in transition ({state},{read})")
            if move not in (LEFT, RIGHT):
                raise ValueError(f"bad move {move!r}")


class FlatTape:
    """Sparse dict-backed tape; the reference backend."""

    def __init__(self, blank: str = "_"):
        self.blank = blank
        self.cells: dict[int, str] = {}
        self.position = 0

    def read(self) -> str:
        return self.cells.get(self.position, self.blank)

    def write(self, symbol: str) -> None:
        if symbol == self.blank:
            self.cells.pop(self.position, None)
        else:
            self.cells[self.position] = symbol

    def move(self, direction: str) -> None:
        self.position += 1 if direction == RIGHT else -1

    def window(self) -> tuple[int, str]:
        """Leftmost non-blank position and the contiguous text through the
        rightmost non-blank cell. (0, "") when the tape is all blank."""
        if not self.cells:
            return 0, ""
        lo, hi = min(self.cells), max(self.cells)
        return lo, "".join(self.cells.get(i, self.blank) for i in range(lo, hi + 1))

    def load(self, text: str, start: int = 0) -> None:
        for i, ch in enumerate(text):
            if ch != self.blank:
                self.cells[start + i] = ch


class CascadeTape:
    """Tape realized as a two-way chain of fixed-capacity cells.

    Each cell holds exactly `cell_capacity` symbol slots. Moving past either
    end of the chain appends one fresh all-blank cell there. Every observable
    interaction is recorded in a message log of
    (kind, cell index, payload) entries, kinds: AppendCell, PassLeft,
    PassRight, Read, Write.
    """

    def __init__(self, cell_capacity: int, blank: str = "_", log_messages: bool = True):
        if cell_capacity < 1:
            raise ValueError("cell capacity must be >= 1")
        self.cell_capacity = cell_capacity
        self.blank = blank
        self.cells: list[list[str]] = [[blank] * cell_capacity]
        self.head_cell = 0
        self.head_offset = 0
        self.origin = 0  # logical position of cells[0][0]
        self.log_messages = log_messages
        self.log: list[tuple[str, int, str]] = []

    @property
    def position(self) -> int:
        return self.origin + self.head_cell * self.cell_capacity + self.head_offset

    def _log(self, kind: str, cell: int, payload: str = "") -> None:
        if self.log_messages:
            self.log.append((kind, cell, payload))

    def read(self) -> str:
        symbol = self.cells[self.head_cell][self.head_offset]
        self._log("Read", self.head_cell, symbol)
        return symbol

    def write(self, symbol: str) -> None:
        self.cells[self.head_cell][self.head_offset] = symbol
        self._log("Write", self.head_cell, symbol)

    def move(self, direction: str) -> None:
        if direction == RIGHT:
            if self.head_offset + 1 < self.cell_capacity:
                self.head_offset += 1
                return
            if self.head_cell + 1 == len(self.cells):
                self._append_right()
            self.head_cell += 1
            self.head_offset = 0
            self._log("PassRight", self.head_cell)
        else:
            if self.head_offset > 0:
                self.head_offset -= 1
                return
            if self.head_cell == 0:
                self._append_left()
            self.head_cell -= 1
            self.head_offset = self.cell_capacity - 1
            self._log("PassLeft", self.head_cell)

    def _append_right(self) -> None:
        self.cells.append([self.blank] * self.cell_capacity)
        self._log("AppendCell", len(self.cells) - 1)

    def _append_left(self) -> None:
        self.cells.insert(0, [self.blank] * self.cell_capacity)
        self.origin -= self.cell_capacity
        self.head_cell += 1
        self._log("AppendCell", 0)

    def window(self) -> tuple[int, str]:
        flat: dict[int, str] = {}
        for ci, cell in enumerate(self.cells):
            base = self.origin + ci * self.cell_capacity
            for off, sym in enumerate(cell):
                if sym != self.blank:
                    flat[base + off] = sym
        if not flat:
            return 0, ""
        lo, hi = min(flat), max(flat)
        return lo, "".join(flat.get(i, self.blank) for i in range(lo, hi + 1))

    def load(self, text: str, start: int = 0) -> None:
        # Input loading is part of setup, not of the message protocol.
        logging = self.log_messages
        self.log_messages = False
        try:
            here = self.position
            for i, ch in enumerate(text):
                while self.position < start + i:
                    self.move(RIGHT)
                self.write(ch)
            while self.position > here:
                self.move(LEFT)
        finally:
            self.log_messages = logging

    def dump_log(self) -> str:
        """Line-oriented trace: step index, message kind, cell index, payload."""
        lines = ["%d\t%s\t%d\t%s" % (i, kind, cell, payload)
                 for i, (kind, cell, payload) in enumerate(self.log)]
        return "\n".join(lines) + ("\n" if lines else "")


def new_cascade(cell_capacity: int, blank: str = "_") -> CascadeTape:
    return CascadeTape(cell_capacity, blank=blank)


@dataclass(frozen=True)
class Halted:
    state: str
    steps: int
    window: str


@dataclass(frozen=True)
class Running:
    steps: int


RunOutcome = Halted | Running


def run_tm(spec: TuringMachineSpec, backend, input_text: str,
           step_limit: int) -> RunOutcome:
    """Standard single-tape semantics. Halts in a halting state or on an
    undefined transition (reject-by-stall); Running when the budget runs out."""
    if step_limit < 0:
        raise ValueError("step_limit must be >= 0")
    for ch in input_text:
        if ch == spec.blank:
            raise ValueError("input may not contain the blank symbol")
        if ch not in spec.tape_alphabet:
            raise ValueError(f"input symbol {ch!r} outside the tape alphabet")
    backend.load(input_text)
    state = spec.initial
    for step in range(step_limit + 1):
        if state in spec.halting:
            return Halted(state, step, backend.window()[1])
        rule = spec.transitions.get((state, backend.read()))
        if rule is None:
            return Halted(state, step, backend.window()[1])
        if step == step_limit:
            break
        nxt, write, move = rule
        backend.write(write)
        backend.move(move)
        state = nxt
    return Running(step_limit)


def backend_equivalence(spec: TuringMachineSpec, input_text: str,
                        step_limit: int, cell_capacity: int,
                        cascade=None) -> bool:
    """Run the machine on a flat tape and on a cascade in lockstep; true iff
    (state, head position, window) agree at every step and outcomes agree.

    A prebuilt cascade (e.g. a fault-injection double) may be passed in."""
    flat = FlatTape(blank=spec.blank)
    if cascade is None:
        cascade = CascadeTape(cell_capacity, blank=spec.blank, log_messages=False)
    flat.load(input_text)
    cascade.load(input_text)

    def observe(backend, state):
        return state, backend.position, backend.window()

    state_a = state_b = spec.initial
    for step in range(step_limit + 1):
        if observe(flat, state_a) != observe(cascade, state_b):
            return False
        halted_a = state_a in spec.halting or (state_a, flat.read()) not in spec.transitions
        halted_b = state_b in spec.halting or (state_b, cascade.read()) not in spec.transitions
        if halted_a != halted_b:
            return False
        if halted_a or step == step_limit:
            return True
        nxt, write, move = spec.transitions[(state_a, flat.read())]
        flat.write(write)
        flat.move(move)
        state_a = nxt
        nxt, write, move = spec.transitions[(state_b, cascade.read())]
        cascade.write(write)
        cascade.move(move)
        state_b = nxt
    return True


@dataclass(frozen=True)
class Halts:
    steps: int


@dataclass(frozen=True)
class Loops:
    first: int
    second: int


HaltingDecision = Halts | Loops


def decide_halting_bounded(spec: TuringMachineSpec, m: int,
                           input_text: str) -> HaltingDecision:
    """Decide termination of the machine clamped to m tape cells.

    Moves off either end leave the head in place. The configuration space is
    finite (|Q| * m * |alphabet|^m), so the simulation either halts or revisits
    a configuration within that many steps.
    """
    if m < 1:
        raise ValueError("tape length must be >= 1")
    if len(input_text) > m:
        raise ValueError("input longer than the clamped tape")
    tape = list(input_text) + [spec.blank] * (m - len(input_text))
    state = spec.initial
    head = 0
    seen: dict[tuple, int] = {}
    bound = len(spec.states) * m * len(spec.tape_alphabet) ** m + 1
    for step in range(bound + 1):
        if state in spec.halting:
            return Halts(step)
        config = (state, head, tuple(tape))
        if config in seen:
            return Loops(seen[config], step)
        seen[config] = step
        rule = spec.transitions.get((state, tape[head]))
        if rule is None:
            return Halts(step)
        nxt, write, move = rule
        tape[head] = write
        if move == RIGHT:
            if head + 1 < m:
                head += 1
        else:
            if head > 0:
                head -= 1
        state = nxt
    raise AssertionError("bounded decider exceeded its configuration bound")
