"""Machine models for contestants: transducers, acceptors, pushdown and
Turing dialogue machines, plus oracles and oracle machines.

Symbol-level machines answer a round by folding the query symbol-by-symbol
and then taking one transition on the reserved round delimiter; the reply is
the concatenation of all emitted output words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .dialogue import Alphabet, Contestant, ContestantFault
from .tape import FlatTape, Halted, Running, TuringMachineSpec, run_tm


# --- Mealy transducers (level 3) ---------------------------------------------

@dataclass(frozen=True)
class MealyTransducer:
    """Finite-state transducer emitting an output word on every transition.

    Transitions and outputs must be total over the alphabet's symbols plus
    the round delimiter.
    """

    states: tuple[str, ...]
    alphabet: Alphabet
    initial: str
    transitions: Mapping[tuple[str, str], str]
    outputs: Mapping[tuple[str, str], str]

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state unknown")
        for state in self.states:
            for sym in self.alphabet.extended:
                if (state, sym) not in self.transitions:
                    raise ValueError(f"missing transition ({state!r}, {sym!r})")
                if (state, sym) not in self.outputs:
                    raise ValueError(f"missing output ({state!r}, {sym!r})")
        for (state, sym), nxt in self.transitions.items():
            if nxt not in self.states:
                raise ValueError(f"transition ({state!r}, {sym!r}) -> unknown state")
        for (state, sym), word in self.outputs.items():
            if not self.alphabet.contains_message(word):
                raise ValueError(f"output word {word!r} leaves the alphabet")


def transducer_reply(machine: MealyTransducer, state: str, word: str) -> tuple[str, str]:
    """Fold a word symbol-by-symbol; returns (new state, concatenated output)."""
    out: list[str] = []
    for sym in word:
        out.append(machine.outputs[(state, sym)])
        state = machine.transitions[(state, sym)]
    return state, "".join(out)


def transducer_output(machine: MealyTransducer, word: str,
                      state: str | None = None) -> str:
    """Output of a word from the initial state (or a given state)."""
    return transducer_reply(machine, state or machine.initial, word)[1]


def minimize_transducer(machine: MealyTransducer) -> MealyTransducer:
    """Unique minimal machine with identical behavior on all input strings.

    State names are fixed by breadth-first order from the initial state,
    following the alphabet's symbol order, so canonical-form equality is a
    plain structural comparison.
    """
    syms = machine.alphabet.extended

    # Restrict to reachable states.
    reachable = [machine.initial]
    seen = {machine.initial}
    for state in reachable:
        for sym in syms:
            nxt = machine.transitions[(state, sym)]
            if nxt not in seen:
                seen.add(nxt)
                reachable.append(nxt)

    # Partition refinement: split first by output rows, then by successor blocks.
    block = {s: tuple(machine.outputs[(s, sym)] for sym in syms) for s in reachable}
    while True:
        signature = {s: (block[s], tuple(block[machine.transitions[(s, sym)]]
                                         for sym in syms))
                     for s in reachable}
        if len(set(signature.values())) == len(set(block.values())):
            break
        block = signature

    # Canonical BFS renaming of blocks.
    rep: dict = {}
    order: list = []
    queue = [machine.initial]
    names: dict = {}
    while queue:
        state = queue.pop(0)
        key = block[state]
        if key in names:
            continue
        names[key] = str(len(order))
        order.append(state)
        for sym in syms:
            queue.append(machine.transitions[(state, sym)])

    transitions = {}
    outputs = {}
    for state in order:
        src = names[block[state]]
        for sym in syms:
            transitions[(src, sym)] = names[block[machine.transitions[(state, sym)]]]
            outputs[(src, sym)] = machine.outputs[(state, sym)]
    return MealyTransducer(
        states=tuple(str(i) for i in range(len(order))),
        alphabet=machine.alphabet,
        initial="0",
        transitions=transitions,
        outputs=outputs,
    )


class TransducerContestant(Contestant):
    """Dialogue wrapper: feeds each query plus the round delimiter through
    the transducer, persisting the control state across rounds."""

    level = "3"

    def __init__(self, machine: MealyTransducer, name: str = "transducer"):
        self.machine = machine
        self.alphabet = machine.alphabet
        self.name = name
        self.state = machine.initial

    def reply(self, query: str) -> str:
        if not self.alphabet.contains_message(query):
            raise ContestantFault(f"query {query!r} leaves the alphabet")
        self.state, out = transducer_reply(
            self.machine, self.state, query + self.alphabet.delimiter)
        return out

    def reset(self) -> None:
        self.state = self.machine.initial

    # symbol-level probe interface used by the identification harness
    def step(self, sym: str) -> str:
        out = self.machine.outputs[(self.state, sym)]
        self.state = self.machine.transitions[(self.state, sym)]
        return out


# --- small transducer builders ------------------------------------------------

def _fill_delimiter(alphabet: Alphabet, states, transitions, outputs):
    """Convention for plain contestants: the delimiter is an empty self-loop."""
    for state in states:
        transitions.setdefault((state, alphabet.delimiter), state)
        outputs.setdefault((state, alphabet.delimiter), "")


def echo_transducer(alphabet: Alphabet) -> MealyTransducer:
    transitions = {("0", sym): "0" for sym in alphabet.symbols}
    outputs = {("0", sym): sym for sym in alphabet.symbols}
    _fill_delimiter(alphabet, ("0",), transitions, outputs)
    return MealyTransducer(("0",), alphabet, "0", transitions, outputs)


def constant_transducer(alphabet: Alphabet, word: str = "") -> MealyTransducer:
    """Replies the same output word for every input symbol."""
    transitions = {("0", sym): "0" for sym in alphabet.symbols}
    outputs = {("0", sym): word for sym in alphabet.symbols}
    _fill_delimiter(alphabet, ("0",), transitions, outputs)
    return MealyTransducer(("0",), alphabet, "0", transitions, outputs)


def parity_transducer(alphabet: Alphabet, counted: str,
                      one: str, zero: str) -> MealyTransducer:
    """Emits `one` while the count of `counted` symbols so far is odd,
    `zero` while it is even, one output per input symbol."""
    transitions = {}
    outputs = {}
    for state, other in (("even", "odd"), ("odd", "even")):
        for sym in alphabet.symbols:
            nxt = other if sym == counted else state
            transitions[(state, sym)] = nxt
            outputs[(state, sym)] = one if nxt == "odd" else zero
    _fill_delimiter(alphabet, ("even", "odd"), transitions, outputs)
    return MealyTransducer(("even", "odd"), alphabet, "even", transitions, outputs)


# --- acceptors (for the pumping argument) -------------------------------------

@dataclass(frozen=True)
class Acceptor:
    states: tuple[str, ...]
    symbols: tuple[str, ...]
    initial: str
    transitions: Mapping[tuple[str, str], str]
    accepting: frozenset[str]

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state unknown")
        if not self.accepting <= set(self.states):
            raise ValueError("accepting states unknown")
        for state in self.states:
            for sym in self.symbols:
                if (state, sym) not in self.transitions:
                    raise ValueError(f"missing transition ({state!r}, {sym!r})")

    def run(self, word: str) -> str:
        state = self.initial
        for sym in word:
            state = self.transitions[(state, sym)]
        return state

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting


# --- pushdown contestants (level 2) --------------------------------------------

PUSH = "push"
POP = "pop"
STAY = "stay"
RESET = "reset"


@dataclass(frozen=True)
class PushdownMachine:
    """Deterministic pushdown transducer. Transition key is
    (state, input symbol, stack top); value is (next state, action, output word).
    Actions: ("push", s), ("pop",), ("stay",), ("reset",). The bottom marker
    is never popped."""

    states: tuple[str, ...]
    alphabet: Alphabet
    initial: str
    stack_bottom: str
    stack_symbols: tuple[str, ...]
    transitions: Mapping[tuple[str, str, str], tuple[str, tuple, str]]

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state unknown")
        if self.stack_bottom not in self.stack_symbols:
            raise ValueError("bottom marker missing from stack alphabet")
        for (state, sym, top), (nxt, action, out) in self.transitions.items():
            if nxt not in self.states:
                raise ValueError("transition to unknown state")
            if action[0] not in (PUSH, POP, STAY, RESET):
                raise ValueError(f"bad stack action {action!r}")
            if action[0] == POP and top == self.stack_bottom:
                raise ValueError("bottom marker must never be popped")
            if not self.alphabet.contains_message(out):
                raise ValueError(f"output word {out!r} leaves the alphabet")

    def is_deterministic(self) -> bool:
        """At most one applicable transition per configuration. Dict-keyed
        tables are deterministic by construction; the scan re-checks keys."""
        return len(self.transitions) == len(set(self.transitions))


class PushdownContestant(Contestant):
    level = "2"

    def __init__(self, machine: PushdownMachine, name: str = "pushdown"):
        self.machine = machine
        self.alphabet = machine.alphabet
        self.name = name
        self.state = machine.initial
        self.stack = [machine.stack_bottom]

    def reset(self) -> None:
        self.state = self.machine.initial
        self.stack = [self.machine.stack_bottom]

    def _step(self, sym: str) -> str:
        key = (self.state, sym, self.stack[-1])
        rule = self.machine.transitions.get(key)
        if rule is None:
            raise ContestantFault(f"pushdown has no transition for {key!r}")
        nxt, action, out = rule
        if action[0] == PUSH:
            self.stack.append(action[1])
        elif action[0] == POP:
            self.stack.pop()
        elif action[0] == RESET:
            self.stack = [self.machine.stack_bottom]
        self.state = nxt
        return out

    def reply(self, query: str) -> str:
        if not self.alphabet.contains_message(query):
            raise ContestantFault(f"query {query!r} leaves the alphabet")
        out = [self._step(sym) for sym in query]
        out.append(self._step(self.alphabet.delimiter))
        return "".join(out)


def bracket_machine(alphabet: Alphabet, open_sym: str, close_sym: str) -> PushdownMachine:
    """Replies "1" to a round iff its query has equal open/close counts and
    no prefix with more closes than opens; the stack resets per round."""
    if open_sym == close_sym or open_sym not in alphabet.symbols \
            or close_sym not in alphabet.symbols:
        raise ValueError("open/close must be distinct alphabet symbols")
    bottom, counter = "Z", "A"
    transitions: dict = {}
    for top in (bottom, counter):
        transitions[("ok", open_sym, top)] = ("ok", (PUSH, counter), "")
        transitions[("bad", open_sym, top)] = ("bad", (STAY,), "")
        transitions[("bad", close_sym, top)] = ("bad", (STAY,), "")
        for sym in alphabet.symbols:
            if sym not in (open_sym, close_sym):
                transitions[("ok", sym, top)] = ("ok", (STAY,), "")
                transitions[("bad", sym, top)] = ("bad", (STAY,), "")
    transitions[("ok", close_sym, counter)] = ("ok", (POP,), "")
    transitions[("ok", close_sym, bottom)] = ("bad", (STAY,), "")
    delim = alphabet.delimiter
    transitions[("ok", delim, bottom)] = ("ok", (RESET,), "1")
    transitions[("ok", delim, counter)] = ("ok", (RESET,), "0")
    transitions[("bad", delim, bottom)] = ("ok", (RESET,), "0")
    transitions[("bad", delim, counter)] = ("ok", (RESET,), "0")
    return PushdownMachine(("ok", "bad"), alphabet, "ok", bottom,
                           (bottom, counter), transitions)


def bracket_contestant(alphabet: Alphabet, open_sym: str = "0",
                       close_sym: str = "1") -> PushdownContestant:
    return PushdownContestant(bracket_machine(alphabet, open_sym, close_sym),
                              name="bracket")


class BalanceBitProbe:
    """Per-symbol running-balance responder for the identification harness:
    after each symbol, emits "1" iff the prefix read so far is balanced."""

    def __init__(self, alphabet: Alphabet, open_sym: str = "0", close_sym: str = "1"):
        self.alphabet = alphabet
        self.open_sym = open_sym
        self.close_sym = close_sym
        self.reset()

    def reset(self) -> None:
        self.depth = 0
        self.broken = False

    def step(self, sym: str) -> str:
        if sym == self.open_sym:
            self.depth += 1
        elif sym == self.close_sym:
            if self.depth == 0:
                self.broken = True
            else:
                self.depth -= 1
        return "1" if (not self.broken and self.depth == 0) else "0"


# --- Turing dialogue contestants (level 0) -------------------------------------

class TuringContestant(Contestant):
    """Dialogue harness for a Turing machine with the prompt convention.

    The machine requests the next query by printing the reserved prompt
    symbol; the harness then reads its reply out of the emit region (the
    symbols between the nearest emit marker to the left of the prompt and the
    prompt itself), types the query over the prompt cell, and resumes it.
    """

    level = "0"

    def __init__(self, spec: TuringMachineSpec, alphabet: Alphabet,
                 prompt: str = "?", emit_marker: str = "!",
                 step_cap: int = 1_000_000, name: str = "turing"):
        if prompt in alphabet.symbols or emit_marker in alphabet.symbols:
            raise ValueError("prompt and emit marker must be reserved symbols")
        if prompt == emit_marker:
            raise ValueError("prompt and emit marker must differ")
        self.spec = spec
        self.alphabet = alphabet
        self.prompt = prompt
        self.emit_marker = emit_marker
        self.step_cap = step_cap
        self.name = name
        self.reset()

    def reset(self) -> None:
        self.tape = FlatTape(blank=self.spec.blank)
        self.state = self.spec.initial
        self.prompt_position = None
        self._run_to_prompt()  # bootstrap: discard the round-0 prompt's region

    def _run_to_prompt(self) -> str:
        for _ in range(self.step_cap):
            if self.state in self.spec.halting:
                raise ContestantFault("dialogue machine halted mid-round")
            rule = self.spec.transitions.get((self.state, self.tape.read()))
            if rule is None:
                raise ContestantFault("dialogue machine stalled mid-round")
            nxt, write, move = rule
            here = self.tape.position
            self.tape.write(write)
            self.tape.move(move)
            self.state = nxt
            if write == self.prompt:
                self.prompt_position = here
                return self._collect_reply(here)
        raise ContestantFault("dialogue machine exceeded its step cap")

    def _collect_reply(self, prompt_pos: int) -> str:
        reply: list[str] = []
        pos = prompt_pos - 1
        while True:
            sym = self.tape.cells.get(pos, self.spec.blank)
            if sym == self.emit_marker:
                break
            if pos < prompt_pos - self.step_cap:
                raise ContestantFault("emit marker missing before prompt")
            reply.append(sym)
            pos -= 1
        return "".join(reversed(reply))

    def reply(self, query: str) -> str:
        if not self.alphabet.contains_message(query):
            raise ContestantFault(f"query {query!r} leaves the alphabet")
        pos = self.prompt_position
        # Type the query over the prompt cell and resume reading there.
        self.tape.position = pos
        self.tape.write(self.spec.blank)
        self.tape.load(query, start=pos)
        self.tape.position = pos
        return self._run_to_prompt()


# --- oracles and oracle machines ------------------------------------------------

class Oracle:
    """Total membership predicate over strings; answers are memoized so the
    same string always gets the same answer."""

    def __init__(self, membership: Callable[[str], bool], name: str = "oracle"):
        self._membership = membership
        self.name = name
        self._memo: dict[str, bool] = {}

    def membership(self, text: str) -> bool:
        if text not in self._memo:
            self._memo[text] = bool(self._membership(text))
        return self._memo[text]


@dataclass(frozen=True)
class OracleMachine:
    """Turing machine extended with query states: entering one submits the
    current work-string (the non-blank tape window) to the oracle and branches
    on its bit, leaving tape and head untouched."""

    spec: TuringMachineSpec
    query_states: Mapping[str, tuple[str, str]]  # state -> (if-yes, if-no)

    def __post_init__(self):
        for state, (yes, no) in self.query_states.items():
            if state not in self.spec.states:
                raise ValueError(f"unknown query state {state!r}")
            if yes not in self.spec.states or no not in self.spec.states:
                raise ValueError(f"unknown branch target from {state!r}")
            for (src, _read) in self.spec.transitions:
                if src == state:
                    raise ValueError(f"query state {state!r} also has transitions")


def run_oracle_machine(machine: OracleMachine, oracle: Oracle, input_text: str,
                       step_limit: int):
    """Execute with oracle queries costing one step each."""
    if step_limit < 1:
        raise ValueError("step_limit must be >= 1")
    spec = machine.spec
    tape = FlatTape(blank=spec.blank)
    tape.load(input_text)
    state = spec.initial
    for step in range(step_limit + 1):
        if state in spec.halting:
            return Halted(state, step, tape.window()[1])
        if step == step_limit:
            return Running(step_limit)
        if state in machine.query_states:
            yes, no = machine.query_states[state]
            state = yes if oracle.membership(tape.window()[1]) else no
            continue
        rule = spec.transitions.get((state, tape.read()))
        if rule is None:
            return Halted(state, step, tape.window()[1])
        nxt, write, move = rule
        tape.write(write)
        tape.move(move)
        state = nxt
    return Running(step_limit)


def bounded_halting_oracle(step_budget: int) -> Oracle:
    """Membership(code) is true iff the encoded machine halts on empty input
    within the step budget; undecodable strings map to false.

    This is the decidable, step-bounded under-approximation of the exact
    halting set, which is not implementable."""
    if step_budget < 0:
        raise ValueError("step budget must be >= 0")
    from .specfiles import MalformedCode, decode_machine

    def membership(code: str) -> bool:
        try:
            spec = decode_machine(code)
        except MalformedCode:
            return False
        return isinstance(run_tm(spec, FlatTape(blank=spec.blank), "", step_budget),
                          Halted)

    return Oracle(membership, name=f"halts-within-{step_budget}")


class OracleContestant(Contestant):
    """Replies to each round with the oracle's bit on the query string."""

    level = "oracle"

    def __init__(self, oracle: Oracle, alphabet: Alphabet, name: str = "oracle"):
        self.oracle = oracle
        self.alphabet = alphabet
        self.name = name

    def reply(self, query: str) -> str:
        return "1" if self.oracle.membership(query) else "0"

    def reset(self) -> None:
        pass
