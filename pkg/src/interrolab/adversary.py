"""Constructive defeats of deterministic interrogators.

Two constructions do the work: a fixed finite dialogue hard-coded into a
trie-shaped transducer, and a transducer re-implemented at a lower level
(pushdown wrapper, or a Turing machine interpreting its tables) with
extensionally identical replies. Each trick runs a full second session and
verifies the dialogue actually repeats rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dialogue import (Alphabet, Contestant, Interrogator, SessionOutcome,
                       Transcript, Verdict, dumps_transcript, run_session)
from .machines import (STAY, Acceptor, MealyTransducer, PushdownContestant,
                       PushdownMachine, TransducerContestant, TuringContestant)
from .tape import LEFT, RIGHT, TuringMachineSpec


class NoVerdict(Exception):
    """The interrogator never produced the verdict this trick needs."""

    def __init__(self, budget: int):
        super().__init__(f"no usable verdict within {budget} rounds")
        self.budget = budget


class DeterminismViolation(Exception):
    """The re-run session diverged: the interrogator is not deterministic."""


@dataclass(frozen=True)
class TrickWitness:
    claim_violated: str  # "Level3Recognition" | "BelowLevel3Recognition"
    original: str
    clone: str
    transcript_original: Transcript
    transcript_clone: Transcript
    verdict: Verdict

    def __post_init__(self):
        if self.transcript_original != self.transcript_clone:
            raise ValueError("witness transcripts must be identical")


def hardcode_dialogue(transcript: Transcript, alphabet: Alphabet) -> MealyTransducer:
    """Compile a fixed dialogue into a transducer that replays it exactly.

    The construction is a trie over the delimiter-joined query stream
    x1 # x2 # ... xn #; reply i is emitted on the delimiter transition that
    closes round i, and every off-trie transition falls into a sink state that
    emits empty words forever. State count <= total query length + rounds + 2.
    """
    for rnd in transcript.rounds:
        if not (alphabet.contains_message(rnd.query)
                and alphabet.contains_message(rnd.reply)):
            raise ValueError("transcript messages leave the alphabet")

    stream: list[tuple[str, str]] = []  # (input symbol, output word)
    for rnd in transcript.rounds:
        for sym in rnd.query:
            stream.append((sym, ""))
        stream.append((alphabet.delimiter, rnd.reply))

    sink = "sink"
    if not stream:
        states = (sink,)
        transitions = {(sink, sym): sink for sym in alphabet.extended}
        outputs = {(sink, sym): "" for sym in alphabet.extended}
        return MealyTransducer(states, alphabet, sink, transitions, outputs)

    path = [f"p{i}" for i in range(len(stream) + 1)]
    states = tuple(path) + (sink,)
    transitions = {}
    outputs = {}
    for state in states:
        for sym in alphabet.extended:
            transitions[(state, sym)] = sink
            outputs[(state, sym)] = ""
    for i, (sym, out) in enumerate(stream):
        transitions[(path[i], sym)] = path[i + 1]
        outputs[(path[i], sym)] = out
    return MealyTransducer(states, alphabet, path[0], transitions, outputs)


# --- lifting a transducer to lower Chomsky levels -------------------------------

def _lift_pushdown(machine: MealyTransducer) -> PushdownContestant:
    """Pushdown wrapper that ignores its stack and mirrors the transducer."""
    bottom = "Z"
    transitions = {}
    for (state, sym), nxt in machine.transitions.items():
        transitions[(state, sym, bottom)] = (nxt, (STAY,), machine.outputs[(state, sym)])
    pda = PushdownMachine(machine.states, machine.alphabet, machine.initial,
                          bottom, (bottom,), transitions)
    return PushdownContestant(pda, name="lifted-transducer")


def _pick_reserved(taken: set[str], count: int) -> list[str]:
    pool = "_!?X@$%&*<>~^|;:,."
    picked = [ch for ch in pool if ch not in taken]
    if len(picked) < count:
        raise ValueError("alphabet leaves too few reserved tape symbols")
    return picked[:count]


def _lift_turing(machine: MealyTransducer) -> TuringContestant:
    """Build a Turing machine that interprets the transducer's tables.

    Per round the tape holds the typed query; the machine consumes it left to
    right (marking consumed cells), appends each transition's output word to
    the emit region at the frontier, takes the delimiter transition at end of
    query, and prints the prompt to request the next round.
    """
    alphabet = machine.alphabet
    syms = alphabet.symbols
    delim = alphabet.delimiter
    blank, marker, prompt, consumed = _pick_reserved(set(syms), 4)

    trans: dict[tuple[str, str], tuple[str, str, str]] = {}

    def read_state(q):
        return f"read|{q}"

    def ret_state(q):
        return f"ret|{q}"

    def emit_chain(prefix: str, word: str, done: tuple[str, str, str]):
        """Transitions writing `word` rightward over blanks, then `done`
        (the action taken on the blank cell after the word)."""
        for i in range(len(word)):
            trans[(f"{prefix}|{i}", blank)] = (f"{prefix}|{i + 1}", word[i], RIGHT)
        trans[(f"{prefix}|{len(word)}", blank)] = done

    trans[("init0", blank)] = ("init1", marker, RIGHT)
    trans[("init1", blank)] = (read_state(machine.initial), prompt, LEFT)

    for q in machine.states:
        out_d = machine.outputs[(q, delim)]
        next_d = machine.transitions[(q, delim)]
        # End of query: take the delimiter transition, then print the prompt.
        emit_chain(f"emitD|{q}", out_d, (read_state(next_d), prompt, LEFT))
        trans[(read_state(q), blank)] = (f"emitD|{q}|0", marker, RIGHT)
        trans[(read_state(q), marker)] = (f"seekD|{q}", marker, RIGHT)
        for tau in syms:
            trans[(f"seekD|{q}", tau)] = (f"seekD|{q}", tau, RIGHT)
        trans[(f"seekD|{q}", blank)] = trans[(f"emitD|{q}|0", blank)]

        # Return from the frontier to the cell after the consumed block.
        for tau in syms + (marker,):
            trans[(ret_state(q), tau)] = (ret_state(q), tau, LEFT)
        trans[(ret_state(q), consumed)] = (read_state(q), consumed, RIGHT)

        for sigma in syms:
            out = machine.outputs[(q, sigma)]
            nxt = machine.transitions[(q, sigma)]
            trans[(read_state(q), sigma)] = (f"seek1|{q}|{sigma}", consumed, RIGHT)
            emit_chain(f"emit|{q}|{sigma}", out, (ret_state(nxt), blank, LEFT))
            for tau in syms:
                trans[(f"seek1|{q}|{sigma}", tau)] = (f"seek1|{q}|{sigma}", tau, RIGHT)
            trans[(f"seek1|{q}|{sigma}", marker)] = (f"seek2|{q}|{sigma}", marker, RIGHT)
            trans[(f"seek1|{q}|{sigma}", blank)] = (f"emit|{q}|{sigma}|0", marker, RIGHT)
            for tau in syms:
                trans[(f"seek2|{q}|{sigma}", tau)] = (f"seek2|{q}|{sigma}", tau, RIGHT)
            trans[(f"seek2|{q}|{sigma}", blank)] = trans[(f"emit|{q}|{sigma}|0", blank)]

    states = tuple(sorted({s for s, _ in trans} | {t for t, _, _ in trans.values()}))
    spec = TuringMachineSpec(
        states=states,
        initial="init0",
        halting=frozenset(),
        blank=blank,
        tape_alphabet=tuple(sorted(set(syms) | {blank, marker, prompt, consumed})),
        transitions=trans,
    )
    return TuringContestant(spec, alphabet, prompt=prompt, emit_marker=marker,
                            name="lifted-transducer")


def lift_transducer(machine: MealyTransducer, target_level: int) -> Contestant:
    """Contestant at Chomsky level 2 or 0 extensionally identical to the
    transducer on every query sequence."""
    if target_level == 2:
        return _lift_pushdown(machine)
    if target_level == 0:
        return _lift_turing(machine)
    raise ValueError("lift targets level 2 or level 0")


# --- tricking interrogators ------------------------------------------------------

def _rerun_and_witness(interrogator: Interrogator, first: SessionOutcome,
                       clone: Contestant, budget: int, claim: str,
                       original_desc: str, alphabet: Alphabet) -> TrickWitness:
    second = run_session(interrogator, clone, budget)
    same_dialogue = (dumps_transcript(alphabet, first.transcript)
                     == dumps_transcript(alphabet, second.transcript))
    if not same_dialogue or second.verdict != first.verdict:
        raise DeterminismViolation(
            "re-run session diverged from the recorded dialogue")
    return TrickWitness(
        claim_violated=claim,
        original=original_desc,
        clone=clone.describe(),
        transcript_original=first.transcript,
        transcript_clone=second.transcript,
        verdict=first.verdict,
    )


def trick_level3(interrogator: Interrogator, seed: MealyTransducer,
                 budget: int) -> TrickWitness:
    """Defeat a 'this is a transducer' verdict: once the interrogator declares
    Level3 against the seed, a lower-level clone replays the very same
    dialogue and draws the same (now wrong) verdict."""
    original = TransducerContestant(seed)
    outcome = run_session(interrogator, original, budget)
    if outcome.verdict != Verdict.LEVEL3:
        raise NoVerdict(budget)
    clone = lift_transducer(seed, 2)
    return _rerun_and_witness(interrogator, outcome, clone, budget,
                              "Level3Recognition", original.describe(),
                              seed.alphabet)


def trick_below3(interrogator: Interrogator, seed: Contestant,
                 budget: int) -> TrickWitness:
    """Defeat a 'this is below level 3' verdict: the finite dialogue that led
    to it is hard-coded into a transducer, which then replays it and draws the
    same (now wrong) verdict."""
    seed.reset()
    outcome = run_session(interrogator, seed, budget)
    if outcome.verdict != Verdict.BELOW_LEVEL3:
        raise NoVerdict(budget)
    hardcoded = hardcode_dialogue(outcome.transcript, seed.alphabet)
    clone = TransducerContestant(hardcoded, name="hardcoded-dialogue")
    return _rerun_and_witness(interrogator, outcome, clone, budget,
                              "BelowLevel3Recognition", seed.describe(),
                              seed.alphabet)


# --- pumping-lemma counterexamples ------------------------------------------------

def pumping_counterexample(acceptor: Acceptor, open_sym: str = "0",
                           close_sym: str = "1") -> str:
    """A string of length <= 2*|states| on which an acceptor claimed to decide
    the balanced-bracket language is provably wrong.

    By pigeonhole some open^i and open^j (i < j <= |states|) land in the same
    state, so the acceptor answers identically on open^i close^j and
    open^j close^j although exactly one of them is balanced.
    """
    k = len(acceptor.states)
    seen: dict[str, int] = {}
    i = j = None
    state = acceptor.initial
    for count in range(k + 1):
        if state in seen:
            i, j = seen[state], count
            break
        seen[state] = count
        state = acceptor.transitions[(state, open_sym)]
    assert i is not None and j is not None  # pigeonhole over <= k states
    unbalanced = open_sym * i + close_sym * j
    balanced = open_sym * j + close_sym * j
    # Same acceptor answer on both; return the misclassified one.
    return unbalanced if acceptor.accepts(unbalanced) else balanced


def witness_report(witness: TrickWitness, alphabet: Alphabet,
                   original_doc=None, clone_doc=None) -> dict:
    """Structured export embedding both transcripts and machine specs."""
    return {
        "claim_violated": witness.claim_violated,
        "verdict": witness.verdict.value,
        "original": {"description": witness.original, "machine": original_doc},
        "clone": {"description": witness.clone, "machine": clone_doc},
        "transcript_original": dumps_transcript(alphabet, witness.transcript_original),
        "transcript_clone": dumps_transcript(alphabet, witness.transcript_clone),
    }
