"""Seeded generators for machines and transcripts used by experiments and tests."""

from __future__ import annotations

import random

from .dialogue import Alphabet, Round, Transcript
from .machines import Acceptor, MealyTransducer, minimize_transducer
from .tape import TuringMachineSpec


def random_transcript(rng: random.Random, alphabet: Alphabet,
                      max_rounds: int = 5, max_len: int = 6) -> Transcript:
    rounds = []
    for _ in range(rng.randint(0, max_rounds)):
        query = "".join(rng.choice(alphabet.symbols)
                        for _ in range(rng.randint(0, max_len)))
        reply = "".join(rng.choice(alphabet.symbols)
                        for _ in range(rng.randint(0, max_len)))
        rounds.append(Round(query, reply))
    return Transcript(tuple(rounds))


def random_mealy(rng: random.Random, n_states: int, alphabet: Alphabet,
                 max_out: int = 2) -> MealyTransducer:
    """Random transducer with exactly n_states states after minimization.

    Delimiter transitions follow the plain-contestant convention (empty
    self-loops). Retries until the draw is minimal and fully reachable.
    """
    states = tuple(f"q{i}" for i in range(n_states))
    for _ in range(10_000):
        transitions = {}
        outputs = {}
        for state in states:
            for sym in alphabet.symbols:
                transitions[(state, sym)] = rng.choice(states)
                outputs[(state, sym)] = "".join(
                    rng.choice(alphabet.symbols)
                    for _ in range(rng.randint(0, max_out)))
            transitions[(state, alphabet.delimiter)] = state
            outputs[(state, alphabet.delimiter)] = ""
        machine = MealyTransducer(states, alphabet, states[0], transitions, outputs)
        if len(minimize_transducer(machine).states) == n_states:
            return machine
    raise RuntimeError(f"no minimal {n_states}-state machine found")


def random_acceptor(rng: random.Random, max_states: int,
                    symbols: tuple[str, ...] = ("0", "1")) -> Acceptor:
    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    transitions = {(state, sym): rng.choice(states)
                   for state in states for sym in symbols}
    accepting = frozenset(s for s in states if rng.random() < 0.5)
    return Acceptor(states, symbols, states[0], transitions, accepting)


def random_small_tm(rng: random.Random) -> TuringMachineSpec:
    """Random 2-state machine from the bounded-halting enumeration family."""
    from .catalog import small_tm_family_spec
    keys = [("A", "_"), ("A", "1"), ("B", "_"), ("B", "1")]
    choice = {}
    for key in keys:
        choice[key] = (rng.choice(["A", "B", "H"]), rng.choice(["_", "1"]),
                       rng.choice(["L", "R"]))
    return small_tm_family_spec(choice)
