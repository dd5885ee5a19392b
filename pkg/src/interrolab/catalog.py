"""Built-in catalog: contestants, interrogators, and the Turing machine corpus."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .adversary import lift_transducer
from .dialogue import (Alphabet, Ask, Contestant, Declare, Interrogator,
                       InterrogatorStep, Transcript, Verdict)
from .machines import (BalanceBitProbe, Oracle, OracleContestant,
                       TransducerContestant, bracket_contestant,
                       constant_transducer, echo_transducer, parity_transducer)
from .tape import TuringMachineSpec

ALPHABET = Alphabet(("0", "1"), "#")


# --- interrogators -----------------------------------------------------------

class ScriptedInterrogator(Interrogator):
    """Asks a fixed query list, then declares a fixed verdict (or keeps
    cycling its queries forever when the verdict is None)."""

    def __init__(self, name: str, queries: list[str],
                 verdict: Verdict | None):
        self.name = name
        self.queries = queries
        self.verdict = verdict

    def next_step(self, transcript: Transcript) -> InterrogatorStep:
        n = len(transcript)
        if n < len(self.queries):
            return Ask(self.queries[n])
        if self.verdict is None:
            return Ask(self.queries[n % len(self.queries)] if self.queries else "01")
        return Declare(self.verdict)


class ReplyJudgeInterrogator(Interrogator):
    """Asks fixed probes, then declares by comparing the replies against an
    expectation: BelowLevel3 when they match, Level3 otherwise (or the
    reverse)."""

    def __init__(self, name: str, probes: list[str], expected: list[str],
                 on_match: Verdict, on_mismatch: Verdict):
        self.name = name
        self.probes = probes
        self.expected = expected
        self.on_match = on_match
        self.on_mismatch = on_mismatch

    def next_step(self, transcript: Transcript) -> InterrogatorStep:
        n = len(transcript)
        if n < len(self.probes):
            return Ask(self.probes[n])
        matched = list(transcript.replies[:len(self.expected)]) == self.expected
        return Declare(self.on_match if matched else self.on_mismatch)


class EchoCheckInterrogator(Interrogator):
    """Asks fixed probes and declares Level3 iff every reply echoed its query."""

    def __init__(self, name: str, probes: list[str]):
        self.name = name
        self.probes = probes

    def next_step(self, transcript: Transcript) -> InterrogatorStep:
        n = len(transcript)
        if n < len(self.probes):
            return Ask(self.probes[n])
        echoed = all(r.reply == r.query for r in transcript.rounds)
        return Declare(Verdict.LEVEL3 if echoed else Verdict.BELOW_LEVEL3)


class SeededRandomInterrogator(Interrogator):
    """Pseudo-random prober; the seed is part of its definition, so its next
    step is still a pure function of the transcript."""

    def __init__(self, name: str, seed: int, rounds: int = 3):
        self.name = name
        self.seed = seed
        self.rounds = rounds

    def next_step(self, transcript: Transcript) -> InterrogatorStep:
        n = len(transcript)
        if n < self.rounds:
            rng = random.Random(f"{self.seed}:{n}")
            length = rng.randint(2, 6)
            return Ask("".join(rng.choice(ALPHABET.symbols) for _ in range(length)))
        # balance bits are single symbols; length-2+ echoes can never match
        bits = []
        for rnd in transcript.rounds:
            depth, broken = 0, False
            for ch in rnd.query:
                depth += 1 if ch == "0" else -1
                broken = broken or depth < 0
            bits.append("1" if depth == 0 and not broken else "0")
        matched = list(transcript.replies) == bits
        return Declare(Verdict.BELOW_LEVEL3 if matched else Verdict.LEVEL3)


class WallClockInterrogator(Interrogator):
    """Deliberately non-deterministic: its first query reads the clock.
    Ships only as a negative example for replay checking."""

    name = "wall-clock"

    def next_step(self, transcript: Transcript) -> InterrogatorStep:
        if len(transcript) < 1:
            return Ask("01" if time.time_ns() % 2 else "0011")
        return Declare(Verdict.LEVEL3)


# --- Turing machine corpus -----------------------------------------------------

def writer_tm() -> TuringMachineSpec:
    """Writes 1, 0, 1 moving right, then halts."""
    return TuringMachineSpec(
        states=("w0", "w1", "w2", "H"), initial="w0", halting=frozenset({"H"}),
        blank="_", tape_alphabet=("_", "0", "1"),
        transitions={
            ("w0", "_"): ("w1", "1", "R"),
            ("w1", "_"): ("w2", "0", "R"),
            ("w2", "_"): ("H", "1", "R"),
        })


def oscillator_tm() -> TuringMachineSpec:
    """Bounces left and right forever; never halts."""
    return TuringMachineSpec(
        states=("a", "b"), initial="a", halting=frozenset(),
        blank="_", tape_alphabet=("_", "0", "1"),
        transitions={
            ("a", "_"): ("b", "_", "R"),
            ("b", "_"): ("a", "_", "L"),
            ("a", "1"): ("b", "1", "R"),
            ("b", "1"): ("a", "1", "L"),
            ("a", "0"): ("b", "0", "R"),
            ("b", "0"): ("a", "0", "L"),
        })


def increment_tm() -> TuringMachineSpec:
    """Appends one 1 to a unary number: the 4-rule increment machine."""
    return TuringMachineSpec(
        states=("scan", "back", "H"), initial="scan", halting=frozenset({"H"}),
        blank="_", tape_alphabet=("_", "0", "1"),
        transitions={
            ("scan", "1"): ("scan", "1", "R"),
            ("scan", "_"): ("back", "1", "L"),
            ("back", "1"): ("back", "1", "L"),
            ("back", "_"): ("H", "_", "R"),
        })


def busy_two_tm() -> TuringMachineSpec:
    """Two-state busy beaver: halts after six steps with four 1s."""
    return TuringMachineSpec(
        states=("A", "B", "H"), initial="A", halting=frozenset({"H"}),
        blank="_", tape_alphabet=("_", "0", "1"),
        transitions={
            ("A", "_"): ("B", "1", "R"),
            ("A", "1"): ("B", "1", "L"),
            ("B", "_"): ("A", "1", "L"),
            ("B", "1"): ("H", "1", "R"),
        })


def flipper_tm() -> TuringMachineSpec:
    """Flips 0 <-> 1 across its input, then halts at the right end."""
    return TuringMachineSpec(
        states=("flip", "H"), initial="flip", halting=frozenset({"H"}),
        blank="_", tape_alphabet=("_", "0", "1"),
        transitions={
            ("flip", "0"): ("flip", "1", "R"),
            ("flip", "1"): ("flip", "0", "R"),
            ("flip", "_"): ("H", "_", "R"),
        })


def halt_now_tm() -> TuringMachineSpec:
    """Starts in a halting state: halts in zero steps."""
    return TuringMachineSpec(
        states=("H",), initial="H", halting=frozenset({"H"}),
        blank="_", tape_alphabet=("_", "0", "1"), transitions={})


def tm_corpus() -> dict[str, tuple[TuringMachineSpec, str]]:
    """Corpus machines with their standard inputs."""
    return {
        "writer": (writer_tm(), ""),
        "oscillator": (oscillator_tm(), ""),
        "increment": (increment_tm(), "111"),
        "busy-two": (busy_two_tm(), ""),
        "flipper": (flipper_tm(), "0110"),
    }


def small_tm_family_spec(choice: dict) -> TuringMachineSpec:
    """A member of the exhaustive 2-state enumeration family: states A, B
    (plus halt), tape alphabet {0, 1, blank}, rules on reads {blank, 1}
    writing {blank, 1}."""
    transitions = {}
    for (state, read), (nxt, write, move) in choice.items():
        if nxt == "H":
            continue  # undefined transition = halt; H folds into stalling
        transitions[(state, read)] = (nxt, write, move)
    return TuringMachineSpec(
        states=("A", "B"), initial="A", halting=frozenset(),
        blank="_", tape_alphabet=("_", "0", "1"), transitions=transitions)


def small_tm_family():
    """All 20736 members of the enumeration family."""
    from itertools import product
    keys = [("A", "_"), ("A", "1"), ("B", "_"), ("B", "1")]
    options = [(nxt, write, move)
               for nxt in ("A", "B", "H") for write in ("_", "1")
               for move in ("L", "R")]
    for combo in product(options, repeat=len(keys)):
        yield small_tm_family_spec(dict(zip(keys, combo)))


# --- catalog -----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str  # "contestant" | "interrogator"
    level: str | None  # contestants only: "3", "2", "0", "oracle", "human-proxy"
    description: str
    factory: object

    def build(self):
        return self.factory()


def _contestants() -> list[CatalogEntry]:
    echo = echo_transducer(ALPHABET)
    parity = parity_transducer(ALPHABET, counted="0", one="1", zero="0")
    constant = constant_transducer(ALPHABET, "")
    entries = [
        CatalogEntry("echo", "contestant", "3", "echoes every query",
                     lambda: TransducerContestant(echo, name="echo")),
        CatalogEntry("parity", "contestant", "3",
                     "emits the running parity of 0-counts, one bit per symbol",
                     lambda: TransducerContestant(parity, name="parity")),
        CatalogEntry("constant", "contestant", "3", "replies empty to everything",
                     lambda: TransducerContestant(constant, name="constant")),
        CatalogEntry("bracket", "contestant", "2",
                     "answers 1 iff the round's query is a balanced bracket string",
                     lambda: bracket_contestant(ALPHABET)),
        CatalogEntry("echo-lift2", "contestant", "2",
                     "pushdown re-implementation of echo",
                     lambda: lift_transducer(echo, 2)),
        CatalogEntry("echo-lift0", "contestant", "0",
                     "Turing re-implementation of echo",
                     lambda: lift_transducer(echo, 0)),
        CatalogEntry("parity-lift2", "contestant", "2",
                     "pushdown re-implementation of parity",
                     lambda: lift_transducer(parity, 2)),
        CatalogEntry("parity-lift0", "contestant", "0",
                     "Turing re-implementation of parity",
                     lambda: lift_transducer(parity, 0)),
        CatalogEntry("even-length-oracle", "contestant", "oracle",
                     "answers membership of the query in the even-length set",
                     lambda: OracleContestant(
                         Oracle(lambda s: len(s) % 2 == 0, "even-length"),
                         ALPHABET, name="even-length-oracle")),
    ]
    return entries


def _interrogators() -> list[CatalogEntry]:
    specs = [
        ("always-level3",
         "declares Level3 immediately",
         lambda: ScriptedInterrogator("always-level3", [], Verdict.LEVEL3)),
        ("level3-after-1",
         "asks one probe, then declares Level3 regardless",
         lambda: ScriptedInterrogator("level3-after-1", ["01"], Verdict.LEVEL3)),
        ("always-below3",
         "declares BelowLevel3 immediately",
         lambda: ScriptedInterrogator("always-below3", [], Verdict.BELOW_LEVEL3)),
        ("below3-after-2",
         "asks two probes, then declares BelowLevel3 regardless",
         lambda: ScriptedInterrogator("below3-after-2", ["0", "1"],
                                      Verdict.BELOW_LEVEL3)),
        ("echo-checker",
         "declares Level3 iff three probes were echoed back",
         lambda: EchoCheckInterrogator("echo-checker", ["01", "0011", "0"])),
        ("bracket-prober",
         "declares BelowLevel3 iff the balance bits for its probes are right",
         lambda: ReplyJudgeInterrogator(
             "bracket-prober", ["01", "0011", "0"], ["1", "1", "0"],
             Verdict.BELOW_LEVEL3, Verdict.LEVEL3)),
        ("seeded-prober",
         "seeded pseudo-random probes, then judges balance bits",
         lambda: SeededRandomInterrogator("seeded-prober", seed=20240817)),
        ("never-declares",
         "keeps probing forever",
         lambda: ScriptedInterrogator("never-declares", ["01"], None)),
    ]
    return [CatalogEntry(name, "interrogator", None, desc, factory)
            for name, desc, factory in specs]


def catalog() -> dict[str, CatalogEntry]:
    entries = _contestants() + _interrogators()
    by_id = {e.id: e for e in entries}
    if len(by_id) != len(entries):
        raise RuntimeError("duplicate catalog ids")
    return by_id


def contestant_pairs() -> list[tuple[str, str]]:
    """Extensionally equal (transducer, lift) pairs for the hidden-identity game."""
    return [("echo", "echo-lift2"), ("echo", "echo-lift0"),
            ("parity", "parity-lift2"), ("parity", "parity-lift0")]


def build_contestant(entry_id: str) -> Contestant:
    entry = catalog().get(entry_id)
    if entry is None:
        raise KeyError(f"unknown catalog id {entry_id!r}")
    if entry.kind != "contestant":
        raise KeyError(f"{entry_id} is not a contestant")
    return entry.build()


def build_probe_target(entry_id: str):
    """Symbol-level probe target (reset/step) for the identification harness.

    Transducer contestants probe as themselves; the bracket contestant probes
    under the per-symbol running-balance output convention."""
    if entry_id == "bracket":
        return BalanceBitProbe(ALPHABET)
    target = build_contestant(entry_id)
    if not hasattr(target, "step"):
        raise KeyError(f"{entry_id} has no symbol-level probe interface")
    return target


def build_interrogator(entry_id: str) -> Interrogator:
    entry = catalog().get(entry_id)
    if entry is None:
        raise KeyError(f"unknown catalog id {entry_id!r}")
    if entry.kind != "interrogator":
        raise KeyError(f"{entry_id} is not an interrogator")
    return entry.build()
