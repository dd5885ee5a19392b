"""Bounded-state identification of a resettable contestant.

Active observation-table learning over fresh single-session probes. Under a
promise bound k the procedure either returns a hypothesis transducer with at
most k states that passed the bounded conformance suite, or hands back k+1
access prefixes whose recorded outputs are pairwise distinguishable, which no
machine with at most k states can realize.

The conformance suite alone is complete only against contestants that really
have at most k states, so before accepting a hypothesis the learner also
sweeps all words of length <= 2k: any machine with at most k states that is
wrong about the balanced-bracket behavior (or any other over-bound behavior
distinguishable at that depth) errs on such a word, which turns the promise
violation into a recorded counterexample instead of a false Identified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .dialogue import Alphabet
from .machines import MealyTransducer


class QueryBudgetExceeded(Exception):
    def __init__(self, limit: int):
        super().__init__(f"probe budget of {limit} symbols exhausted")
        self.limit = limit


@dataclass
class ObservationTable:
    """Access prefixes S, distinguishing suffixes E, and recorded outputs.

    entries[(u, e)] is the tuple of output words observed at the e-positions
    of the probe u+e; rows exist for every word in S and S·Sigma.
    """

    prefixes: list[str]
    suffixes: list[str]
    entries: dict[tuple[str, str], tuple[str, ...]]

    def row(self, word: str) -> tuple:
        return tuple(self.entries[(word, e)] for e in self.suffixes)


@dataclass(frozen=True)
class Identified:
    hypothesis: MealyTransducer
    queries_used: int
    probe_log: dict[str, tuple[str, ...]] = field(compare=False, default_factory=dict)


@dataclass(frozen=True)
class ExceedsBound:
    prefixes: tuple[str, ...]  # k+1 pairwise-distinguishable access prefixes
    evidence: tuple[tuple[str, str, str], ...]  # (prefix, prefix, suffix)
    queries_used: int
    probe_log: dict[str, tuple[str, ...]] = field(compare=False, default_factory=dict)


IdentifyOutcome = Identified | ExceedsBound


def distinguishing_evidence(table: ObservationTable) -> list[tuple[str, str, str]]:
    """For each pair of distinct-row prefixes, a suffix separating them."""
    reps: list[str] = []
    seen_rows = set()
    for prefix in sorted(set(table.prefixes), key=lambda w: (len(w), w)):
        row = table.row(prefix)
        if row not in seen_rows:
            seen_rows.add(row)
            reps.append(prefix)
    triples = []
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            u, v = reps[a], reps[b]
            for e in table.suffixes:
                if table.entries[(u, e)] != table.entries[(v, e)]:
                    triples.append((u, v, e))
                    break
    return triples


def _shortlex_words(symbols, max_len: int):
    for length in range(1, max_len + 1):
        for tup in product(symbols, repeat=length):
            yield "".join(tup)


def _hypothesis_output(machine: MealyTransducer, word: str) -> tuple[str, ...]:
    state = machine.initial
    out = []
    for sym in word:
        out.append(machine.outputs[(state, sym)])
        state = machine.transitions[(state, sym)]
    return tuple(out)


def _state_output(machine: MealyTransducer, state: str, word: str) -> tuple[str, ...]:
    out = []
    for sym in word:
        out.append(machine.outputs[(state, sym)])
        state = machine.transitions[(state, sym)]
    return tuple(out)


def _access_words(machine: MealyTransducer, symbols) -> dict[str, str]:
    """Shortest access word per state, breadth-first in symbol order."""
    access = {machine.initial: ""}
    queue = [machine.initial]
    while queue:
        state = queue.pop(0)
        for sym in symbols:
            nxt = machine.transitions[(state, sym)]
            if nxt not in access:
                access[nxt] = access[state] + sym
                queue.append(nxt)
    return access


def wmethod_suite(hypothesis: MealyTransducer, k: int,
                  alphabet: Alphabet) -> list[str]:
    """Bounded conformance suite: transition cover, middle words of length
    <= k - m, and a characterizing set. Any machine with <= k states agreeing
    with the (minimal, m <= k state) hypothesis on every word agrees on all
    words."""
    symbols = alphabet.symbols
    access = _access_words(hypothesis, symbols)
    states = list(access)
    m = len(states)
    if m > k:
        raise ValueError("hypothesis exceeds the state bound")

    cover = {""}
    for state in states:
        cover.add(access[state])
        for sym in symbols:
            cover.add(access[state] + sym)

    middles = [""]
    middles += list(_shortlex_words(symbols, k - m)) if k > m else []

    # Lexicographically smallest separating suffix per state pair, shortest first.
    separators: set[str] = set()
    for a in range(m):
        for b in range(a + 1, m):
            for word in _shortlex_words(symbols, m):
                if _state_output(hypothesis, states[a], word) != \
                        _state_output(hypothesis, states[b], word):
                    separators.add(word)
                    break
    character = sorted(separators, key=lambda w: (len(w), w)) or [""]

    suite = {p + mid + w for p in cover for mid in middles for w in character}
    suite.discard("")
    return sorted(suite, key=lambda w: (len(w), w))


class _ProbeHarness:
    """Fresh single-session probes with caching and budget accounting."""

    def __init__(self, contestant, cap_symbols: int):
        self.contestant = contestant
        self.cap_symbols = cap_symbols
        self.cache: dict[str, tuple[str, ...]] = {}
        self.symbols_used = 0

    def probe(self, word: str) -> tuple[str, ...]:
        if word in self.cache:
            return self.cache[word]
        self.symbols_used += len(word)
        if self.symbols_used > self.cap_symbols:
            raise QueryBudgetExceeded(self.cap_symbols)
        self.contestant.reset()
        outputs = tuple(self.contestant.step(sym) for sym in word)
        self.cache[word] = outputs
        return outputs

    @property
    def queries_used(self) -> int:
        return len(self.cache)


def learn_bounded(contestant, k: int, alphabet: Alphabet,
                  cap_symbols: int = 10 ** 6) -> IdentifyOutcome:
    """Identify the contestant as a <= k-state transducer or refute the bound.

    The contestant must expose reset() and step(symbol) -> output word; each
    membership query is realized as a fresh probe session.
    """
    if k < 1:
        raise ValueError("state bound must be >= 1")
    symbols = alphabet.symbols
    harness = _ProbeHarness(contestant, cap_symbols)

    prefixes: list[str] = [""]
    suffixes: list[str] = list(symbols)
    entries: dict[tuple[str, str], tuple[str, ...]] = {}

    def entry(u: str, e: str) -> tuple[str, ...]:
        if (u, e) not in entries:
            entries[(u, e)] = harness.probe(u + e)[len(u):]
        return entries[(u, e)]

    def row(u: str) -> tuple:
        return tuple(entry(u, e) for e in suffixes)

    def table() -> ObservationTable:
        for u in list(prefixes) + [p + s for p in prefixes for s in symbols]:
            for e in suffixes:
                entry(u, e)
        return ObservationTable(list(prefixes), list(suffixes), dict(entries))

    def over_bound() -> ExceedsBound | None:
        words = sorted(set(prefixes) | {p + s for p in prefixes for s in symbols},
                       key=lambda w: (len(w), w))
        reps: list[str] = []
        rows_seen = set()
        for w in words:
            r = row(w)
            if r not in rows_seen:
                rows_seen.add(r)
                reps.append(w)
        if len(reps) <= k:
            return None
        reps = reps[:k + 1]
        tbl = ObservationTable(reps, list(suffixes), dict(entries))
        return ExceedsBound(tuple(reps), tuple(distinguishing_evidence(tbl)),
                            harness.queries_used, dict(harness.cache))

    def close_and_settle():
        while True:
            exceeded = over_bound()
            if exceeded is not None:
                return exceeded
            s_rows = {row(p) for p in prefixes}
            extension = next(
                (p + s for p in prefixes for s in symbols
                 if row(p + s) not in s_rows), None)
            if extension is not None:
                prefixes.append(extension)
                continue
            # consistency: equal S-rows must extend equally
            clash = None
            for i, p1 in enumerate(prefixes):
                for p2 in prefixes[i + 1:]:
                    if row(p1) != row(p2):
                        continue
                    for s in symbols:
                        for e in suffixes:
                            if entry(p1 + s, e) != entry(p2 + s, e):
                                clash = s + e
                                break
                        if clash:
                            break
                    if clash:
                        break
                if clash:
                    break
            if clash:
                suffixes.append(clash)
                continue
            return None

    while True:
        settled = close_and_settle()
        if isinstance(settled, ExceedsBound):
            return settled

        # hypothesis from distinct S-rows (distinct rows are distinct states,
        # reachable by construction, pairwise distinguished: minimal)
        reps: dict[tuple, str] = {}
        for p in sorted(prefixes, key=lambda w: (len(w), w)):
            reps.setdefault(row(p), p)
        names = {r: str(i) for i, r in enumerate(reps)}
        transitions = {}
        outputs = {}
        sigma_index = {s: i for i, s in enumerate(suffixes)}
        for r, p in reps.items():
            for s in symbols:
                transitions[(names[r], s)] = names[row(p + s)]
                outputs[(names[r], s)] = entry(p, s)[0]
        for name in names.values():
            transitions[(name, alphabet.delimiter)] = name
            outputs[(name, alphabet.delimiter)] = ""
        hypothesis = MealyTransducer(
            tuple(names[r] for r in reps), alphabet,
            names[row("")], transitions, outputs)

        counterexample = None
        checks = wmethod_suite(hypothesis, k, alphabet) \
            + list(_shortlex_words(symbols, 2 * k))
        for word in checks:
            if harness.probe(word) != _hypothesis_output(hypothesis, word):
                counterexample = word
                break
        if counterexample is None:
            return Identified(hypothesis, harness.queries_used, dict(harness.cache))
        for i in range(1, len(counterexample) + 1):
            prefix = counterexample[:i]
            if prefix not in prefixes:
                prefixes.append(prefix)


def identification_report(outcome: IdentifyOutcome) -> dict:
    """Document with outcome, hypothesis or evidence, query count, probe log."""
    from .specfiles import machine_to_doc

    base = {
        "queries_used": outcome.queries_used,
        "probe_log": {word: list(out) for word, out in
                      sorted(outcome.probe_log.items())},
    }
    if isinstance(outcome, Identified):
        base["outcome"] = "Identified"
        base["hypothesis"] = machine_to_doc(outcome.hypothesis)
    else:
        base["outcome"] = "ExceedsBound"
        base["prefixes"] = list(outcome.prefixes)
        base["evidence"] = [list(t) for t in outcome.evidence]
    return base
