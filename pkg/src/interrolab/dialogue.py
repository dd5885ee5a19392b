"""Round-based interrogation sessions: messages, transcripts, verdicts, replay.

A session alternates between an interrogator (which sees only the transcript
so far and either asks a query or declares a verdict) and a contestant (which
answers each query with a reply over a shared alphabet).
"""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass


class DialogueError(Exception):
    pass


class ContestantFault(DialogueError):
    """A contestant produced a reply containing symbols outside its alphabet."""


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of printable symbols plus a reserved round delimiter."""

    symbols: tuple[str, ...]
    delimiter: str = "#"

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate symbols in alphabet")
        for sym in self.symbols:
            if len(sym) != 1 or not sym.isprintable():
                raise ValueError(f"bad alphabet symbol: {sym!r}")
        if len(self.delimiter) != 1 or not self.delimiter.isprintable():
            raise ValueError(f"bad delimiter: {self.delimiter!r}")
        if self.delimiter in self.symbols:
            raise ValueError("delimiter must not be an alphabet symbol")

    @property
    def extended(self) -> tuple[str, ...]:
        """Symbols plus the round delimiter, in canonical order."""
        return self.symbols + (self.delimiter,)

    def contains_message(self, text: str) -> bool:
        return all(ch in self.symbols for ch in text)


@dataclass(frozen=True)
class Round:
    query: str
    reply: str


@dataclass(frozen=True)
class Transcript:
    """Append-only ordered list of (query, reply) rounds."""

    rounds: tuple[Round, ...] = ()

    def __len__(self) -> int:
        return len(self.rounds)

    def extend(self, rnd: Round) -> "Transcript":
        return Transcript(self.rounds + (rnd,))

    def prefix(self, n: int) -> "Transcript":
        return Transcript(self.rounds[:n])

    @property
    def queries(self) -> tuple[str, ...]:
        return tuple(r.query for r in self.rounds)

    @property
    def replies(self) -> tuple[str, ...]:
        return tuple(r.reply for r in self.rounds)


class Verdict(enum.Enum):
    LEVEL3 = "Level3"
    BELOW_LEVEL3 = "BelowLevel3"


@dataclass(frozen=True)
class Ask:
    query: str


@dataclass(frozen=True)
class Declare:
    verdict: Verdict


InterrogatorStep = Ask | Declare


@dataclass(frozen=True)
class SessionOutcome:
    """Either a declared verdict or exhaustion of the round budget."""

    transcript: Transcript
    verdict: Verdict | None = None
    exhausted_after: int | None = None

    def __post_init__(self):
        if (self.verdict is None) == (self.exhausted_after is None):
            raise ValueError("outcome must be declared xor exhausted")
        if self.exhausted_after is not None and len(self.transcript) != self.exhausted_after:
            raise ValueError("exhausted outcome must carry exactly budget rounds")

    @property
    def declared(self) -> bool:
        return self.verdict is not None


class Contestant(ABC):
    """Stateful responder: one reply per query, state persisting across rounds."""

    alphabet: Alphabet
    level: str  # one of "3", "2", "0", "oracle", "human-proxy"
    name: str = "contestant"

    @abstractmethod
    def reply(self, query: str) -> str:
        ...

    @abstractmethod
    def reset(self) -> None:
        """Return to the round-0 initial state."""

    def describe(self) -> str:
        return f"{self.name} (level {self.level})"


class Interrogator(ABC):
    """Deterministic transcript-to-next-step function."""

    name: str = "interrogator"

    @abstractmethod
    def next_step(self, transcript: Transcript) -> InterrogatorStep:
        ...


def run_session(interrogator: Interrogator, contestant: Contestant,
                max_rounds: int = 256) -> SessionOutcome:
    """Alternate queries and replies until a verdict or the round budget.

    The contestant must be freshly initialized (callers re-running a
    contestant should reset() it first).
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    transcript = Transcript()
    for _ in range(max_rounds):
        step = interrogator.next_step(transcript)
        if isinstance(step, Declare):
            return SessionOutcome(transcript, verdict=step.verdict)
        reply = contestant.reply(step.query)
        if not contestant.alphabet.contains_message(reply):
            raise ContestantFault(
                f"reply {reply!r} from {contestant.describe()} leaves the alphabet")
        transcript = transcript.extend(Round(step.query, reply))
    # One last chance to declare on the full transcript.
    step = interrogator.next_step(transcript)
    if isinstance(step, Declare):
        return SessionOutcome(transcript, verdict=step.verdict)
    return SessionOutcome(transcript, exhausted_after=max_rounds)


def check_determinism(interrogator: Interrogator, transcript: Transcript,
                      final_verdict: Verdict | None = None) -> bool:
    """Replay every proper prefix and confirm the recorded next step.

    If final_verdict is given, the interrogator must also re-declare it on
    the full transcript.
    """
    for i, rnd in enumerate(transcript.rounds):
        step = interrogator.next_step(transcript.prefix(i))
        if not isinstance(step, Ask) or step.query != rnd.query:
            return False
    if final_verdict is not None:
        step = interrogator.next_step(transcript)
        if not isinstance(step, Declare) or step.verdict != final_verdict:
            return False
    return True


# --- transcript file format -------------------------------------------------
#
# Line-oriented, tab-separated. Header carries the alphabet and delimiter;
# each following line is: round index, query, reply. Round-trips bit-exactly.

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


def _escape(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def _unescape(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if i + 1 >= len(text) or text[i + 1] not in _UNESCAPES:
                raise ValueError(f"bad escape in transcript field: {text!r}")
            out.append(_UNESCAPES[text[i + 1]])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def dumps_transcript(alphabet: Alphabet, transcript: Transcript) -> str:
    lines = ["alphabet\t%s\tdelimiter\t%s" % (
        _escape("".join(alphabet.symbols)), _escape(alphabet.delimiter))]
    for i, rnd in enumerate(transcript.rounds):
        lines.append("%d\t%s\t%s" % (i, _escape(rnd.query), _escape(rnd.reply)))
    return "\n".join(lines) + "\n"


def loads_transcript(text: str) -> tuple[Alphabet, Transcript]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    if not lines:
        raise ValueError("empty transcript document")
    header = lines[0].split("\t")
    if len(header) != 4 or header[0] != "alphabet" or header[2] != "delimiter":
        raise ValueError(f"bad transcript header: {lines[0]!r}")
    alphabet = Alphabet(tuple(_unescape(header[1])), _unescape(header[3]))
    rounds = []
    for n, line in enumerate(lines[1:]):
        fields = line.split("\t")
        if len(fields) != 3 or fields[0] != str(n):
            raise ValueError(f"bad transcript record: {line!r}")
        rounds.append(Round(_unescape(fields[1]), _unescape(fields[2])))
    return alphabet, Transcript(tuple(rounds))


def save_transcript(path, alphabet: Alphabet, transcript: Transcript) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(dumps_transcript(alphabet, transcript))


def load_transcript(path) -> tuple[Alphabet, Transcript]:
    with open(path, newline="") as fh:
        return loads_transcript(fh.read())
