"""Machine-spec documents: a JSON key-value format for every machine kind,
plus the canonical string encoding of Turing machine specs.

The canonical encoding is the spec's document serialized with sorted keys and
no insignificant whitespace; decode(encode(spec)) is the identity and distinct
specs get distinct codes.
"""

from __future__ import annotations

import json

from .dialogue import Alphabet
from .machines import Acceptor, MealyTransducer, PushdownMachine
from .tape import LEFT, RIGHT, TuringMachineSpec


class MalformedCode(ValueError):
    pass


def _alphabet_doc(alphabet: Alphabet) -> dict:
    return {"symbols": list(alphabet.symbols), "delimiter": alphabet.delimiter}


def _alphabet_from_doc(doc) -> Alphabet:
    return Alphabet(tuple(doc["symbols"]), doc["delimiter"])


def mealy_to_doc(machine: MealyTransducer) -> dict:
    return {
        "kind": "mealy",
        "states": list(machine.states),
        "alphabet": _alphabet_doc(machine.alphabet),
        "initial": machine.initial,
        "transitions": sorted(
            [state, sym, nxt, machine.outputs[(state, sym)]]
            for (state, sym), nxt in machine.transitions.items()),
    }


def mealy_from_doc(doc) -> MealyTransducer:
    alphabet = _alphabet_from_doc(doc["alphabet"])
    transitions = {}
    outputs = {}
    for state, sym, nxt, out in doc["transitions"]:
        transitions[(state, sym)] = nxt
        outputs[(state, sym)] = out
    return MealyTransducer(tuple(doc["states"]), alphabet, doc["initial"],
                           transitions, outputs)


def acceptor_to_doc(acceptor: Acceptor) -> dict:
    return {
        "kind": "acceptor",
        "states": list(acceptor.states),
        "symbols": list(acceptor.symbols),
        "initial": acceptor.initial,
        "accepting": sorted(acceptor.accepting),
        "transitions": sorted(
            [state, sym, nxt] for (state, sym), nxt in acceptor.transitions.items()),
    }


def acceptor_from_doc(doc) -> Acceptor:
    transitions = {(state, sym): nxt for state, sym, nxt in doc["transitions"]}
    return Acceptor(tuple(doc["states"]), tuple(doc["symbols"]), doc["initial"],
                    transitions, frozenset(doc["accepting"]))


def pushdown_to_doc(machine: PushdownMachine) -> dict:
    return {
        "kind": "pushdown",
        "states": list(machine.states),
        "alphabet": _alphabet_doc(machine.alphabet),
        "initial": machine.initial,
        "stack_bottom": machine.stack_bottom,
        "stack_symbols": list(machine.stack_symbols),
        "transitions": sorted(
            [state, sym, top, nxt, list(action), out]
            for (state, sym, top), (nxt, action, out) in machine.transitions.items()),
    }


def pushdown_from_doc(doc) -> PushdownMachine:
    transitions = {}
    for state, sym, top, nxt, action, out in doc["transitions"]:
        transitions[(state, sym, top)] = (nxt, tuple(action), out)
    return PushdownMachine(tuple(doc["states"]), _alphabet_from_doc(doc["alphabet"]),
                           doc["initial"], doc["stack_bottom"],
                           tuple(doc["stack_symbols"]), transitions)


def turing_to_doc(spec: TuringMachineSpec) -> dict:
    return {
        "kind": "turing",
        "states": list(spec.states),
        "initial": spec.initial,
        "halting": sorted(spec.halting),
        "blank": spec.blank,
        "tape_alphabet": list(spec.tape_alphabet),
        "transitions": sorted(
            [state, read, nxt, write, move]
            for (state, read), (nxt, write, move) in spec.transitions.items()),
    }


def turing_from_doc(doc) -> TuringMachineSpec:
    transitions = {}
    for entry in doc["transitions"]:
        state, read, nxt, write, move = entry
        if (state, read) in transitions:
            raise MalformedCode(f"duplicate transition key ({state!r}, {read!r})")
        if move not in (LEFT, RIGHT):
            raise MalformedCode(f"bad move {move!r}")
        transitions[(state, read)] = (nxt, write, move)
    try:
        return TuringMachineSpec(tuple(doc["states"]), doc["initial"],
                                 frozenset(doc["halting"]), doc["blank"],
                                 tuple(doc["tape_alphabet"]), transitions)
    except ValueError as exc:
        raise MalformedCode(str(exc)) from exc


_TO_DOC = {
    MealyTransducer: mealy_to_doc,
    Acceptor: acceptor_to_doc,
    PushdownMachine: pushdown_to_doc,
    TuringMachineSpec: turing_to_doc,
}
_FROM_DOC = {
    "mealy": mealy_from_doc,
    "acceptor": acceptor_from_doc,
    "pushdown": pushdown_from_doc,
    "turing": turing_from_doc,
}


def machine_to_doc(machine) -> dict:
    return _TO_DOC[type(machine)](machine)


def machine_from_doc(doc):
    try:
        kind = doc["kind"]
        return _FROM_DOC[kind](doc)
    except MalformedCode:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCode(f"bad machine document: {exc}") from exc


def save_machine(path, machine) -> None:
    with open(path, "w") as fh:
        json.dump(machine_to_doc(machine), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_machine(path):
    with open(path) as fh:
        return machine_from_doc(json.load(fh))


def encode_machine(spec: TuringMachineSpec) -> str:
    """Canonical code of a Turing machine spec: sorted keys, no whitespace."""
    return json.dumps(turing_to_doc(spec), sort_keys=True, separators=(",", ":"))


def decode_machine(code: str) -> TuringMachineSpec:
    try:
        doc = json.loads(code)
    except json.JSONDecodeError as exc:
        raise MalformedCode(f"not a machine code: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("kind") != "turing":
        raise MalformedCode("machine code must be a turing document")
    try:
        return turing_from_doc(doc)
    except MalformedCode:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCode(f"bad machine code: {exc}") from exc
