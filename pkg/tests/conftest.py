"""Shared fixtures and independent oracles used across the test suite.

Oracles here are deliberately written from scratch (counting, direct
simulation) so they cannot share bugs with the implementations under test.
"""

import pytest

from interrolab import Alphabet

ALPHABET = Alphabet(("0", "1"), "#")


@pytest.fixture
def alphabet() -> Alphabet:
    return ALPHABET


def balance_bit(word: str, open_sym: str = "0", close_sym: str = "1") -> str:
    """Count-based oracle: '1' iff word is a balanced bracket string."""
    depth = 0
    for ch in word:
        if ch == open_sym:
            depth += 1
        elif ch == close_sym:
            depth -= 1
            if depth < 0:
                return "0"
    return "1" if depth == 0 else "0"


def parity_bits(word: str, counted: str = "0") -> str:
    """Per-symbol oracle: bit i is 1 iff the count of `counted` in the first
    i+1 symbols is odd."""
    out = []
    count = 0
    for ch in word:
        if ch == counted:
            count += 1
        out.append("1" if count % 2 else "0")
    return "".join(out)


def clamped_halts_within(spec, m: int, input_text: str, budget: int):
    """Brute-force halting oracle for the m-cell clamped machine: simulate
    step-by-step and report the halt step, or None if still running."""
    tape = list(input_text) + [spec.blank] * (m - len(input_text))
    state = spec.initial
    head = 0
    for step in range(budget + 1):
        if state in spec.halting:
            return step
        rule = spec.transitions.get((state, tape[head]))
        if rule is None:
            return step
        if step == budget:
            return None
        nxt, write, move = rule
        tape[head] = write
        if move == "R":
            if head + 1 < m:
                head += 1
        elif head > 0:
            head -= 1
        state = nxt
    return None


def flat_halts_within(spec, input_text: str, budget: int):
    """Brute-force unbounded-tape halting oracle; returns the halt step or None."""
    cells = {}
    for i, ch in enumerate(input_text):
        if ch != spec.blank:
            cells[i] = ch
    state = spec.initial
    head = 0
    for step in range(budget + 1):
        if state in spec.halting:
            return step
        rule = spec.transitions.get((state, cells.get(head, spec.blank)))
        if rule is None:
            return step
        if step == budget:
            return None
        nxt, write, move = rule
        if write == spec.blank:
            cells.pop(head, None)
        else:
            cells[head] = write
        head += 1 if move == "R" else -1
        state = nxt
    return None
