"""Bounded-state identification: promise case, refutation case, suite shape."""

import random

import pytest

from interrolab import (ExceedsBound, Identified, QueryBudgetExceeded,
                        TransducerContestant, learn_bounded,
                        minimize_transducer, wmethod_suite)
from interrolab.catalog import ALPHABET, build_probe_target
from interrolab.generate import random_mealy
from interrolab.identify import identification_report
from interrolab.machines import (BalanceBitProbe, echo_transducer,
                                 parity_transducer, transducer_output)

from conftest import balance_bit


class TestPromiseCase:
    def test_echo_is_identified_with_one_state(self):
        target = TransducerContestant(echo_transducer(ALPHABET))
        outcome = learn_bounded(target, 1, ALPHABET)
        assert isinstance(outcome, Identified)
        assert len(outcome.hypothesis.states) == 1

    def test_parity_is_identified_with_two_states(self):
        parity = parity_transducer(ALPHABET, counted="0", one="1", zero="0")
        outcome = learn_bounded(TransducerContestant(parity), 2, ALPHABET)
        assert isinstance(outcome, Identified)
        assert minimize_transducer(outcome.hypothesis) == \
            minimize_transducer(parity)

    def test_slack_in_the_bound_is_fine(self):
        parity = parity_transducer(ALPHABET, counted="0", one="1", zero="0")
        outcome = learn_bounded(TransducerContestant(parity), 5, ALPHABET)
        assert isinstance(outcome, Identified)
        assert len(minimize_transducer(outcome.hypothesis).states) == 2

    def test_seeded_minimal_targets_are_recovered(self):
        rng = random.Random(314)
        for _ in range(15):
            k = rng.randint(1, 5)
            m = rng.randint(1, k)
            machine = random_mealy(rng, m, ALPHABET)
            outcome = learn_bounded(TransducerContestant(machine), k, ALPHABET)
            assert isinstance(outcome, Identified), (k, m)
            assert minimize_transducer(outcome.hypothesis) == \
                minimize_transducer(machine)

    def test_hypothesis_agrees_on_probe_log(self):
        parity = parity_transducer(ALPHABET, counted="0", one="1", zero="0")
        outcome = learn_bounded(TransducerContestant(parity), 2, ALPHABET)
        for word, outputs in outcome.probe_log.items():
            assert transducer_output(outcome.hypothesis, word) == \
                "".join(outputs)


class TestRefutationCase:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_bracket_exceeds_every_small_bound(self, k):
        outcome = learn_bounded(BalanceBitProbe(ALPHABET), k, ALPHABET)
        assert isinstance(outcome, ExceedsBound)
        assert len(outcome.prefixes) == k + 1

    def test_evidence_is_verified_against_count_oracle(self):
        outcome = learn_bounded(BalanceBitProbe(ALPHABET), 3, ALPHABET)
        assert isinstance(outcome, ExceedsBound)
        # Every evidence triple names two prefixes with genuinely different
        # behavior on the suffix, per an independent count-based oracle.
        assert len(outcome.evidence) == len(outcome.prefixes) * \
            (len(outcome.prefixes) - 1) // 2
        for u, v, e in outcome.evidence:
            bits_u = [balance_bit((u + e)[:len(u) + i + 1])
                      for i in range(len(e))]
            bits_v = [balance_bit((v + e)[:len(v) + i + 1])
                      for i in range(len(e))]
            assert bits_u != bits_v, (u, v, e)

    def test_catalog_probe_target_for_bracket(self):
        outcome = learn_bounded(build_probe_target("bracket"), 2, ALPHABET)
        assert isinstance(outcome, ExceedsBound)


class TestWmethodSuite:
    def test_suite_distinguishes_bounded_impostors(self):
        # Any 2-state machine differing from parity must fail some suite word.
        parity = parity_transducer(ALPHABET, counted="0", one="1", zero="0")
        suite = wmethod_suite(minimize_transducer(parity), 2, ALPHABET)
        impostor = parity_transducer(ALPHABET, counted="1", one="1", zero="0")
        assert any(transducer_output(parity, w) !=
                   transducer_output(impostor, w) for w in suite)

    def test_suite_grows_with_state_slack(self):
        echo = minimize_transducer(echo_transducer(ALPHABET))
        small = wmethod_suite(echo, 1, ALPHABET)
        large = wmethod_suite(echo, 3, ALPHABET)
        assert set(small) < set(large)

    def test_rejects_hypothesis_over_bound(self):
        parity = minimize_transducer(
            parity_transducer(ALPHABET, counted="0", one="1", zero="0"))
        with pytest.raises(ValueError):
            wmethod_suite(parity, 1, ALPHABET)


class TestHarness:
    def test_budget_exhaustion_raises(self):
        parity = parity_transducer(ALPHABET, counted="0", one="1", zero="0")
        with pytest.raises(QueryBudgetExceeded):
            learn_bounded(TransducerContestant(parity), 5, ALPHABET,
                          cap_symbols=10)

    def test_rejects_nonpositive_bound(self):
        with pytest.raises(ValueError):
            learn_bounded(BalanceBitProbe(ALPHABET), 0, ALPHABET)

    def test_report_shapes(self):
        parity = parity_transducer(ALPHABET, counted="0", one="1", zero="0")
        good = identification_report(
            learn_bounded(TransducerContestant(parity), 2, ALPHABET))
        assert good["outcome"] == "Identified"
        assert good["hypothesis"]["kind"] == "mealy"
        bad = identification_report(
            learn_bounded(BalanceBitProbe(ALPHABET), 1, ALPHABET))
        assert bad["outcome"] == "ExceedsBound"
        assert len(bad["prefixes"]) == 2
