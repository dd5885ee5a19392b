"""Interrogation games over machine contestants across the Chomsky hierarchy."""

from .dialogue import (Alphabet, Ask, Contestant, ContestantFault, Declare,
                       DialogueError, Interrogator, Round, SessionOutcome,
                       Transcript, Verdict, check_determinism, dumps_transcript,
                       load_transcript, loads_transcript, run_session,
                       save_transcript)
from .machines import (Acceptor, BalanceBitProbe, MealyTransducer, Oracle,
                       OracleMachine, PushdownContestant, PushdownMachine,
                       TransducerContestant, TuringContestant,
                       bounded_halting_oracle, bracket_contestant,
                       bracket_machine, constant_transducer, echo_transducer,
                       minimize_transducer, parity_transducer,
                       run_oracle_machine, transducer_output, transducer_reply)
from .adversary import (DeterminismViolation, NoVerdict, TrickWitness,
                        hardcode_dialogue, lift_transducer,
                        pumping_counterexample, trick_below3, trick_level3,
                        witness_report)
from .identify import (ExceedsBound, Identified, ObservationTable,
                       QueryBudgetExceeded, distinguishing_evidence,
                       identification_report, learn_bounded, wmethod_suite)
from .tape import (CascadeTape, FlatTape, Halted, Halts, Loops, Running,
                   TuringMachineSpec, backend_equivalence,
                   decide_halting_bounded, new_cascade, run_tm)
from .specfiles import (MalformedCode, decode_machine, encode_machine,
                        load_machine, machine_from_doc, machine_to_doc,
                        save_machine)

__all__ = [name for name in dir() if not name.startswith("_")]
