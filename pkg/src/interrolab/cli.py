"""Command-line driver: run sessions, build trick witnesses, identify
contestants, exercise the cascade tape, pump acceptors, decide bounded
halting, and serve the session API."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog as cat
from .adversary import (NoVerdict, pumping_counterexample, trick_below3,
                        trick_level3, witness_report)
from .dialogue import run_session, save_transcript
from .identify import Identified, identification_report, learn_bounded
from .machines import (Acceptor, MealyTransducer, PushdownContestant,
                       PushdownMachine, TransducerContestant, echo_transducer)
from .specfiles import load_machine, machine_to_doc, save_machine
from .tape import (CascadeTape, Halted, Halts, backend_equivalence,
                   decide_halting_bounded, run_tm)


def _contestant(name_or_path: str):
    if name_or_path in cat.catalog():
        return cat.build_contestant(name_or_path)
    machine = load_machine(name_or_path)
    if isinstance(machine, MealyTransducer):
        return TransducerContestant(machine, name=os.path.basename(name_or_path))
    if isinstance(machine, PushdownMachine):
        return PushdownContestant(machine, name=os.path.basename(name_or_path))
    raise SystemExit(f"cannot use {name_or_path} as a contestant")


def _turing_spec(name_or_path: str):
    corpus = cat.tm_corpus()
    if name_or_path in corpus:
        return corpus[name_or_path][0], corpus[name_or_path][1]
    return load_machine(name_or_path), ""


def cmd_run(args) -> int:
    interrogator = cat.build_interrogator(args.interrogator)
    contestant = _contestant(args.contestant)
    outcome = run_session(interrogator, contestant, args.max_rounds)
    if outcome.declared:
        print(f"verdict: {outcome.verdict.value} after {len(outcome.transcript)} rounds")
    else:
        print(f"exhausted after {outcome.exhausted_after} rounds, no verdict")
    for i, rnd in enumerate(outcome.transcript.rounds):
        print(f"  round {i}: {rnd.query!r} -> {rnd.reply!r}")
    if args.transcript:
        save_transcript(args.transcript, cat.ALPHABET, outcome.transcript)
        print(f"transcript written to {args.transcript}")
    return 0


def cmd_trick(args) -> int:
    interrogator = cat.build_interrogator(args.interrogator)
    try:
        if args.mode == "level3":
            machine = (load_machine(args.seed) if args.seed
                       else echo_transducer(cat.ALPHABET))
            if not isinstance(machine, MealyTransducer):
                raise SystemExit(f"{args.seed} is not a transducer spec")
            witness = trick_level3(interrogator, machine, args.budget)
            doc = witness_report(witness, cat.ALPHABET,
                                 original_doc=machine_to_doc(machine))
        else:
            seed = _contestant(args.seed or "bracket")
            witness = trick_below3(interrogator, seed, args.budget)
            doc = witness_report(witness, cat.ALPHABET)
    except NoVerdict as exc:
        print(f"no verdict: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def cmd_identify(args) -> int:
    target = cat.build_probe_target(args.contestant)
    outcome = learn_bounded(target, args.k, cat.ALPHABET)
    report = identification_report(outcome)
    if not args.probe_log:
        report.pop("probe_log")
    print(json.dumps(report, indent=2, sort_keys=True))
    if isinstance(outcome, Identified) and args.hypothesis:
        save_machine(args.hypothesis, outcome.hypothesis)
        print(f"hypothesis written to {args.hypothesis}", file=sys.stderr)
    return 0


def cmd_cascade(args) -> int:
    spec, default_input = _turing_spec(args.machine)
    input_text = args.input if args.input is not None else default_input
    ok = backend_equivalence(spec, input_text, args.steps, args.capacity)
    tape = CascadeTape(args.capacity, blank=spec.blank)
    outcome = run_tm(spec, tape, input_text, args.steps)
    if isinstance(outcome, Halted):
        print(f"halted in state {outcome.state} after {outcome.steps} steps; "
              f"window {outcome.window!r}; chain length {len(tape.cells)}")
    else:
        print(f"still running after {outcome.steps} steps; "
              f"chain length {len(tape.cells)}")
    print(f"flat/cascade equivalence: {'true' if ok else 'FALSE'}")
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(tape.dump_log())
        print(f"message trace written to {args.trace}")
    return 0 if ok else 1


def cmd_pump(args) -> int:
    acceptor = load_machine(args.acceptor)
    if not isinstance(acceptor, Acceptor):
        raise SystemExit(f"{args.acceptor} is not an acceptor spec")
    word = pumping_counterexample(acceptor, args.open, args.close)
    opens = word.count(args.open)
    closes = word.count(args.close)
    verdict = "accepts" if acceptor.accepts(word) else "rejects"
    print(word)
    print(f"# acceptor {verdict} it; opens={opens} closes={closes}",
          file=sys.stderr)
    return 0


def cmd_halting(args) -> int:
    spec, default_input = _turing_spec(args.machine)
    input_text = args.input if args.input is not None else default_input
    decision = decide_halting_bounded(spec, args.m, input_text)
    if isinstance(decision, Halts):
        print(f"halts after {decision.steps} steps on a {args.m}-cell tape")
    else:
        print(f"loops: configuration at step {decision.first} recurs at "
              f"step {decision.second}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn
    from .service import create_app
    app = create_app(data_dir=args.data_dir)
    host, _, port = args.bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="interrolab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="interrogator vs contestant session")
    p.add_argument("--interrogator", required=True)
    p.add_argument("--contestant", required=True)
    p.add_argument("--max-rounds", type=int, default=256)
    p.add_argument("--transcript", help="write the transcript file here")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("trick", help="defeat a deterministic interrogator")
    p.add_argument("--interrogator", required=True)
    p.add_argument("--mode", choices=["level3", "below3"], required=True)
    p.add_argument("--seed", help="seed machine file or contestant id")
    p.add_argument("--budget", type=int, default=256)
    p.set_defaults(func=cmd_trick)

    p = sub.add_parser("identify", help="bounded-state identification")
    p.add_argument("--contestant", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--hypothesis", help="write the hypothesis spec here")
    p.add_argument("--probe-log", action="store_true",
                   help="include the full probe log in the report")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("cascade", help="run a machine on the cascade tape")
    p.add_argument("--machine", required=True, help="corpus name or spec file")
    p.add_argument("--capacity", type=int, default=16)
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--input")
    p.add_argument("--trace", help="write the message log here")
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("pump", help="pumping counterexample for an acceptor")
    p.add_argument("--acceptor", required=True, help="acceptor spec file")
    p.add_argument("--open", default="0")
    p.add_argument("--close", default="1")
    p.set_defaults(func=cmd_pump)

    p = sub.add_parser("halting", help="decide halting on a clamped tape")
    p.add_argument("--machine", required=True, help="corpus name or spec file")
    p.add_argument("--m", type=int, required=True, help="tape length")
    p.add_argument("--input")
    p.set_defaults(func=cmd_halting)

    p = sub.add_parser("serve", help="start the session service")
    p.add_argument("--bind", default="127.0.0.1:8000")
    p.add_argument("--data-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
