"""Command-line driver: every subcommand plus failure diagnostics."""

import json

import pytest

from interrolab.catalog import ALPHABET
from interrolab.cli import main
from interrolab.machines import Acceptor, parity_transducer
from interrolab.specfiles import save_machine
from interrolab.dialogue import load_transcript


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRun:
    def test_session_with_verdict(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--interrogator", "echo-checker",
                               "--contestant", "echo")
        assert code == 0
        assert "verdict: Level3 after 3 rounds" in out

    def test_transcript_file_output(self, capsys, tmp_path):
        path = tmp_path / "t.tsv"
        code, _, _ = run_cli(capsys, "run", "--interrogator", "bracket-prober",
                             "--contestant", "bracket", "--transcript",
                             str(path))
        assert code == 0
        alphabet, transcript = load_transcript(path)
        assert alphabet == ALPHABET
        assert transcript.replies == ("1", "1", "0")

    def test_exhaustion_is_reported(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--interrogator",
                               "never-declares", "--contestant", "echo",
                               "--max-rounds", "4")
        assert code == 0
        assert "exhausted after 4 rounds" in out

    def test_spec_file_contestant(self, capsys, tmp_path):
        path = tmp_path / "parity.json"
        save_machine(path, parity_transducer(ALPHABET, "0", "1", "0"))
        code, out, _ = run_cli(capsys, "run", "--interrogator",
                               "bracket-prober", "--contestant", str(path))
        assert code == 0

    def test_unknown_ids_fail_with_diagnostic(self, capsys):
        code, _, err = run_cli(capsys, "run", "--interrogator", "nope",
                               "--contestant", "echo")
        assert code == 2
        assert "error:" in err and "nope" in err


class TestTrick:
    def test_level3_witness_json(self, capsys):
        code, out, _ = run_cli(capsys, "trick", "--interrogator",
                               "echo-checker", "--mode", "level3")
        assert code == 0
        doc = json.loads(out)
        assert doc["claim_violated"] == "Level3Recognition"
        assert doc["transcript_original"] == doc["transcript_clone"]

    def test_below3_witness_json(self, capsys):
        code, out, _ = run_cli(capsys, "trick", "--interrogator",
                               "bracket-prober", "--mode", "below3",
                               "--seed", "bracket")
        assert code == 0
        doc = json.loads(out)
        assert doc["claim_violated"] == "BelowLevel3Recognition"

    def test_no_verdict_exits_nonzero(self, capsys):
        code, _, err = run_cli(capsys, "trick", "--interrogator",
                               "never-declares", "--mode", "level3",
                               "--budget", "8")
        assert code == 1
        assert "no verdict" in err


class TestIdentify:
    def test_identified_report(self, capsys, tmp_path):
        hyp = tmp_path / "hyp.json"
        code, out, _ = run_cli(capsys, "identify", "--contestant", "parity",
                               "--k", "2", "--hypothesis", str(hyp))
        assert code == 0
        doc = json.loads(out)
        assert doc["outcome"] == "Identified"
        assert "probe_log" not in doc  # omitted unless requested
        assert json.loads(hyp.read_text())["kind"] == "mealy"

    def test_exceeds_bound_report(self, capsys):
        code, out, _ = run_cli(capsys, "identify", "--contestant", "bracket",
                               "--k", "3", "--probe-log")
        assert code == 0
        doc = json.loads(out)
        assert doc["outcome"] == "ExceedsBound"
        assert len(doc["prefixes"]) == 4
        assert doc["probe_log"]


class TestCascade:
    def test_corpus_machine(self, capsys, tmp_path):
        trace = tmp_path / "trace.tsv"
        code, out, _ = run_cli(capsys, "cascade", "--machine", "writer",
                               "--capacity", "1", "--trace", str(trace))
        assert code == 0
        assert "flat/cascade equivalence: true" in out
        assert trace.read_text()  # non-empty message log

    def test_spec_file_machine(self, capsys, tmp_path):
        from interrolab.catalog import flipper_tm
        path = tmp_path / "flipper.json"
        save_machine(path, flipper_tm())
        code, out, _ = run_cli(capsys, "cascade", "--machine", str(path),
                               "--input", "0110", "--steps", "100")
        assert code == 0
        assert "window '1001'" in out


class TestPump:
    def test_counterexample_for_acceptor_file(self, capsys, tmp_path):
        acc = Acceptor(("s",), ("0", "1"), "s",
                       {("s", "0"): "s", ("s", "1"): "s"}, frozenset({"s"}))
        path = tmp_path / "acc.json"
        save_machine(path, acc)
        code, out, err = run_cli(capsys, "pump", "--acceptor", str(path))
        assert code == 0
        word = out.strip()
        assert set(word) <= {"0", "1"} and len(word) <= 2
        assert "accepts" in err

    def test_malformed_spec_fails_cleanly(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "acceptor"}')
        code, _, err = run_cli(capsys, "pump", "--acceptor", str(path))
        assert code == 2
        assert "error:" in err


class TestHalting:
    def test_halts(self, capsys):
        code, out, _ = run_cli(capsys, "halting", "--machine", "writer",
                               "--m", "5")
        assert code == 0
        assert "halts after 3 steps" in out

    def test_loops(self, capsys):
        code, out, _ = run_cli(capsys, "halting", "--machine", "oscillator",
                               "--m", "4")
        assert code == 0
        assert "loops:" in out


def test_missing_subcommand_is_an_argparse_error(capsys):
    with pytest.raises(SystemExit):
        main([])
