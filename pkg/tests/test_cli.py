"""The akbl command line: exit codes, output contracts, determinism."""
import json

import pytest

from aspectkbl.cli import main
import corpusio

WITH = corpusio.path("tiny_with_policies.akbl")
WITHOUT = corpusio.path("tiny_no_policies.akbl")
EQ1 = corpusio.path("eq1.obl")


def run(capsys, *argv):
    rc = main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def test_check_modes_and_exit_codes(capsys):
    rc, out, _ = run(capsys, "check", WITH, EQ1, "--mode", "exhaustive")
    assert rc == 0
    assert "holds: yes (2 states, 1 transitions checked)" in out

    rc, out, _ = run(capsys, "check", WITH, EQ1, "--mode", "static")
    assert rc == 0
    assert "certified: yes" in out

    rc, out, _ = run(capsys, "check", WITHOUT, EQ1, "--mode", "exhaustive")
    assert rc == 1
    assert "holds: no" in out
    assert "failing step: Olsen:r(Bob,PrivateNotes,bobtext)@EHDB" in out
    assert "unsatisfied: test(Doctor, Olsen)@ROLES" in out

    # the static route alone gives up on the open store
    rc, out, _ = run(capsys, "check", WITHOUT, EQ1, "--mode", "static")
    assert rc == 2
    assert "certified: no" in out
    assert "NotCertified" in out


def test_check_auto_falls_back_to_exploration(capsys):
    rc, out, _ = run(capsys, "check", WITHOUT, EQ1)
    assert rc == 1
    # both phases are reported
    assert "certified: no" in out
    assert "counterexample:" in out
    assert "failing step: Olsen:r(Bob,PrivateNotes,bobtext)@EHDB" in out

    rc, out, _ = run(capsys, "check", WITH, EQ1)
    assert rc == 0
    assert "certified: yes" in out
    assert "holds:" not in out          # no exploration was needed


def test_check_static_explanations(capsys):
    rc, out, _ = run(capsys, "check", WITH, EQ1, "--mode", "static",
                     "--explain-denied")
    assert rc == 0
    lines = out.splitlines()
    assert "CertifiedByEntailment Hansen: read(Bob, PrivateNotes, !content)@EHDB" in lines
    assert "  with [$u=Hansen]" in lines
    assert "  constraints: test(Doctor, Hansen)@ROLES" in lines
    assert "  source may evaluate to {bot}, target to {tt}" in lines
    assert "CertifiedDenied Olsen: read(Bob, PrivateNotes, !content)@EHDB" in lines
    assert "  source may evaluate to {tt}, target to {ff}" in lines


def test_check_json_shapes(capsys):
    rc, out, _ = run(capsys, "check", WITH, EQ1, "--mode", "static", "--json")
    doc = json.loads(out)
    assert rc == 0 and doc["certified"] is True

    rc, out, _ = run(capsys, "check", WITHOUT, EQ1, "--json")
    doc = json.loads(out)
    assert rc == 1
    assert doc["static"]["certified"] is False
    ex = doc["exhaustive"]
    assert ex["holds"] is False
    assert ex["witness"]["label"] == "Olsen:r(Bob,PrivateNotes,bobtext)@EHDB"
    assert ex["witness"]["path"] == []

    rc, out, _ = run(capsys, "check", WITH, EQ1, "--mode", "exhaustive",
                     "--json")
    doc = json.loads(out)
    assert rc == 0 and doc["holds"] is True and "witness" not in doc


def test_json_output_is_reproducible(capsys):
    first = run(capsys, "check", WITHOUT, EQ1, "--json")
    second = run(capsys, "check", WITHOUT, EQ1, "--json")
    assert first == second
    third = run(capsys, "lts", WITHOUT, "--json")
    fourth = run(capsys, "lts", WITHOUT, "--json")
    assert third == fourth


def test_lts_summary_exports_and_limits(capsys, tmp_path):
    rc, out, _ = run(capsys, "lts", WITHOUT)
    assert rc == 0
    assert out == "states: 6\ntransitions: 7\n"

    rc, out, _ = run(capsys, "lts", WITH)
    assert out == "states: 2\ntransitions: 1\n"

    dot_file = tmp_path / "tiny.dot"
    rc, out, _ = run(capsys, "lts", WITHOUT, "--dot", str(dot_file))
    text = dot_file.read_text()
    assert text.startswith("digraph lts {")
    assert text.count("->") == 7
    assert text.count("doublecircle") == 1

    rc, _, err = run(capsys, "lts", WITHOUT, "--max-states", "2")
    assert rc == 3
    assert "limit" in err

    data_only = tmp_path / "data.akbl"
    data_only.write_text("Shelf ::[true] <a, b>\n")
    rc, out, _ = run(capsys, "lts", str(data_only), "--json")
    doc = json.loads(out)
    assert len(doc["states"]) == 1 and doc["transitions"] == []


def test_trace_is_seeded_and_reproducible(capsys):
    rc, out, _ = run(capsys, "trace", WITHOUT, "--seed", "1")
    assert rc == 0
    labels = out.splitlines()
    assert labels[:3] == ["Hansen:r(Bob,PrivateNotes,bobtext)@EHDB",
                          "Hansen:o(Bob,PrivateNotes,bobtext)@Olsen",
                          "Olsen:r(Bob,PrivateNotes,bobtext)@EHDB"]
    assert labels[3].startswith("final: ")

    again = run(capsys, "trace", WITHOUT, "--seed", "1")
    assert (rc, out, "") == again

    different = any(run(capsys, "trace", WITHOUT, "--seed", str(s))[1] != out
                    for s in range(8))
    assert different


def test_trace_reports_denials(capsys):
    rc, out, _ = run(capsys, "trace", WITH, "--seed", "0",
                     "--explain-denied")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "blocked: Olsen:r(Bob,PrivateNotes,bobtext)@EHDB (top)"
    assert lines[1] == "Hansen:r(Bob,PrivateNotes,bobtext)@EHDB"
    assert "blocked: Hansen:o(Bob,PrivateNotes,bobtext)@Olsen (top)" in lines
    # one granted step, then the run is stuck
    assert sum(1 for l in lines if not l.startswith(("blocked:", "final:"))) == 1


def test_trace_on_a_still_network(capsys, tmp_path):
    still = tmp_path / "still.akbl"
    still.write_text("Shelf ::[true] <a>\n")
    rc, out, _ = run(capsys, "trace", str(still))
    assert rc == 0
    assert out == "final: Shelf ::[true] <a>\n"


def test_input_errors_exit_three(capsys, tmp_path):
    rc, _, err = run(capsys, "check", "no_such.akbl", EQ1)
    assert rc == 3 and "no such file" in err

    bad = tmp_path / "bad.akbl"
    bad.write_text("A ::[true out(k)@B . 0\n")
    rc, _, err = run(capsys, "check", str(bad), EQ1)
    assert rc == 3 and "error:" in err and "1:11" in err

    looping = tmp_path / "loop.akbl"
    looping.write_text("A ::[true] *(out(k)@A . in(k)@A . 0)\n")
    for argv in (("check", str(looping), EQ1), ("lts", str(looping)),
                 ("trace", str(looping))):
        rc, _, err = run(capsys, *argv)
        assert rc == 3
        assert "replication at A is outside the checkable fragment" in err

    mixed = tmp_path / "mixed.akbl"
    mixed.write_text("A ::[true] <k> || A ::[false] <v>\n")
    rc, _, err = run(capsys, "lts", str(mixed))
    assert rc == 3
    assert "location A carries inconsistent policies" in err
