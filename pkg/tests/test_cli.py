"""Golden-file tests for the command line front end.

Each case runs inside ``tests/golden/inputs`` and is compared with
``tests/golden/<case>.txt``.  Set ``TIGHTTREES_REGOLD=1`` to rewrite the
expected files after an intentional output change.
"""
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from tighttrees.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run
from tighttrees.hypergraph import parse_hypergraph

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"

CASES = {
    "shadow-p43": "shadow --input p43.txt --json",
    "weights-k4": "weights --input k4-3.txt --json",
    "weights-k4-text": "weights --input k4-3.txt",
    "is-tight-tree-p43": "is-tight-tree --tree p43.txt --json",
    "is-tight-tree-no": "is-tight-tree --tree twoedges.txt --json",
    "partition-p43": "partition --tree p43.txt --json",
    "trunk-p43": "trunk --tree p43.txt --json",
    "enumerate-3-3": "enumerate-trees --r 3 --t 3 --json",
    "embed-k6": "embed --input k6-3.txt --tree p43.txt --json",
    "embed-k5-absent": "embed --input k5-3.txt --tree p43.txt --json",
    "embed-trunk-below": "embed-trunk --input k6-3.txt --tree trunk2.txt --json",
    "embed-small-k6": "embed-small --input k6-3.txt --tree p43.txt --json",
    "embed-small-s4": "embed-small --input k5-2.txt --tree s4.txt --json",
    "turan-p43-n5": "turan --n 5 --tree p43.txt --json",
    "turan-p43-n6": "turan --n 6 --tree p43.txt --json",
    "turan-budget": "turan --n 7 --tree p43.txt --budget 40 --json",
    "beta-p43-n5": "beta --n 5 --tree p43.txt --json",
    "verify-kalai-n5": "verify-kalai --n 5 --tree p43.txt --json",
    "verify-shadow-ekr7": "verify-shadow --input ekr7.txt --tree p43.txt --coeff 1/1 --json",
    "verify-shadow-k6": "verify-shadow --input k6-3.txt --tree p43.txt --coeff 1 --json",
    "verify-shadow-fail": "verify-shadow --input k5-3.txt --tree twoedges.txt --coeff 1/2 --json",
    "construct-complete": "construct complete --n 5 --r 3 --json",
    "construct-ekr": "construct ekr --n 6 --r 3 --json",
    "construct-tournament": "construct tournament --n 9 --arcs cyclic3.arcs --json",
    "construct-tournament-sink": "construct tournament --n 6 --arcs onearc.arcs --json",
    "construct-cliques": "construct cliques --n 8 --t 4 --json",
    "construct-packing-grid": "construct packing --input k5-3.txt --grid 5 --json",
    "fuzz-seeded": "fuzz --seed 1 --count 50 --json",
    "error-bad-token": "shadow --input bad-token.txt",
    "error-bad-arity": "shadow --input bad-arity.txt",
    "error-bad-range": "shadow --input bad-range.txt",
    "error-bad-dup": "shadow --input bad-dup.txt",
    "error-bad-header": "shadow --input bad-header.txt",
    "error-missing-file": "shadow --input nowhere.txt",
    "error-seed-rejected": "turan --n 5 --tree p43.txt --seed 3",
    "error-no-command": "",
    "error-unknown-command": "frobnicate",
    "error-missing-n": "turan --tree p43.txt",
    "error-bad-coeff": "verify-shadow --input k5-3.txt --tree p43.txt --coeff x/y",
    "error-not-tree": "trunk --tree twoedges.txt",
    "error-uniformity": "embed --input k5-2.txt --tree p43.txt",
    "error-tournament-n": "construct tournament --n 7",
}

EXPECTED_EXIT = {
    "is-tight-tree-no": EXIT_FAIL,
    "embed-k5-absent": EXIT_FAIL,
    "verify-shadow-k6": EXIT_FAIL,
    "verify-shadow-fail": EXIT_FAIL,
    "embed-trunk-below": EXIT_USAGE,
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code, report = run(argv, out=out, err=err)
    return code, report, out.getvalue(), err.getvalue()


def render(code, out, err):
    return f"exit: {code}\n--- stdout\n{out}--- stderr\n{err}"


@pytest.fixture
def in_inputs(monkeypatch):
    monkeypatch.chdir(INPUTS)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, in_inputs):
    code, _, out, err = invoke(CASES[name].split())
    got = render(code, out, err)
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("TIGHTTREES_REGOLD"):
        path.write_text(got)
    assert got == path.read_text()
    want = EXPECTED_EXIT.get(name, EXIT_USAGE if name.startswith("error-") else EXIT_OK)
    assert code == want


@pytest.mark.parametrize("name", sorted(n for n in CASES if n.startswith("error-bad") and CASES[n].endswith(".txt")))
def test_parse_errors_name_line_and_column(name, in_inputs):
    code, _, _, err = invoke(CASES[name].split())
    assert code == EXIT_USAGE
    path = CASES[name].split()[-1]
    prefix, line, col, _ = err[len("error: "):].split(":", 3)
    assert prefix == path and int(line) >= 1 and int(col) >= 1


def _hypergraph_strings(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _hypergraph_strings(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _hypergraph_strings(v)
    elif isinstance(obj, str) and obj.endswith("\n") and obj[0].isdigit():
        yield obj


@pytest.mark.parametrize("name", sorted(n for n in CASES if EXPECTED_EXIT.get(n) != EXIT_USAGE and not n.startswith("error-")))
def test_emitted_hypergraphs_reparse(name, in_inputs):
    _, report, out, _ = invoke(CASES[name].split())
    if "--json" in CASES[name]:
        assert json.loads(out) == report
    for text in _hypergraph_strings(report["result"]):
        G = parse_hypergraph(text)
        assert G.to_text() == text


def test_output_file_round_trip(tmp_path, in_inputs):
    target = tmp_path / "ekr.txt"
    code, report, _, _ = invoke(["construct", "ekr", "--n", "7", "--r", "3", "--output", str(target)])
    assert code == EXIT_OK
    G = parse_hypergraph(target.read_text())
    assert G.num_edges == 15 and G.to_text() == report["result"]["hypergraph"]


def test_constructed_host_feeds_verify(tmp_path, in_inputs):
    target = tmp_path / "tour.txt"
    invoke(["construct", "tournament", "--n", "9", "--output", str(target)])
    code, report, _, _ = invoke(["verify-shadow", "--input", str(target), "--tree", "p43.txt",
                                 "--coeff", "1"])
    assert code == EXIT_OK and report["result"]["t_free"]


def test_timing_is_opt_in(in_inputs):
    _, plain, _, _ = invoke(["shadow", "--input", "p43.txt", "--json"])
    _, timed, _, _ = invoke(["shadow", "--input", "p43.txt", "--json", "--timing"])
    assert "seconds" not in plain and timed["seconds"] >= 0


def test_threads_do_not_change_reports(in_inputs):
    a = invoke(["turan", "--n", "6", "--tree", "p43.txt", "--json", "--threads", "1"])[2]
    b = invoke(["turan", "--n", "6", "--tree", "p43.txt", "--json", "--threads", "4"])[2]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tighttrees", "shadow", "--input", "p43.txt"],
                          cwd=INPUTS, capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "shadow size 9\n"
