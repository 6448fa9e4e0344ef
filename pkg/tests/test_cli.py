import json
import os
import subprocess
import sys

import pytest

from commring.cli import run
from commring.graph import complete_graph, to_dimacs
from commring.ring import load_ring, presentation_E


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_ring_make(work):
    assert run(["ring", "make", "--type", "E", "--p", "3", "-o", "e9.ring"]) == 0
    assert load_ring("e9.ring") == presentation_E(3)


def test_ring_make_product(work):
    run(["ring", "make", "--type", "E", "--p", "2", "-o", "e4.ring"])
    run(["ring", "make", "--type", "zero", "--n", "2", "-o", "z2.ring"])
    assert run(["ring", "make", "--type", "product", "--factors", "e4.ring", "z2.ring", "-o", "p.ring"]) == 0
    assert load_ring("p.ring").order == 8


def test_ring_make_missing_param(work, capsys):
    assert run(["ring", "make", "--type", "E"]) == 2
    assert "--p" in capsys.readouterr().err


def test_ring_enum(work, capsys):
    assert run(["ring", "enum", "--order", "4", "--noncommutative", "-o", "corpus"]) == 0
    assert sorted(p.name for p in (work / "corpus").iterdir()) == \
        ["manifest_4.json", "r4_0.ring", "r4_1.ring"]
    assert "2 rings" in capsys.readouterr().out


def test_ring_enum_center_zero(work):
    assert run(["ring", "enum", "--order", "8", "--noncommutative", "--center-zero", "-o", "c"]) == 0
    man = json.loads((work / "c" / "manifest_8.json").read_text())
    assert man["count"] == 3 and man["filters"]["zero_center"] and man["exhaustive"]


def test_enum_budget_strict(work, monkeypatch):
    monkeypatch.setenv("COMMRING_NODE_BUDGET", "100")
    assert run(["ring", "enum", "--order", "8", "--strict", "-o", "c"]) == 5
    assert run(["ring", "enum", "--order", "8", "-o", "c"]) == 0
    assert not json.loads((work / "c" / "manifest_8.json").read_text())["exhaustive"]


def test_graph_and_solve(work, capsys):
    run(["ring", "make", "--type", "E", "--p", "3", "-o", "e9.ring"])
    assert run(["graph", "build", "--ring", "e9.ring", "-o", "g.dimacs"]) == 0
    assert run(["solve", "gamma", "--in", "g.dimacs"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "gamma 4"
    assert run(["graph", "build", "--ring", "e9.ring", "--complement", "-o", "gb.dimacs"]) == 0
    assert "p edge 8 24" in (work / "gb.dimacs").read_text()
    assert run(["graph", "build", "--ring", "e9.ring", "--format", "dot", "-o", "g.dot"]) == 0


def test_solve_signed_K5(work, capsys):
    (work / "k5.dimacs").write_text(to_dimacs(complete_graph(5)))
    assert run(["solve", "gamma-s", "--in", "k5.dimacs"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "gamma_s 1"
    assert run(["solve", "gamma-s", "--in", "k5.dimacs", "--method", "brute"]) == 0


def test_error_codes(work):
    assert run(["solve", "gamma", "--in", "missing.dimacs"]) == 3
    (work / "bad.dimacs").write_text("p edge 2 1\ne 1 9\n")
    assert run(["solve", "gamma", "--in", "bad.dimacs"]) == 4
    (work / "bad.ring").write_text("{}")
    assert run(["graph", "build", "--ring", "bad.ring"]) == 4
    assert run(["verify", "--unknown"]) == 2
    assert run([]) == 2
    assert run(["verify", "--max-order", "40"]) == 2
    assert run(["verify", "--suite", "bogus", "--max-order", "4"]) == 4


def test_verify_report_and_figures(work, capsys):
    run(["ring", "enum", "--order", "4", "--noncommutative", "-o", "corpus"])
    capsys.readouterr()
    rc = run(["verify", "--suite", "prelim", "--max-order", "4", "--corpus", "corpus",
              "--report", "r.jsonl", "--figures", "figs", "--no-timing"])
    assert rc == 0
    lines = (work / "r.jsonl").read_text().splitlines()
    assert all(json.loads(ln)["millis"] == 0 for ln in lines)
    assert (work / "figs" / "status.png").stat().st_size > 0
    out = capsys.readouterr().out
    assert out.startswith("check\tpass\tfail\tvacuous")


def test_verify_is_deterministic(work):
    args = ["verify", "--suite", "prelim,domination", "--max-order", "8", "--no-timing"]
    assert run(args + ["--report", "a.jsonl"]) == run(args + ["--report", "b.jsonl", "--jobs", "3"])
    assert (work / "a.jsonl").read_bytes() == (work / "b.jsonl").read_bytes()


def test_verify_fails_on_failing_check(work):
    # the signed analogue of the order-p^3 clique theorem fails at p = 2
    assert run(["verify", "--suite", "signed", "--max-order", "8", "--report", "s.jsonl"]) == 1
    fails = [json.loads(ln) for ln in (work / "s.jsonl").read_text().splitlines()]
    assert {r["check"] for r in fails if r["status"] == "fail"} == {"ThmB.signed"}


def test_export(work):
    run(["ring", "enum", "--order", "4", "--noncommutative", "-o", "corpus"])
    assert run(["export", "--corpus", "corpus", "-o", "graphs"]) == 0
    assert (work / "graphs" / "r4_0.Gbar.dimacs").exists()
    run(["verify", "--suite", "prelim", "--max-order", "4", "--report", "r.jsonl"])
    assert run(["export", "--report", "r.jsonl", "--format", "tsv", "-o", "r.tsv"]) == 0
    assert (work / "r.tsv").read_text().startswith("check\tsubject")


def test_module_entry_point(work):
    proc = subprocess.run([sys.executable, "-m", "commring", "ring", "make", "--type", "F", "--p", "2"],
                          capture_output=True, text=True, env=dict(os.environ))
    assert proc.returncode == 0 and '"format": "commring/1"' in proc.stdout
