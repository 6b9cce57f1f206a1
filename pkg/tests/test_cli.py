import copy
import io
import json
import shutil
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from pcs_equiv import cli, golden
from pcs_equiv import report as rep
from pcs_equiv.pipeline import Pipeline

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
EX1 = str(FIXTURES / "example1.json")
EX2 = str(FIXTURES / "example2.json")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_examples(capsys):
    code, out, _ = run(capsys, "analyze", EX1)
    assert code == 0
    cert = json.loads(out)["certificate"]
    assert cert["pstar"] == 1.0 and cert["rm"] == "1"
    code, out, _ = run(capsys, "analyze", EX2)
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["certificate"]["pstar"] - 0.4306765580733931) < 1e-12
    assert doc["certificate"]["c1"] == "10/13" and doc["certificate"]["rm"] == "2/5"
    assert doc["pseudo_extreme_points"] is None


def test_analyze_verbose_and_out(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", EX2, "--verbose", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert {"x": ["2/5", "0"], "y": ["2/5", "0"], "source": ["+1"]} in doc["pseudo_extreme_points"]


def test_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"m": 1, "n": 2, "phi": [[1, "abc"]], "b": [1]}')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "phi[0][1]" in err
    bad.write_text('{"m": 1, "n": 2, "phi": [[1, 2]],\n "b": [1,]}')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 2


def test_validation_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "rank.json"
    bad.write_text('{"m": 2, "n": 2, "phi": [[1, 0], [2, 0]], "b": [1, 1]}')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "rank" in err


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("PCS_BUDGET", "1")
    code, _, err = run(capsys, "analyze", EX2)
    assert code == 3 and "budget" in err


def test_invariant_violation_exit_code(capsys, monkeypatch):
    from pcs_equiv import pipeline

    def broken(self, cert):
        raise pipeline.InvariantViolation("forced")

    monkeypatch.setattr(pipeline.Pipeline, "check_invariants", broken)
    code, _, err = run(capsys, "analyze", EX1)
    assert code == 4 and "forced" in err


def test_solve_commands(capsys):
    code, out, _ = run(capsys, "solve", EX2, "--problem", "l0")
    assert code == 0 and len(json.loads(out)["l0_solutions"]["solutions"]) == 4
    code, out, _ = run(capsys, "solve", EX2, "--problem", "lp", "--p", "0.3", "--method", "exact")
    res = json.loads(out)["lp_results"][0]
    assert res["solutions"] == [["-2/5", "0"], ["2/5", "0"]]
    code, out, _ = run(capsys, "solve", EX1, "--problem", "lp", "--p", "0.5")
    assert len(json.loads(out)["lp_results"][0]["solutions"]) == 4
    code, out, _ = run(capsys, "solve", EX2, "--problem", "lp", "--p", "0.3", "--method", "heuristic",
                       "--restarts", "16", "--seed", "2")
    res = json.loads(out)["lp_results"][0]
    assert code == 0 and res["method"] == "heuristic" and res["optimal_value"] <= 0.4**0.3 + 1e-6


@pytest.mark.parametrize("p", ["0", "1", "1.5", "-0.2"])
def test_p_out_of_range(capsys, p):
    code, _, _ = run(capsys, "solve", EX2, "--problem", "lp", "--p", p)
    assert code == 2
    code, _, _ = run(capsys, "verify", EX2, "--p", p)
    assert code == 2


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", EX2, "--p", "0.1", "--p", "0.2", "--p", "0.3", "--p", "0.4")
    doc = json.loads(out)
    assert code == 0 and [v["status"] for v in doc["verification"]] == ["PASS"] * 4
    code, out, _ = run(capsys, "verify", EX1, "--p", "0.99")
    assert code == 0 and json.loads(out)["verification"][0]["status"] == "PASS"
    code, out, _ = run(capsys, "verify", EX2, "--p", "0.5")
    v = json.loads(out)["verification"][0]
    assert code == 1 and v["status"] == "REFUSED" and v["reason"] == "PNotBelowPstar"


def test_paper_examples_pass_and_are_deterministic():
    a, b = io.StringIO(), io.StringIO()
    assert cli.cmd_paper_examples(out=a) == 0
    assert cli.cmd_paper_examples(out=b) == 0
    assert a.getvalue() == b.getvalue()
    assert "ALL MATCH" in a.getvalue()


@pytest.mark.parametrize("field, value", [("rm", F(1, 3)), ("c1", F(1, 2)), ("pstar", 0.5), ("s", 2)])
def test_paper_examples_detects_mutation(field, value):
    mutated = copy.deepcopy(golden.EXAMPLES)
    mutated["5.2"]["expected"][field] = value
    out = io.StringIO()
    assert cli.cmd_paper_examples(mutated, out=out) == 1
    assert "MISMATCH" in out.getvalue()


def test_report_round_trip(capsys):
    _, out, _ = run(capsys, "verify", EX2, "--p", "0.3")
    doc = rep.loads_report(out)
    assert rep.dumps_report(doc) == out
    assert rep.loads_report(rep.dumps_report(doc)) == doc
    cert = Pipeline(golden.EXAMPLES["5.2"]["instance"]).certificate
    assert rep.certificate_from_dict(json.loads(json.dumps(rep.certificate_to_dict(cert)))) == cert


def test_instance_echo_reproduces_report(capsys, tmp_path):
    _, first, _ = run(capsys, "analyze", EX2)
    echo = tmp_path / "echo.json"
    echo.write_text(json.dumps(json.loads(first)["instance_echo"]))
    _, second, _ = run(capsys, "analyze", str(echo))
    assert rep.strip_timings(first) == rep.strip_timings(second)


def test_stages_run_once():
    pipe = Pipeline(golden.EXAMPLES["5.2"]["instance"])
    for p in (0.1, 0.2, 0.1):
        pipe.verify(p)
    pipe.certificate
    assert all(count == 1 for count in pipe.stage_runs.values())
    assert pipe.stage_runs["vertices"] == 1 and pipe.stage_runs["l0"] == 1


def test_console_script():
    exe = shutil.which("pcs")
    cmd = [exe] if exe else [sys.executable, "-m", "pcs_equiv.cli"]
    proc = subprocess.run(cmd + ["paper-examples"], capture_output=True, text=True)
    assert proc.returncode == 0 and "ALL MATCH" in proc.stdout


def test_paper_examples_requires_reference_vertices():
    mutated = copy.deepcopy(golden.EXAMPLES)
    mutated["5.2"]["expected"]["pext_reference"].append(((F(1), F(0)), (F(1), F(0))))
    out = io.StringIO()
    assert cli.cmd_paper_examples(mutated, out=out) == 1
    assert "pext_contains_reference" in out.getvalue()
