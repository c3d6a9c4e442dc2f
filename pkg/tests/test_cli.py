import json
import subprocess
import sys
from pathlib import Path

import pytest

from moyforge import cli
from moyforge.laurent import LaurentPoly, quantum_integer

DATA = Path(__file__).parent / "data"


def run(*argv):
    return cli.run(list(argv))


def poly(report):
    return LaurentPoly.from_json_obj(report["result"]["polynomial"])


def test_eval_fixtures():
    code, rep = run("eval", "--graph", "circle.json", "--n", "4")
    assert code == 0
    assert rep["result"]["polynomial"] == {"3": 1, "1": 1, "-1": 1, "-3": 1}
    code, rep = run("eval", "--graph", "theta.json", "--n", "3")
    assert poly(rep) == quantum_integer(3) * quantum_integer(2)
    assert rep["stats"]["moves"] and rep["input_digest"].startswith("sha256:")


def test_eval_uses_n_from_file():
    code, rep = run("eval", "--graph", "figure2-G.json")
    assert code == 0 and rep["N"] == 3 and rep["result"]["at_q_1"] == 24


def test_eval_trace():
    code, rep = run("eval", "--graph", "theta.json", "--trace")
    assert code == 0 and rep["trace"] and {"rule", "canonical"} <= set(rep["trace"][0])


@pytest.mark.parametrize("graph,N,expected", [("figure2-G.json", 3, 24), ("circle.json", 7, 7), ("theta.json", 4, 12)])
def test_chi(graph, N, expected):
    code, rep = run("chi", "--graph", graph, "--n", str(N), "--cross-check")
    assert code == 0
    assert rep["result"] == {"euler_characteristic": expected, "cross_check": "agree"}


def test_chi_cross_check_violation(monkeypatch):
    monkeypatch.setattr(cli, "count_colorings", lambda g, N: 999)
    code, rep = run("chi", "--graph", "theta.json", "--n", "3", "--cross-check")
    assert code == 3 and "result" not in rep
    assert rep["error"]["type"] == "TheoremViolation"


def test_knot_commands():
    code, rep = run("knot", "--pd", "unknot", "--n", "5")
    assert code == 0 and poly(rep) == quantum_integer(5)
    code, rep = run("knot", "--pd", "trefoil", "--n", "2", "--normalize")
    assert poly(rep) == LaurentPoly({-2: 1, -6: 1, -8: -1})
    _, a = run("knot", "--pd", "trefoil", "--n", "3")
    _, b = run("knot", "--pd", "trefoil-left", "--n", "3")
    assert poly(a) == poly(b).bar()


def test_knot_pd_file(tmp_path):
    f = tmp_path / "k.pd"
    f.write_text("X[4,2,5,1]\nX[6,4,1,3]\nX[2,6,3,5]\n")
    code, rep = run("knot", "--pd-file", str(f), "--n", "2")
    assert code == 0 and rep["result"]["crossings"] == 3


@pytest.mark.parametrize("argv", [
    ("eval", "--graph", "missing.json"),
    ("knot", "--pd", "X[1,2,3]", "--n", "3"),
    ("knot", "--pd", "unknot"),
    ("verify", "no-such-suite"),
    ("knot", "--pd", "trefoil", "--pd-file", "x", "--n", "2"),
])
def test_input_errors(argv):
    code, rep = run(*argv)
    assert code == 1 and rep["error"]["type"] == "InputError" and "result" not in rep


def test_invalid_graph_file(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"N": 2, "vertices": [], "edges": [], "circles": [3]}))
    code, rep = run("eval", "--graph", str(f))
    assert code == 1
    f.write_text("{not json")
    assert run("eval", "--graph", str(f))[0] == 1


def test_irreducible_exit_code():
    code, rep = run("eval", "--graph", str(DATA / "stuck12.json"))
    assert code == 2 and rep["error"]["canonical"] and "result" not in rep


@pytest.mark.parametrize("suite,size", [("theorem-q1", 5), ("moy-recursions", 5), ("rep-relations", 6),
                                        ("trace-lemma", 50), ("reidemeister", 1)])
def test_verify_suites(suite, size):
    code, rep = run("verify", suite, "--size", str(size), "--seed", "3")
    assert code == 0, rep.get("error")
    assert rep["result"]["failures"] == 0 and rep["result"]["table"]


def test_verify_violation_reports_counterexample(monkeypatch):
    from moyforge import suites

    monkeypatch.setitem(suites.RECURSION_FACTORS, "MOY2", lambda N: (3,))
    code, rep = run("verify", "moy-recursions", "--size", "5")
    assert code == 3
    assert rep["error"]["counterexample"]["graph"]["vertices"]


def test_reports_are_deterministic():
    a = run("verify", "theorem-q1", "--size", "4", "--seed", "8")[1]
    b = run("verify", "theorem-q1", "--size", "4", "--seed", "8")[1]
    a.pop("timing"), b.pop("timing")
    assert a == b


def test_big_integers_become_strings():
    assert cli.json_int(2**53) == 2**53
    assert cli.json_int(2**53 + 1) == str(2**53 + 1)
    assert cli.poly_json(LaurentPoly({0: 3}) ** 40) == {"0": str(3**40)}


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "moyforge.cli", "chi", "--graph", "theta.json", "--n", "5"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["euler_characteristic"] == 20
    bad = subprocess.run([sys.executable, "-m", "moyforge.cli", "knot", "--pd", "X[1,1,1,1]", "--n", "2"],
                         capture_output=True, text=True)
    assert bad.returncode == 1
