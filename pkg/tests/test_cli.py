"""Command-line surface: JSON outputs, file emission, and exit codes."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from minrank_lab import (
    Graph,
    IntMatrix,
    dump_matrix_text,
    graph_to_json,
    rep_matrix_kneser_mod,
)
from minrank_lab.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run_cli(*argv)
    assert code == 0, err
    return json.loads(out)


# ----------------------------------------------------------------------- rank


def test_rank_command_fp(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text(dump_matrix_text(rep_matrix_kneser_mod(8, 3, 1, 2, 2)))
    obj = run_json("rank", "--in", str(path))
    assert obj["field"] == "F_2"
    assert obj["rows"] == obj["cols"] == 56
    assert obj["rank"] <= 8


def test_rank_command_integer(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text(dump_matrix_text(IntMatrix([[2, 4], [1, 2]])))
    obj = run_json("rank", "--in", str(path))
    assert obj["rank"] == 1


# ------------------------------------------------------------------ gen-graph


def test_gen_graph_kneser_stdout():
    obj = run_json("gen-graph", "--family", "kneser", "--d", "5", "--s", "2",
                   "--T", "0")
    assert obj["n"] == 10
    assert obj["directed"] is False
    assert len(obj["edges"]) == 15


def test_gen_graph_complement_matches_library():
    obj = run_json("gen-graph", "--family", "kneser", "--d", "5", "--s", "2",
                   "--T", "0", "--complement")
    assert len(obj["edges"]) == 45 - 15


def test_gen_graph_to_file(tmp_path):
    out = tmp_path / "g.json"
    summary = run_json("gen-graph", "--family", "ternary", "--d", "1",
                       "--out", str(out))
    assert summary["directed"] is True
    stored = json.loads(out.read_text())
    assert stored["n"] == 3 and len(stored["edges"]) == 3


def test_gen_graph_missing_flag_is_parameter_error():
    code, _, err = run_cli("gen-graph", "--family", "kneser", "--d", "5")
    assert code == 2
    assert "parameter error" in err


# ---------------------------------------------------------------------- birep


def test_birep_kneser_verified():
    obj = run_json("birep", "--family", "kneser", "--d", "8", "--s", "3",
                   "--T", "1", "--p", "5")
    assert obj["verified"] is True
    assert obj["dimension"] == 37
    assert obj["product_rank"] <= 37


def test_birep_rejects_vanishing_diagonal():
    code, _, err = run_cli("birep", "--family", "kneser", "--d", "8",
                           "--s", "4", "--T", "0,1", "--p", "2")
    assert code == 2
    assert "parameter error" in err


def test_birep_out_embeds_factors(tmp_path):
    out = tmp_path / "rep.json"
    obj = run_json("birep", "--family", "ternary", "--d", "2",
                   "--out", str(out))
    assert obj["verified"] is True and obj["product_rank"] == 4
    payload = json.loads(out.read_text())
    assert payload["a"].splitlines()[0] == "9 4 3"
    assert payload["b"].splitlines()[0] == "4 9 3"


# -------------------------------------------------------------- inclusion-rep


def test_inclusion_rep_modular(tmp_path):
    out = tmp_path / "m.txt"
    obj = run_json("inclusion-rep", "--d", "8", "--s", "3", "--t", "1",
                   "--q", "2", "--p", "2", "--out", str(out))
    assert obj == {
        "n": 56,
        "modulus": 2,
        "rank_bound": 8,
        "rank_actual": obj["rank_actual"],
        "represents": True,
        "out": str(out),
    }
    assert obj["rank_actual"] <= 8
    assert out.read_text().splitlines()[0] == "56 56 2"


def test_inclusion_rep_explicit_set():
    obj = run_json("inclusion-rep", "--d", "8", "--s", "4", "--T", "0,1",
                   "--p", "11")
    # degree of the vanishing polynomial is s - |T| = 2
    assert obj["rank_bound"] == 28
    assert obj["rank_actual"] <= 28
    assert obj["represents"] is True


def test_inclusion_rep_needs_t_or_T():
    code, _, err = run_cli("inclusion-rep", "--d", "8", "--s", "3", "--p", "2")
    assert code == 2
    assert "parameter error" in err


# --------------------------------------------------------------- certify-chiv


def test_certify_equality():
    obj = run_json("certify-chiv", "--d", "8", "--s", "3", "--t", "1",
                   "--mode", "eq")
    assert obj["kappa"] == "16"
    assert obj["verified"] is True
    assert obj["classes_checked"] == 3


def test_certify_sampled_inequality():
    obj = run_json("certify-chiv", "--d", "8", "--s", "4", "--t", "1",
                   "--sample")
    assert obj["kappa"] == "3"
    assert obj["verified"] is True


def test_certify_rejects_bad_window():
    code, _, _ = run_cli("certify-chiv", "--d", "8", "--s", "2", "--t", "1")
    assert code == 2


# --------------------------------------------------------------------- oracle


def test_oracle_minrank_on_5_cycle(tmp_path):
    g = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    path = tmp_path / "c5.json"
    path.write_text(json.dumps(graph_to_json(g)))
    obj = run_json("oracle", "--graph", str(path), "--what", "minrank",
                   "--p", "2")
    assert obj == {"what": "minrank", "exhausted": False, "value": 3}


def test_oracle_alpha_and_exhaustion(tmp_path):
    g = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    path = tmp_path / "c5.json"
    path.write_text(json.dumps(graph_to_json(g)))
    obj = run_json("oracle", "--graph", str(path), "--what", "alpha")
    assert obj["value"] == 2
    starved = run_json("oracle", "--graph", str(path), "--what", "minrank",
                       "--max-rank", "1")
    assert starved["exhausted"] is True
    assert starved["lower"] == 2 and starved["upper"] == 5


# -------------------------------------------------------------------- theorem


def test_theorem_command_writes_report(tmp_path):
    out = tmp_path / "report.json"
    obj = run_json("theorem", "--which", "1", "--p", "2", "--l", "3",
                   "--out", str(out))
    assert obj["n"] == 56 and obj["kappa"] == "16"
    stored = json.loads(out.read_text())
    stored.pop("timings")
    obj.pop("timings")
    assert stored == obj


def test_theorem_command_rejects_bad_params():
    code, _, err = run_cli("theorem", "--which", "3", "--t", "1", "--p", "3")
    assert code == 2
    assert "parameter error" in err


def test_theorem_command_missing_flags():
    code, _, _ = run_cli("theorem", "--which", "2", "--p", "3")
    assert code == 2


# ---------------------------------------------------------------------- sweep


def test_sweep_theorem3(tmp_path):
    out = tmp_path / "sweep.json"
    obj = run_json("sweep", "--which", "3", "--t", "1..1", "--p", "5",
                   "--out", str(out))
    assert obj["sweep"] == 3
    assert len(obj["cells"]) == 1
    assert obj["cells"][0]["n"] == 70


# ----------------------------------------------------------- sidequests, misc


def test_sidequests_command():
    obj = run_json("sidequests")
    assert obj["schema"] == "minrank-lab/1"
    assert {e["d"] for e in obj["ternary"]} == {1, 2, 3}


def test_exponent_command():
    obj = run_json("exponent", "--which", "1", "--p", "2")
    lo = Fraction(obj["interval"]["lo"])
    hi = Fraction(obj["interval"]["hi"])
    assert Fraction(1499, 10**4) <= lo <= hi < Fraction(15, 100)
