"""
Tests for the reason command-line interface
"""

import json

import config
from reasoner.cli import main
from reasoner.parser import parse_document


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_entail(capsys, data_dir):
    code, out, _ = run(capsys, "entail", data_dir / "penguin.kb", "--mode", "optc", "--query", "N : Experiments")
    assert code == 0
    assert "holds" in out
    code, _, _ = run(capsys, "entail", data_dir / "penguin.kb", "--mode", "optc", "--query", "N : !Experiments")
    assert code == 1


def test_entail_needs_k(capsys, data_dir):
    code, _, err = run(capsys, "entail", data_dir / "penguin.kb", "--mode", "kc", "--query", "N : Experiments")
    assert code == 2
    assert err.startswith("error:")


def test_cost_json(capsys, data_dir):
    literal = json.dumps({"concepts": {"Logician": ["N"], "SetTheorist": ["N"], "Experiments": ["N"]}})
    code, out, _ = run(capsys, "cost", data_dir / "penguin.kb", "--interpretation", literal, "--json")
    assert code == 0
    result = json.loads(out)
    assert result["cost"] == 1
    assert result["optimal_cost"] == 1


def test_check_witness(capsys, data_dir):
    code, out, _ = run(capsys, "check", data_dir / "penguin.kb", "--property", "c-compatible")
    assert code == 1
    assert "witness: Logician <= !Experiments" in out
    code, _, _ = run(capsys, "check", data_dir / "mono.kb", "--property", "strict-abox")
    assert code == 1


def test_malformed_document(capsys, tmp_path):
    path = tmp_path / "bad.kb"
    path.write_text("vocab {\n  concepts: A;\n  roles: ;\n  individuals: a;\n}\nabox { a : A [1] }\n")
    code, _, err = run(capsys, "parse", path)
    assert code == 2
    assert "line" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "parse", tmp_path / "missing.kb")
    assert code == 2
    assert "cannot read" in err


def test_bit_budget(capsys, data_dir):
    before = config.BIT_BUDGET
    code, _, err = run(capsys, "models", data_dir / "penguin.kb", "--bit-budget", 1)
    assert code == 3
    assert "budget" in err
    assert config.BIT_BUDGET == before


def test_unknown_command(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_crep_json_is_deterministic(capsys, data_dir):
    first = run(capsys, "crep", data_dir / "penguin_defeasible.kb", "--json")
    second = run(capsys, "crep", data_dir / "penguin_defeasible.kb", "--json")
    assert first == second
    code, out, _ = first
    assert code == 1
    result = json.loads(out)
    assert result["kappa0"] == -1
    assert result["unsatisfied"] == "Logician ~< SetTheorist"
    assert len(result["table"]) == 8


def test_crep_normalization_mismatch(capsys, data_dir):
    code, _, err = run(capsys, "crep", data_dir / "single_dci.kb", "--eta", "1", "--kappa0", "3")
    assert code == 2
    assert "kappa0" in err


def test_crep_entail(capsys, data_dir):
    code, out, _ = run(capsys, "crep", data_dir / "single_dci.kb", "--eta", "2", "--entail", "A ~< B")
    assert code == 0
    assert "kappa-entailment" in out


def test_crep_checks_modelhood_by_default(capsys, data_dir):
    code, out, _ = run(capsys, "crep", data_dir / "single_dci.kb", "--eta", "2")
    assert code == 0
    assert "model of the KB" in out
    code, _, _ = run(capsys, "crep", data_dir / "single_dci.kb", "--eta", "2", "--check")
    assert code == 2


def test_infer(capsys, data_dir):
    code, out, _ = run(capsys, "infer", data_dir / "single_dci.kb", "--quantifier", "skeptical",
                       "--eta-max", 2, "--query", "A ~< B", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "holds-within-bound"
    code, out, _ = run(capsys, "infer", data_dir / "penguin_defeasible.kb", "--quantifier", "credulous",
                       "--eta-max", 2, "--query", "N : Experiments")
    assert code == 1
    assert "no-c-representation-within-bound" in out


def test_rank(capsys, data_dir, tmp_path):
    entries = [
        {"interpretation": {}, "rank": 0},
        {"interpretation": {"concepts": {"B": ["a"]}}, "rank": 0},
        {"interpretation": {"concepts": {"A": ["a"], "B": ["a"]}}, "rank": 0},
        {"interpretation": {"concepts": {"A": ["a"]}}, "rank": 1},
    ]
    path = tmp_path / "kappa.json"
    path.write_text(json.dumps(entries))
    code, out, _ = run(capsys, "rank", data_dir / "single_dci.kb", "--ranking", path)
    assert code == 0
    code, out, _ = run(capsys, "rank", data_dir / "single_dci.kb", "--ranking", path, "--query", "a : A")
    assert code == 1
    assert "rank(a : A) = 0" in out


def test_translate_round_trip(capsys, data_dir, tmp_path):
    target = tmp_path / "open.kb"
    code, out, _ = run(capsys, "translate", data_dir / "penguin.kb", "--kind", "open", "-o", target)
    assert code == 0
    assert "kappa0 = -1" in out
    opened = parse_document(target.read_text())
    assert len(opened.dbox) == 3
    code, out, _ = run(capsys, "translate", target, "--kind", "to-wkb")
    assert code == 0
    assert "Logician <= SetTheorist [3];" in out


def test_verify_file(capsys, data_dir):
    code, out, _ = run(capsys, "verify", data_dir / "single_dci.kb", "--eta-max", 2)
    assert code == 0
    assert "within-bound" in out


def test_verify_random_json(capsys):
    code, out, _ = run(capsys, "verify", "--random", 2, "--seed", 3, "--eta-max", 1, "--json")
    summary = json.loads(out)
    assert summary["seed"] == 3
    assert [i["instance"] for i in summary["instances"]] == ["seed 3 #0 weighted", "seed 3 #1 defeasible"]
    assert code in (0, 1)


def test_verify_json_is_deterministic(capsys):
    argv = ("verify", "--random", 4, "--seed", 7, "--eta-max", 2, "--json")
    first_code, first, _ = run(capsys, *argv)
    second_code, second, _ = run(capsys, *argv)
    assert (first_code, first) == (second_code, second)
    assert json.loads(first)["seed"] == 7
