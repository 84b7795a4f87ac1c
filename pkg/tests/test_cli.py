import json

import pytest

from nilcomm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_orbit_info(capsys):
    code, rep = run_json(capsys, "orbit-info", "--partition", "2,2")
    assert code == 0
    assert rep["centralizer_dim"] == 8 and rep["orbit_dim"] == 8
    assert rep["cocharacter"] == [1, 1, -1, -1]
    assert rep["seed"] == 0 and rep["command"] == "orbit-info"


def test_dim_commands(capsys):
    assert run_json(capsys, "dim", "--what", "nilpotent", "--n", "5", "--r", "7")[1]["components"] == 2
    assert run_json(capsys, "dim", "--what", "gl", "--n", "4", "--r", "7")[1]["dim"] == 40
    assert run_json(capsys, "dim", "--what", "sl", "--n", "4", "--r", "7", "--p", "5")[1]["dim"] == 33
    code, rep = run_json(capsys, "dim", "--what", "component", "--n", "4", "--r", "7")
    assert code == 0 and rep["jacobian_dim"] == rep["dim"] == 32


def test_out_of_range_exit_2(capsys):
    code, out, err = run(capsys, "dim", "--what", "nilpotent", "--n", "3", "--r", "7")
    assert code == 2 and out == "" and "formula not established" in err
    assert run(capsys, "dim", "--what", "sl", "--n", "4", "--r", "7")[0] == 2
    assert run(capsys, "complexity", "--n", "4", "--r", "7", "--p", "3")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "count", "--variety", "X", "--params", "s=1")[0] == 2
    assert run(capsys, "count", "--variety", "U", "--params", "s=1")[0] == 2
    assert run(capsys, "zprime-test")[0] == 2
    assert run(capsys, "weight-digits", "--lambda", "25", "--p", "5", "--r", "2")[0] == 2
    assert run(capsys, "--budget", "0", "crossover")[0] == 2


def test_deterministic_json(capsys):
    argv = ["--seed", "3", "dim", "--what", "component", "--n", "5", "--r", "7", "--s", "2"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert json.loads(first)["seed"] == 3


def test_seed_after_subcommand(capsys):
    code, rep = run_json(capsys, "zprime-test", "--square-zero", "2,1", "--seed", "4")
    assert code == 0 and rep["seed"] == 4
    assert rep["explicit_element_member"] and rep["weight0_perturbation_member"] is False


def test_zprime_modes(capsys):
    code, rep = run_json(capsys, "zprime-test", "--charp", "3")
    assert code == 0 and rep["nilpotent_pencil_vanishes"]
    code, rep = run_json(capsys, "zprime-test", "--partition", "2,2", "--y", "0,0,1,0;0,0,0,1;0,0,0,0;0,0,0,0")
    assert code == 0 and rep["member"]
    code, rep = run_json(capsys, "zprime-test", "--square-zero", "1,1")
    assert code == 0 and rep["weight0_perturbation_member"] is None


def test_fractions_as_strings(capsys):
    code, rep = run_json(capsys, "complexity", "--n", "4", "--r", "7", "--p", "5")
    assert code == 0 and rep["ratio_rhs"] == "28/1" and rep["frobenius"] == 32
    code, rep = run_json(capsys, "count", "--variety", "W", "--params", "r=2,s=1,t=1", "--q", "2,3,5")
    assert code == 0 and rep["verdict"] == "PASS"
    assert rep["fitted_dim"].count("/") == 1 and rep["tolerance"] == "3/5"


def test_budget_env_causes_skips(capsys, monkeypatch):
    monkeypatch.setenv("NILCOMM_BUDGET", "100")
    code, rep = run_json(capsys, "count", "--variety", "U", "--params", "s=2,t=2", "--q", "2,3,5")
    assert rep["skipped_q"] == [5] and [x["q"] for x in rep["samples"]] == [2, 3]
    code, rep = run_json(capsys, "--budget", "20", "count", "--variety", "U", "--params", "s=2,t=2")
    assert rep["skipped_q"] == [3, 5] and rep["verdict"] == "INCONCLUSIVE" and code == 0


def test_count_csv(capsys, tmp_path):
    path = tmp_path / "counts.csv"
    code, _ = run_json(capsys, "count", "--variety", "U", "--params", "s=1,t=1", "--csv", str(path))
    assert code == 0
    assert path.read_text().splitlines() == ["q,count", "2,3", "3,5", "5,9"]


def test_output_formats(capsys):
    code, out, _ = run(capsys, "--output", "csv", "crossover", "--n-max", "5", "--r-max", "5")
    assert code == 0 and out.splitlines()[0] == "key,value"
    code, out, _ = run(capsys, "--output", "text", "weight-digits", "--lambda", "7,24", "--p", "5", "--r", "2")
    assert code == 0 and "digits: [[2, 4], [1, 4]]" in out


def test_appendix_actions(capsys):
    code, rep = run_json(capsys, "appendix", "identities")
    assert code == 0 and rep["verdict"] == "PASS"
    code, rep = run_json(capsys, "appendix", "special-cases")
    assert code == 0
    assert run(capsys, "appendix", "verify", "--box", "4,8,6,12")[0] == 2


@pytest.mark.slow_cli
def test_appendix_verify_reports_a1_line(capsys):
    code, rep = run_json(capsys, "appendix", "verify")
    # the (d-b)^2/4 bound fails along (0,1,0,d), so the combined verdict is FAIL
    assert code == 1 and rep["verdict"] == "FAIL"
    assert rep["nonpositive_N2"] and rep["unexpected_found"] == [] and rep["missing_from_found"] == []
    assert set(rep["A1_negative"]) == {"0,1,0,1"}
    assert rep["case_constants"]["verdict"] == "PASS"
