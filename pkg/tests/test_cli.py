import json

import pytest

from pfrees.cli import main
from pfrees.error_handler import EXIT_BUDGET, EXIT_CLAIM_FAILED, EXIT_PASS, EXIT_USAGE


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_pf_closed_form(workdir, capsys):
    assert main(["pf", "--tridiagonal", "5", "--closed-form"]) == EXIT_PASS
    assert capsys.readouterr().out.splitlines() == ["x2_3*x4_5", "x1_2*x4_5", "x1_2*x3_4"]


def test_pf_json(workdir, capsys):
    assert main(["pf", "--generic", "5", "--format", "json"]) == EXIT_PASS
    (payload,) = _json_lines(capsys.readouterr().out)
    assert payload["schema"] == 1
    assert payload["summary"]["generators"] == 5


def test_rees_verdict(workdir, capsys):
    assert main(["rees", "--tridiagonal", "7", "--verdict", "--format", "json"]) == EXIT_PASS
    (payload,) = _json_lines(capsys.readouterr().out)
    assert payload["verdict"]["status"] == "groebner_linear_type"


def test_betti_text(workdir, capsys):
    assert main(["betti", "--generic", "3"]) == EXIT_PASS
    assert "total:" in capsys.readouterr().out


def test_diag_reduce(workdir, capsys):
    assert main(["diag", "--generic", "3", "--reduce", "--format", "json"]) == EXIT_PASS
    (payload,) = _json_lines(capsys.readouterr().out)
    assert len(payload["presentation"]["extra_gens"]) == 3
    assert len(payload["reduced"]["ring"]) == 6


def test_graph(workdir, capsys):
    assert main(["graph", "--n", "5", "--format", "json"]) == EXIT_PASS
    (payload,) = _json_lines(capsys.readouterr().out)
    assert payload["unmixed"] is True
    assert payload["census"] == {"2": 3}


def test_koszul_blockx4(workdir, capsys):
    assert main(["koszul", "--blockx4", "2", "--method", "blockx4"]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == "certified_koszul (ci_of_quadrics)"


def test_seq_interval_type(workdir, capsys):
    assert main(["seq", "--tridiagonal", "7", "--closed-form", "--kind", "m"]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == "interval_type: proved"


def test_custom_matrix(workdir, capsys):
    path = workdir / "m.txt"
    path.write_text("0; a; b\n-a; 0; c\n-b; -c; 0\n")
    assert main(["pf", "--custom", str(path)]) == EXIT_PASS
    assert capsys.readouterr().out.splitlines() == ["c", "b", "a"]


def test_custom_matrix_not_skew(workdir, capsys):
    path = workdir / "m.txt"
    path.write_text("0; a\na; 0\n")
    assert main(["pf", "--custom", str(path)]) == EXIT_USAGE
    assert "Could not parse input" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["pf", "--generic", "4"],
    ["pf"],
    ["rees", "--generic", "3", "--method", "taylor"],
    ["rees", "--generic", "3", "--verdict", "--order", "revlex"],
    ["verify", "no-such-claim"],
    ["verify"],
])
def test_usage_errors(workdir, argv):
    assert main(argv) == EXIT_USAGE


def test_budget_exit(workdir, capsys):
    code = main(["rees", "--generic", "5", "--budget-seconds", "0.001", "--format", "json"])
    assert code == EXIT_BUDGET
    (payload,) = _json_lines(capsys.readouterr().out)
    assert payload["status"] == "BUDGET"


def test_verify_and_replay(workdir, capsys):
    certs = workdir / "certs"
    argv = ["verify", "blockx4-d-sequence-r2", "--certificate-dir", str(certs), "--format", "json", "--jobs", "1"]
    assert main(argv) == EXIT_PASS
    (result,) = _json_lines(capsys.readouterr().out)
    assert result["status"] == "PASS"
    assert main(["verify", "--replay", result["certificate_path"]]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == "blockx4-d-sequence-r2: PASS"


def test_verify_list(workdir, capsys):
    assert main(["verify", "--list"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "census-sparse7 [heavy]" in out


def test_config_file(workdir, capsys):
    config = workdir / "pfrees.toml"
    config.write_text("log_level = 'DEBUG'\nlog_file = 'run.log'\n")
    assert main(["--config", str(config), "pf", "--generic", "3"]) == EXIT_PASS
    assert (workdir / "run.log").exists()


def test_claim_failure_exit(workdir, capsys):
    assert main(["diag", "--generic", "3", "--dimension", "4"]) == EXIT_CLAIM_FAILED


def test_usage_error_prints_no_stack_trace(workdir, capsys):
    assert main(["pf", "--generic", "4"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "Error: " in err
    assert "stack_trace" not in err and "Traceback" not in err
