import json

import pytest

from sievebound.cli import main

TINY = [
    "--budget", "SA51=20000", "--budget", "SA52=20000", "--budget", "SA53=20000",
    "--budget", "SA54=20000", "--budget", "SB51=20000", "--budget", "SB52=20000",
    "--budget", "SB53=20000", "--budget", "SC=40000", "--budget", "SC2=20000",
    "--budget", "SC4=20000",
]


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_omega_subcommand(capsys):
    code, out, _ = run_cli(["omega", "1.5"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["u"] == 1.5
    assert obj["omega"] == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert obj["omega_lower"] == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert obj["omega_simple_upper"] == pytest.approx(2.0 / 3.0)


def test_classify_subcommand(capsys):
    code, out, _ = run_cli(["classify", "0.46", "0.20"], capsys)
    assert code == 0
    assert json.loads(out)["class"] == "II"


def test_member_subcommand(capsys):
    code, out, _ = run_cli(["member", "SC", "0.40", "0.24"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["member"] is True
    assert obj["first_failing_clause"] is None

    code, out, _ = run_cli(["member", "SA51", "0.30", "0.10", "0.12", "0.05"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["member"] is False
    assert obj["first_failing_clause"] == "t3_bracket"


def test_member_wrong_arity_is_usage_error(capsys):
    code, _, err = run_cli(["member", "SC", "0.4"], capsys)
    assert code == 64
    assert "coordinates" in err


def test_unknown_subcommand(capsys):
    code, _, _ = run_cli(["frobnicate"], capsys)
    assert code == 64


def test_bad_flag_value(capsys):
    code, _, _ = run_cli(["--budget", "SC", "verify"], capsys)
    assert code == 64
    code, _, _ = run_cli(["--budget", "NOPE=1000", "verify"], capsys)
    assert code == 64


def test_witness_subcommand(capsys):
    code, out, _ = run_cli(["witness", "--a", "1", "--d", "10:10"], capsys)
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert any(rec["p"] == 101 and rec["d"] == 10 for rec in lines)


def test_verify_json_deterministic(tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    code1, _, _ = run_cli(
        TINY + ["--seed", "7", "--output", str(out1), "verify"], capsys
    )
    code2, _, _ = run_cli(
        TINY + ["--seed", "7", "--output", str(out2), "verify"], capsys
    )
    assert code1 == code2
    assert code1 in (0, 2)
    assert out1.read_bytes() == out2.read_bytes()
    rep = json.loads(out1.read_text())
    assert rep["schema_version"] == 1
    assert set(rep["domains"]) == {
        "SA51", "SA52", "SA53", "SA54", "SB51", "SB52", "SB53", "SC", "SC2", "SC4"
    }


def test_verify_csv(capsys):
    code, out, _ = run_cli(TINY + ["--csv", "verify"], capsys)
    assert code in (0, 2)
    lines = out.strip().splitlines()
    assert lines[0] == "name,dim,estimate,std_err,samples"
    assert len(lines) == 12  # header + 10 domains + total
    assert lines[1].startswith("SA51,4,")


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "sigma = 1/20.31\n"
        "seed = 9\n"
        "# comment line\n"
        "[budgets]\n"
        + "".join(f"{n} = 20000\n" for n in
                  ["SA51", "SA52", "SA53", "SA54", "SB51", "SB52", "SB53", "SC", "SC2", "SC4"])
    )
    out1 = tmp_path / "a.json"
    code, _, _ = run_cli(["--config", str(cfg), "--output", str(out1), "verify"], capsys)
    assert code in (0, 2)
    rep = json.loads(out1.read_text())
    assert rep["seed"] == 9
    assert rep["domains"]["SC"]["samples"] <= 20000

    # CLI flag overrides the config seed
    out2 = tmp_path / "b.json"
    code, _, _ = run_cli(
        ["--config", str(cfg), "--seed", "11", "--output", str(out2), "verify"], capsys
    )
    rep2 = json.loads(out2.read_text())
    assert rep2["seed"] == 11


def test_scan_subcommand(tmp_path, capsys):
    out = tmp_path / "scan.jsonl"
    code, _, _ = run_cli(
        TINY + ["--output", str(out), "scan", "--sigma-range",
                f"{1/20.31}:{1/20.31}:1"],
        capsys,
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["sigma"] == pytest.approx(1 / 20.31)


def test_invalid_params_exit_one(capsys):
    code, _, err = run_cli(["--sigma", "0.06", "classify", "0.3", "0.2"], capsys)
    assert code == 1
    assert "error" in err
