import json

from click.testing import CliRunner

from qsimon.cli import main
from qsimon.cost import CSV_HEADER


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


def test_encrypt_decrypt_vector():
    r = run("simon", "encrypt", "--variant", "32/64", "--key", "1918111009080100", "--pt", "65656877")
    assert r.exit_code == 0 and r.output.strip() == "C69BE9BB"
    r = run("simon", "decrypt", "--variant", "SIMON32/64", "--key", "1918111009080100", "--ct", "c69be9bb")
    assert r.exit_code == 0 and r.output.strip() == "65656877"


def test_bad_hex_and_variant():
    assert run("simon", "encrypt", "--variant", "32/64", "--key", "zz", "--pt", "0").exit_code == 2
    assert run("simon", "encrypt", "--variant", "33/64", "--key", "0", "--pt", "0").exit_code == 2


def test_unknown_flag_is_usage_error():
    assert run("estimate", "table", "--id", "6", "--bogus").exit_code == 2
    assert run("estimate", "table", "--id", "7").exit_code == 2


def test_table_csv_header():
    r = run("estimate", "table", "--id", "6")
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == ",".join(CSV_HEADER)


def test_table_13_combines_both_halves():
    lines = run("estimate", "table", "--id", "13").output.splitlines()
    a = run("estimate", "table", "--id", "13a").output.splitlines()
    b = run("estimate", "table", "--id", "13b").output.splitlines()
    assert lines == a + b[1:]


def test_cost_tables_reject_nc7():
    assert run("--toffoli", "nc7", "estimate", "table", "--id", "4").exit_code == 2


def test_attack_estimate_json():
    r = run("estimate", "attack", "--variant", "32/64", "--technique", "qrkr")
    doc = json.loads(r.output)
    assert len(doc["rows"]) == 2 and "combined" in doc


def test_qaa_simulate_keys():
    r = run("qaa", "simulate", "--space-bits", "10", "--marked", "range:4")
    doc = json.loads(r.output)
    assert set(doc) == {"p", "m", "success_prob", "distribution_digest"}
    assert doc["m"] == 12 and doc["success_prob"] > 0.99


def test_qaa_marked_file(tmp_path):
    f = tmp_path / "marked.txt"
    f.write_text("1\n5\n")
    doc = json.loads(run("qaa", "simulate", "--space-bits", "4", "--marked", str(f)).output)
    assert doc["p"] == 2 / 16
    assert run("qaa", "simulate", "--space-bits", "4", "--marked", "nope").exit_code == 2


def test_circuit_summary():
    doc = json.loads(run("circuit", "build", "--part", "h-d2", "--format", "summary").output)
    assert doc["toff_s"] == 102 and doc["cnot"] == 196


def test_output_is_deterministic():
    args = ("attack", "toy", "--unknown-bits", "4", "--index-bits", "2", "--right-pairs", "1",
            "--free-bits", "2", "--seed", "5")
    a, b = run(*args), run(*args)
    assert a.exit_code == 0 and a.output == b.output


def test_out_dir_env(tmp_path):
    r = run("estimate", "table", "--id", "4", "--out", "t4.csv", env={"QSIMON_OUT_DIR": str(tmp_path)})
    assert r.exit_code == 0
    assert (tmp_path / "t4.csv").read_text().startswith("round,")


def test_verify_simon_suite():
    r = run("verify", "--suite", "simon", "--json")
    assert r.exit_code == 0
    assert json.loads(r.output)[0]["ok"] is True
