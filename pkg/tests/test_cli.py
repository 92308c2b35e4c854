import json

import pytest

from oscusec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dim_json(capsys):
    code, out, _ = run(capsys, "dim", "--pn", "3", "--d", "4", "--double", "9",
                       "--seed", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["observed_rank"] == 34
    assert doc["verdict"] == "ObservedSpecial"
    assert doc["deficiency"] == 1


def test_dim_global_flags_before_subcommand(capsys):
    c1, out1, _ = run(capsys, "--seed", "3", "--format", "json", "dim",
                      "--pn", "2", "--d", "4", "--double", "5")
    c2, out2, _ = run(capsys, "dim", "--pn", "2", "--d", "4", "--double", "5",
                      "--seed", "3", "--format", "json")
    assert c1 == c2 == 0
    assert out1 == out2


def test_dim_scheme_file(capsys, tmp_path):
    doc = {
        "spec": {"kind": "projective", "n": 2, "d": 4},
        "points": [{"m": 2, "loc": "generic"}] * 5,
    }
    path = tmp_path / "scheme.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "dim", "--scheme", str(path), "--seed", "3")
    assert code == 0
    assert json.loads(out)["dimension"] == 0


def test_dim_missing_spec_is_usage_error(capsys):
    code, _, err = run(capsys, "dim", "--triple", "1")
    assert code == 2 and "error" in err


def test_terracini_agreement(capsys):
    code, out, _ = run(capsys, "terracini", "--pn", "2", "--d", "5",
                       "--m", "2", "--h", "1", "--seed", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["agree"] is True
    assert doc["secant_frame_dim"] == doc["join_dim"] == doc["interpolation_dim"] == 11


def test_terracini_hirzebruch(capsys):
    code, out, _ = run(capsys, "terracini", "--hirzebruch", "1", "3", "2",
                       "--m", "1", "--h", "2", "--seed", "2")
    assert code == 0
    assert json.loads(out)["agree"] is True


def test_horace_check(capsys):
    code, out, _ = run(capsys, "horace", "check", "5", "2", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["check_A"]["verdict"] == "CertifiedByA"
    assert doc["check_A"]["lhs"] == 50 and doc["check_A"]["rhs"] == 56


def test_horace_build_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, _, _ = run(capsys, "horace", "build", "6", "3", "4",
                     "--seed", "1", "-o", str(path))
    assert code == 0
    code, out, _ = run(capsys, "horace", "verify", str(path), "--seed", "1")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_horace_build_uncertified_exits_4(capsys):
    code, _, err = run(capsys, "horace", "build", "4", "3", "0")
    assert code == 4 and "certificate" in err


def test_horace_verify_tampered_exits_4(capsys, tmp_path):
    path = tmp_path / "cert.json"
    run(capsys, "horace", "build", "6", "3", "4", "--seed", "1", "-o", str(path))
    doc = json.loads(path.read_text())
    doc["steps"][0]["spec_simples"] += 40
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "horace", "verify", str(path), "--seed", "1")
    assert code == 4 and "certificate failure" in err


def test_horace_verify_malformed_exits_2(capsys, tmp_path):
    path = tmp_path / "cert.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "horace", "verify", str(path))
    assert code == 2
    path.write_text(json.dumps({"version": 1}))
    code, _, _ = run(capsys, "horace", "verify", str(path))
    assert code == 2


def test_tables_laplace_csv(capsys):
    code, out, _ = run(capsys, "tables", "laplace", "--n", "1..2", "--h", "1",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,h,K,T,rewritten_ok,curve_excess"
    assert lines[1] == "1,1,3,4,True,True"


def test_tables_jobs_do_not_change_output(capsys):
    argv = ["tables", "theorem2", "--d", "4..5", "--h", "1..3", "--seed", "9"]
    _, out1, _ = run(capsys, *argv, "--jobs", "1")
    _, out4, _ = run(capsys, *argv, "--jobs", "4")
    assert out1 == out4


def test_tables_degree_cap(capsys):
    code, _, err = run(capsys, "tables", "theorem2", "--d", "40", "--h", "1")
    assert code == 2 and "cap" in err


def test_tables_corollary1_h3_row(capsys):
    code, out, _ = run(capsys, "tables", "corollary1", "--h", "3", "--m", "2",
                       "--d", "4")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["verdict"] == "outside paper's table"
    assert row["observed"] is None


def test_special_p2(capsys):
    code, out, _ = run(capsys, "special", "p2", "4", "0", "5")
    assert code == 0 and json.loads(out)["exceptional"] is True
    code, out, _ = run(capsys, "special", "p2", "5", "0", "5")
    assert code == 0 and json.loads(out)["exceptional"] is False


def test_special_hirzebruch(capsys):
    code, out, _ = run(capsys, "special", "hirzebruch", "3", "4", "2", "2", "8")
    doc = json.loads(out)
    assert code == 0 and doc["exceptional"] is True
    assert doc["interpretation_dependent"] is False


def test_special_wrong_arity(capsys):
    code, _, err = run(capsys, "special", "p2", "4", "0")
    assert code == 2 and "takes 3 integers" in err


def test_out_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "dim", "--pn", "2", "--d", "3", "--simple", "2",
                       "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["dimension"] == 7


def test_bad_prime_exits_2(capsys):
    code, _, err = run(capsys, "--prime", "1000004", "dim", "--pn", "2", "--d", "2")
    assert code == 2 and "prime" in err


def test_output_deterministic_for_fixed_config(capsys):
    argv = ["dim", "--pn", "3", "--d", "5", "--triple", "2", "--double", "3",
            "--seed", "12", "--trials", "2"]
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_pretty_format_smoke(capsys):
    code, out, _ = run(capsys, "special", "p2", "4", "0", "5", "--format", "pretty")
    assert code == 0 and "exceptional: True" in out
