import json
from fractions import Fraction

import pytest

from mop import cli, hahn
from mop.hahn import HahnParams

HAHN = ["--params", "alpha1=1/2,alpha2=1/3,beta=1/4,N=12"]
CHARLIER = ["--params", "b1=2,b2=3"]


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_matches_library(capsys):
    code, out, _ = run(capsys, "eval", "--family", "hahn", "--kind", "type1", "--n1", "1", "--n2", "1", "--a", "1", "--x", "0", *HAHN)
    assert code == 0
    p = HahnParams(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), 12)
    assert Fraction(out.strip()) == hahn.hahn_type1((1, 1), p)[1](0)


def test_eval_charlier(capsys):
    code, out, _ = run(capsys, "eval", "--family", "charlier", "--kind", "type2", "--n1", "1", "--n2", "0", "--x", "0", *CHARLIER)
    assert (code, out.strip()) == (0, "-2")


def test_missing_index_is_usage_error(capsys):
    code, _, err = run(capsys, "eval", "--family", "hahn", "--kind", "type1", "--n2", "1", "--x", "0", *HAHN)
    assert code == 2 and "usage" in err


def test_invalid_index_exit_3(capsys):
    code, _, _ = run(capsys, "eval", "--family", "hahn", "--kind", "type2", "--n1", "9", "--n2", "9", "--x", "0", *HAHN)
    assert code == 3


def test_coeffs_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "charlier", "--kind", "type2", "--n1", "1", "--n2", "0", *CHARLIER)
    assert code == 0 and out == "l,coefficient\n0,-2\n1,-1\n"


def test_weights_kravchuk(capsys):
    code, out, _ = run(capsys, "weights", "--family", "kravchuk", "--params", "p1=1/2,p2=1/3,N=2", "--a", "1")
    assert code == 0 and out.splitlines()[1:] == ["0,1/4", "1,1/2", "2,1/4"]


def test_output_file_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert cli.run(["table", "--family", "charlier", "--kind", "type2", "--max-order", "2", *CHARLIER, "-o", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert b"\r" not in paths[0].read_bytes()


def test_unwritable_output_exit_4(capsys):
    code, _, _ = run(capsys, "coeffs", "--family", "charlier", "--kind", "type2", "--n1", "1", "--n2", "0", *CHARLIER, "-o", "/nonexistent/dir/x.csv")
    assert code == 4


def test_verify_pass_and_unknown_suite(capsys):
    code, out, _ = run(capsys, "verify", "orthogonality", "--max-order", "2")
    assert code == 0
    doc = json.loads(out[out.index("{"):])
    assert doc["status"] == "pass"
    code, _, _ = run(capsys, "verify", "bogus")
    assert code == 2


def test_limits_rows_decrease(capsys):
    code, out, _ = run(capsys, "limits", "--route", "hahn-jp", "--kind", "type2", "--n1", "2", "--n2", "1")
    assert code == 0
    rows = out.splitlines()[1:]
    res = [float(r.split(",")[1]) for r in rows]
    assert len(res) == 3 and res[0] > res[1] > res[2]


def test_json_format(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "charlier", "--kind", "type2", "--n1", "1", "--n2", "0", *CHARLIER, "--format", "json")
    assert code == 0
    assert json.loads(out)


def test_float_mode_precision_column(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "meixner-i", "--kind", "type2", "--n1", "1", "--n2", "0",
                       "--params", "beta=5/2,c1=1/3,c2=1/4", "--mode", "float", "--precision", "80")
    assert code == 0 and out.splitlines()[0].endswith("precision_bits")


def test_precision_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MOP_PRECISION_BITS", "32")
    code, _, _ = run(capsys, "eval", "--family", "charlier", "--kind", "type2", "--n1", "1", "--n2", "0", "--x", "0", *CHARLIER, "--mode", "float")
    assert code == 2


def test_config_file_fills_flags(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "charlier", "params": {"b1": "2", "b2": "3"}}))
    code, out, _ = run(capsys, "eval", "--config", str(cfg), "--kind", "type2", "--n1", "1", "--n2", "0", "--x", "1")
    assert (code, out.strip()) == (0, "-1")
