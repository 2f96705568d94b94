import copy
import json

import pytest

from stratcartan import fixtures as fx
from stratcartan.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra_check_fixture(capsys):
    code, out, _ = run(capsys, "algebra", "check", "ex1", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["dim"] == 9
    assert [rep["projectives"][v]["dims"] for v in "123"] == [[1, 1, 1]] * 3


def test_algebra_check_two_cycle_text(capsys):
    code, out, _ = run(capsys, "algebra", "check", "ex2")
    assert code == 0
    assert "P(1): dim (2,1,1)" in out and "minimal admissible L = 3" in out


def test_algebra_check_bad_relation(tmp_path, capsys):
    doc = copy.deepcopy(fx.algebra_doc("ex1"))
    doc["relations"].append([{"coeff": "1", "path": ["a"]}])
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, "algebra", "check", str(p))
    assert code == 2 and "radical square" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "algebra", "check", "/nonexistent/alg.json")
    assert code == 2


def test_module_check_inline(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"dims": {"1": 1, "2": 1}, "maps": {"a": [["1"]]}}))
    code, out, _ = run(capsys, "module", "check", "ex1", str(p), "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["modules"][0]["iso_label"] == "EX1.P1/soc"


def test_module_check_violation(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"dims": {"1": 1, "2": 1, "3": 1}, "maps": {"a": [["1"]], "b": [["1"]], "c": [["1"]]}}))
    code, _, err = run(capsys, "module", "check", "ex1", str(p))
    assert code == 2 and "violates relation" in err


def test_unknown_module_name(capsys):
    code, _, err = run(capsys, "tau", "ex1", "--modules", "EX9.Q")
    assert code == 2


def test_tau_command(capsys):
    code, out, _ = run(capsys, "tau", "ex1", "--modules", "S(1)", "S(2)", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["tau_rigid"] is False
    assert rep["witness"] == {"hom_source": "S(2)", "tau_of": "S(1)", "dim": 1}
    code, out, _ = run(capsys, "tau", "ex1", "--modules", "P(1)", "EX1.M2", "EX1.M3")
    assert "τ-rigid: yes" in out


def test_stratify_two_cycle(capsys):
    code, out, _ = run(capsys, "stratify", "ex2", "--modules", "P(1)", "P(2)", "P(3)", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["matrices"]["C"]["entries"] == [[1, 0, 0], [0, 2, 0], [0, 0, 2]]
    assert rep["cartan_group"]["torsion"] == [2, 2] and rep["cartan_group"]["order"] == 4


def test_stratify_not_rigid(capsys):
    code, out, _ = run(capsys, "stratify", "ex1", "--modules", "S(1)", "S(2)")
    assert code == 1 and "not tau-rigid" in out


def test_stratify_bad_order(capsys):
    code, out, _ = run(capsys, "stratify", "ex1", "--modules", "EX1.M1", "EX1.M2", "EX1.M3", "--order", "3,2,1")
    assert code == 1 and "TF-admissible" in out
    code, _, err = run(capsys, "stratify", "ex1", "--modules", "EX1.M1", "EX1.M2", "--order", "1,1")
    assert code == 2 and "permutation" in err


def test_reordered_summands_auto_order(capsys):
    code, out, _ = run(capsys, "stratify", "ex1", "--modules", "EX1.M3", "EX1.M2", "EX1.M1", "--auto-order",
                       "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    assert rep["order"]["names"] == ["EX1.M3", "EX1.M1", "EX1.M2"]


def test_verify_flags_printed_g(capsys):
    code, out, _ = run(capsys, "verify", "ex1-M", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert any("printed G^M is inconsistent" in w for w in rep["warnings"])
    assert rep["matrices"]["G"]["entries"] == [[1, 1, 0], [0, 0, 1], [0, -1, -1]]


def test_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "ex1-A", "--checks", "mtm,bogus")
    assert code == 2


def test_perturbed_golden_names_cell(tmp_path, capsys):
    gold = fx.golden()
    gold["ex1-A"]["C"][0][2] += 1
    p = tmp_path / "golden.json"
    p.write_text(json.dumps(gold))
    code, out, _ = run(capsys, "selftest", "--golden", str(p))
    assert code == 1
    assert "C(1,3) expected 2, got 1" in out
    code, out, _ = run(capsys, "verify", f"{p}:ex1-A")
    assert code == 1 and "C(1,3)" in out


def test_selftest_json_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["selftest", "--format", "json", "--out", str(a)]) == 0
    assert main(["selftest", "--format", "json", "--out", str(b), "--workers", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["schema_version"] == 1 and rep["seed"] == 0


@pytest.mark.parametrize("checks", ["pairing", "sweep"])
def test_suite_checks(capsys, checks):
    code, out, _ = run(capsys, "stratify", "ex1", "--modules", "P(1)", "P(2)", "P(3)", "--checks", checks,
                       "--format", "json")
    rep = json.loads(out)
    assert code == 0 and checks in rep
