import json

import pytest

from cy3 import cli, verify
from cy3.forms import LinearForm


def run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_cube_and_c2(capsys):
    status, out, _ = run(capsys, "cube", "--model", "builtin:x_phi", "--divisor", "template:H_phi")
    assert status == 0
    assert "D^3" in out and "54*x*y*z - 243" in out
    status, out, _ = run(capsys, "c2", "--model", "builtin:x_t", "--divisor", "template:H_T")
    assert status == 0 and out.rstrip().endswith("162")


def test_cube_with_binding(capsys):
    status, out, _ = run(
        capsys, "cube", "--model", "builtin:x_t", "--divisor", "template:H_T", "--at", "a=7", "--at", "b=14"
    )
    assert status == 0
    # the true cube of the bound divisor
    assert out.rstrip().endswith("3825")


def test_hilbert(capsys):
    status, out, _ = run(capsys, "hilbert", "--d3", "1053", "--dc2", "162")
    assert status == 0
    assert "(351/2)*n^3 + (27/2)*n" in out
    status, out, _ = run(capsys, "hilbert", "--d3", "1053", "--dc2", "162", "--json")
    doc = json.loads(out)
    assert doc["results"]["values"] == {"1": "189", "2": "1431", "3": "4779"}
    assert doc["results"]["integer-valued"] is True


def test_hilbert_input_errors(capsys):
    status, _, err = run(capsys, "hilbert", "--d3", "1")
    assert status == 2 and "error" in err
    status, _, err = run(capsys, "hilbert", "--model", "builtin:x_phi", "--divisor", "template:H_phi")
    assert status == 2 and "symbolic" in err


def test_distinguish(capsys):
    status, out, _ = run(capsys, "distinguish", "builtin:x_phi", "builtin:x_t")
    assert status == 0
    assert out.splitlines()[0] == "distinguished: F.c2 = -4 (mod 6 fails), F^3 = 8 (mod 3 fails)"
    status, out, _ = run(capsys, "distinguish", "builtin:x_phi", "builtin:x_phi")
    assert out.startswith("inconclusive")


def test_match_default_equation(capsys):
    status, out, _ = run(capsys, "match", "--box", "16", "--workers", "3", "--json")
    assert status == 0
    doc = json.loads(out)
    values = [s["values"] for s in doc["results"]["solutions"]]
    assert ["1", "1", "1", "2", "16"] in values
    assert doc["results"]["count"] == str(len(values))


def test_match_with_fixed_parameters_and_certificate(capsys):
    status, out, _ = run(
        capsys, "match", "--fix", "x=6", "--fix", "y=2", "--fix", "z=2", "--box", "20", "--certify"
    )
    assert status == 0
    assert "(6, 2, 2, 7, 14)  H^3 = 1053" in out
    assert "certificate: (H^3, H.c2) = (1053, 162)" in out


def test_match_standard_is_infeasible(capsys):
    status, out, _ = run(capsys, "match", "--equation", "standard", "--box", "5")
    assert status == 0
    assert "no solution modulo 3" in out


def test_match_missing_box(capsys):
    status, _, err = run(capsys, "match", "--box", "a=3")
    assert status == 2 and "no --box bound" in err
    status, _, err = run(capsys, "match", "--box", "many")
    assert status == 2


def test_family_check(capsys):
    assert run(capsys, "family-check")[0] == 0
    status, out, _ = run(capsys, "family-check", "--equation", "standard")
    assert status == 1
    assert "-576*C^4 + 288*C^2 - 20" in out
    assert "modulo 3" in out


def test_export_roundtrip(capsys, tmp_path):
    path = tmp_path / "x_t.json"
    assert run(capsys, "export", "--model", "builtin:x_t", "--out", str(path))[0] == 0
    status, out, _ = run(capsys, "c2", "--model", str(path), "--divisor", "template:H_T")
    assert status == 0 and out.rstrip().endswith("162")
    status, out, _ = run(capsys, "export", "--model", str(path))
    assert out == path.read_text()


def test_bad_model_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "m"}')
    status, _, err = run(capsys, "cube", "--model", str(path), "--divisor", "A")
    assert status == 2 and "basis" in err
    status, _, err = run(capsys, "cube", "--model", str(tmp_path / "missing.json"), "--divisor", "A")
    assert status == 2


def test_json_reports_are_byte_identical(capsys):
    argv = ("cube", "--model", "builtin:x_phi", "--divisor", "template:H_phi", "--json")
    first, second = run(capsys, *argv)[1], run(capsys, *argv)[1]
    assert first == second
    doc = json.loads(first)
    assert set(doc) == {"command", "inputs_digest", "results", "citations"}
    assert doc["results"]["D^3"] == "54*x*y*z - 243"


def test_verify_paper_passes(capsys):
    status, out, _ = run(capsys, "verify-paper")
    assert status == 0
    lines = out.splitlines()
    assert lines[-1].endswith(" passed, 0 failed")
    assert any("INFO" in l for l in lines)
    assert not any(" FAIL " in l for l in lines)


def test_verify_paper_detects_corrupted_data(capsys, monkeypatch):
    original = verify.default_models

    def corrupted():
        models = original()
        m = models["x_phi"]
        # drop the surfaces so the altered c2 value passes model validation
        bad = LinearForm(m.basis, {**m.c2.entries, "E000": -5})
        models["x_phi"] = m.replace(c2=bad, surfaces={})
        return models

    monkeypatch.setattr(verify, "default_models", corrupted)
    status, out, _ = run(capsys, "verify-paper")
    assert status == 1
    assert "FAIL" in out
    assert not out.splitlines()[-1].endswith(" 0 failed")
