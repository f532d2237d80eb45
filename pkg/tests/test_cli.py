import dataclasses
import io
import json

import pytest

from pearllab import checks
from pearllab.cli import main, run
from pearllab.config import SEED_ENV, Settings

KEYS = ["id", "anchor", "status", "computed", "expected", "tolerance"]


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def report():
    code, text = call("verify-all", "--json")
    return code, text


def test_hf_default():
    code, text = call("hf", "--signs", "1,1,1", "--zeta", "1", "--char", "0")
    assert code == 0
    assert "HF^0 = Z/5, HF^1 = 0" in text


def test_hf_over_field():
    code, text = call("hf", "--signs", "1,1,-1", "--char", "11")
    assert code == 0
    assert "dim HF^0 = 1, dim HF^1 = 1 over F_11" in text


def test_qh_delta():
    code, text = call("qh", "--config", "delta")
    assert code == 0
    assert "char poly: λ^4 - 256" in text
    assert "flagged" not in text


def test_qh_o_is_flagged():
    code, text = call("qh", "--config", "O", "--char", "5")
    assert "char poly: λ^4 - 44λ^2 - 16" in text
    assert "flagged: published table lists λ^4 - 44λ - 16" in text


def test_m0_test():
    code, text = call("m0-test", "--value", "3", "--config", "delta", "--char", "7")
    assert code == 0
    assert "chi(3) = -175; eigenvalue mod 7: yes" in text
    _, text = call("m0-test", "--value", "3", "--config", "delta", "--char", "11")
    assert text.endswith("no\n")


def test_morse():
    code, text = call("morse")
    assert "d x2' = 2x1 + x2 + x3" in text
    assert "SNF: diag(1, 1, 4)" in text
    assert "H^even = Z + Z/4, H^odd = Z" in text


def test_disc():
    code, text = call("disc", "--kind", "maslov4")
    assert code == 0
    assert "maslov = 4" in text
    assert "in Z/4" in text


def test_intersect_rh_caseb():
    assert "families: 2; perturbed intersection points: 4" in call("intersect")[1]
    assert "ker = 7, coker = 0, index = 7" in call("rh", "--kappa", "0,0,4")[1]
    text = call("caseb")[1]
    assert text.endswith("inconsistent\n")


def test_clifford_form_file(tmp_path):
    path = tmp_path / "form.toml"
    path.write_text("p = 7\nmatrix = [[4, 2, 2], [2, 4, 2], [2, 2, 4]]\n")
    code, text = call("clifford", "--zeta", "1", "--form", str(path))
    assert code == 0
    assert "hochschild: (1, 0)" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["hf", "--signs", "1,1"],
        ["hf", "--bogus"],
        ["qh", "--config", "X"],
        ["rh", "--kappa", "a,b"],
        ["disc"],
    ],
)
def test_usage_errors_exit_2(argv):
    assert main(argv) == 2


def test_value_errors_exit_2(tmp_path, capsys):
    assert main(["hf", "--zeta", "3", "--char", "7"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["clifford", "--form", str(tmp_path / "missing.toml")]) == 2
    assert main(["disc", "--kind", "maslov2", "--samples", "16"]) == 2


def test_bad_settings_file_exit_2(tmp_path):
    path = tmp_path / "s.toml"
    path.write_text("samples = 64\n")
    assert main(["--settings", str(path), "rh", "--kappa", "1"]) == 2


def test_verify_all_json(report):
    code, text = report
    assert code == 0
    records = json.loads(text)
    assert len(records) >= 20
    for rec in records:
        assert list(rec) == KEYS
        assert rec["status"] in ("pass", "flagged")
        assert rec["anchor"]
        assert all(isinstance(v, str) for v in rec.values())
    ids = [r["id"] for r in records]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)


def test_verify_all_flags(report):
    flagged = {r["id"] for r in json.loads(report[1]) if r["status"] == "flagged"}
    assert flagged == {"01.morse-x2-row", "06.charpoly-O", "09.intersection-theta1"}


def test_verify_all_table():
    code, text = call("verify-all")
    lines = text.splitlines()
    assert lines[0].startswith("id")
    assert len(lines) == len(checks.run_all()) + 1


def test_exit_code_on_failure():
    rec = checks.CheckRecord("x", "a", checks.FAIL, "", "", "exact")
    assert checks.exit_code([rec]) == 1
    assert checks.exit_code([dataclasses.replace(rec, status=checks.FLAGGED)]) == 0


def test_settings_defaults():
    s = Settings.load(env={})
    assert s == Settings()
    assert (s.samples, s.seed) == (1024, 0)


def test_settings_file_and_env(tmp_path):
    path = tmp_path / "s.toml"
    path.write_text("samples = 512\nwinding_tol = 1e-5\nseed = 3\n")
    s = Settings.load(str(path), env={})
    assert (s.samples, s.winding_tol, s.seed) == (512, 1e-5, 3)
    s = Settings.load(str(path), env={SEED_ENV: "11"})
    assert s.seed == 11


def test_settings_rejects_unknown_keys(tmp_path):
    path = tmp_path / "s.toml"
    path.write_text("sample = 512\n")
    with pytest.raises(ValueError):
        Settings.load(str(path), env={})


def test_settings_sample_floor(tmp_path):
    path = tmp_path / "s.toml"
    path.write_text("samples = 100\n")
    with pytest.raises(ValueError):
        Settings.load(str(path), env={})
