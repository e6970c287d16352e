import json
import subprocess
import sys

import jsonschema
import pytest

from quadtwist import load_schema
from quadtwist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--p", "13", "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, load_schema("certificate"))
    assert data["unverified_count"] == 0


def test_verify_rejects_bad_congruence(capsys):
    code, _, err = run(capsys, "verify", "--p", "17")
    assert code == 2
    assert "17 ≢ 13 (mod 24)" in err


def test_verify_37(capsys):
    assert run(capsys, "verify", "--p", "37")[0] == 0


def test_verify_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "verify", "--p", "61")
    _, js, _ = run(capsys, "verify", "--p", "61", "--json")
    verdict = json.loads(js)["verdict"]
    assert f"verdict: {verdict}" in text


def test_caps(capsys):
    assert run(capsys, "verify", "--p", "1009")[0] == 2
    assert run(capsys, "scan", "--pmax", "1001")[0] == 2
    assert run(capsys, "gw", "--alpha", "16", "--m", "8", "--bound", str(10**6 + 1))[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2
    assert run(capsys, "minimality")[0] == 2
    assert run(capsys, "minimality", "40")[0] == 2
    assert run(capsys, "gw", "--alpha", "0", "--m", "8")[0] == 2
    assert run(capsys, "gw", "--alpha", "16", "--m", "8", "--field", "qsqrt:9")[0] == 2
    assert run(capsys, "gw", "--alpha", "16", "--m", "0")[0] == 2


def test_minimality_table(capsys):
    code, out, _ = run(capsys, "minimality", "--max", "39")
    assert code == 0
    assert out.strip().splitlines()[-1] == "39: candidate"
    _, js, _ = run(capsys, "minimality", "--max", "39", "--json")
    rows = json.loads(js)
    assert [r["classification"] for r in rows] == [l.split(": ")[1] for l in out.strip().splitlines()]


def test_minimality_single(capsys):
    code, out, _ = run(capsys, "minimality", "21")
    assert code == 0 and out.startswith("21: excluded-case-2") and "product=-1" in out


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--pmax", "40", "--json")
    assert code == 0
    assert [r["p"] for r in json.loads(out)] == [13, 37]


def test_gw(capsys):
    code, out, _ = run(capsys, "gw", "--alpha", "16", "--m", "8", "--field", "qsqrt:7", "--bound", "100")
    assert code == 0 and "violation: true" in out
    _, js, _ = run(capsys, "gw", "--alpha", "16", "--m", "8", "--field", "qsqrt:7", "--bound", "100", "--json")
    data = json.loads(js)
    jsonschema.validate(data, load_schema("gwreport"))
    assert data["violation"] is True


def test_output_file(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "verify", "--p", "13", "--json", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["p"] == 13


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "MISMATCH" not in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quadtwist", "verify", "--p", "17"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "17 ≢ 13 (mod 24)" in proc.stderr
