import json
import subprocess
import sys

import pytest

from sdcss.cli import main
from sdcss.codes import builtin
from sdcss.formats import emit_code, parse_basis


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_check_yes_and_no(capsys):
    code, doc = run_json(capsys, "check", "qhamming15")
    assert code == 0 and doc["status"] == "ok" and doc["payload"]["exists"]
    code, doc = run_json(capsys, "check", "builtin:c422")
    assert code == 2 and doc["status"] == "unsupported"


def test_check_hamming_ref(capsys):
    code, doc = run_json(capsys, "check", "hamming:5")
    assert code == 0 and doc["payload"]["code"]["n"] == 31


def test_basis_writes_file(capsys, tmp_path):
    out = tmp_path / "b.txt"
    code, doc = run_json(capsys, "basis", "c622", "-o", str(out))
    assert code == 0 and doc["payload"]["verified"]
    assert parse_basis(out.read_text()).all_matched


def test_phase_all_plus_on_qhamming(capsys):
    code, doc = run_json(capsys, "phase", "qhamming15", "--signs", "all+")
    assert code == 0
    assert doc["payload"]["sdg_qubits"] == [3, 6, 9, 12]
    assert doc["payload"]["basis_source"] == "reference"


def test_phase_sign_forms(capsys):
    _, a = run_json(capsys, "phase", "c622", "--signs", "+-")
    _, b = run_json(capsys, "phase", "c622", "--signs", "1,-1")
    assert a["payload"]["layer"] == b["payload"]["layer"]
    code, doc = run_json(capsys, "phase", "c622", "--signs", "+")
    assert code == 1 and doc["status"] == "invalid-input"


def test_phase_with_gauge_basis_is_invalid(capsys):
    code, doc = run_json(capsys, "phase", "qhamming15", "--reference", "gauge")
    assert code == 1 and doc["status"] == "invalid-input"


def test_verify_gauge_reports_swaps(capsys):
    code, doc = run_json(capsys, "verify", "qhamming15", "--reference", "gauge")
    assert code == 1
    assert doc["payload"]["swaps"] == [[1, 2], [2, 1], [3, 4], [4, 3], [5, 6], [6, 5]]


def test_concat_verify(capsys, tmp_path):
    code, doc = run_json(capsys, "concat", "--codes", "c622", "c622", "--verify", "--samples", "16")
    assert code == 0 and doc["payload"]["N"] == 36 and doc["payload"]["verify"]["ok"]
    spec = tmp_path / "spec.txt"
    spec.write_text("builtin:c622\nbuiltin:c422\n")
    code, doc = run_json(capsys, "concat", str(spec))
    assert code == 2 and doc["payload"]["level"] == 2


def test_convert(capsys):
    code, doc = run_json(capsys, "convert", "Z1 Z2", "Y1 Y2")
    assert code == 0 and doc["payload"]["word"] == ["H", "S"]
    code, doc = run_json(capsys, "convert", "XI", "ZZ")
    assert code == 1 and doc["status"] == "not-found"


def test_catalog_and_roundtrip(capsys, tmp_path):
    code, doc = run_json(capsys, "catalog", "steane7")
    assert code == 0
    path = tmp_path / "s.code"
    path.write_text(doc["payload"]["file"])
    code, doc = run_json(capsys, "check", str(path))
    assert code == 0 and doc["payload"]["code"]["name"] == "steane7"
    code, doc = run_json(capsys, "catalog", "hamming", "--m", "3")
    assert doc["payload"]["code"]["n"] == 7


@pytest.mark.parametrize("argv", [["check", "nope"], ["check", "/no/such/file"], ["catalog", "hamming"]])
def test_invalid_input(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 1 and doc["status"] == "invalid-input"
    assert doc["payload"]["error"]


def test_malformed_code_file(capsys, tmp_path):
    path = tmp_path / "bad.code"
    path.write_text("H:\n1110\n")
    code, doc = run_json(capsys, "check", str(path))
    assert code == 1 and doc["status"] == "invalid-input"
    path.write_text("H:\n111\n11x1\n")
    code, doc = run_json(capsys, "check", str(path))
    assert [p["line"] for p in doc["payload"]["problems"]] == [3]


def test_human_output(capsys, tmp_path):
    code, out = run(capsys, "catalog", "c622", "--human")
    assert code == 0 and out.startswith("name: c622")
    code, out = run(capsys, "check", "c422", "--human")
    assert code == 2 and "no compatible basis" in out


def test_entry_point_subprocess(tmp_path):
    path = tmp_path / "q.code"
    path.write_text(emit_code(builtin("qhamming15")))
    proc = subprocess.run([sys.executable, "-m", "sdcss.cli", "check", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["witness_weight"] == 15
