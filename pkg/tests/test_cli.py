import json

import jsonschema

from braidhom.cli import main
from braidhom.homology import REPORT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list_examples(capsys):
    code, out, _ = run(capsys, "list-examples")
    assert code == 0
    assert "braided_B" in out and "toy3" in out


def test_verify_slq2(capsys):
    code, out, _ = run(capsys, "verify", "slq2_canonical", "--checks", "rform,yangbaxter,ribbon")
    assert code == 0
    assert out.count("ok") == 3


def test_verify_unknown_check_is_config_error(capsys):
    code, _, err = run(capsys, "verify", "toy3", "--checks", "rform")
    assert code == 2
    assert "not available" in err


def test_config_errors(capsys):
    assert run(capsys, "hochschild", "nowhere")[0] == 2
    assert run(capsys, "hochschild", "braided_line", "--lambda", "bad:1")[0] == 2
    assert run(capsys, "hochschild", "braided_line", "--max-n", "-1")[0] == 2
    assert run(capsys, "hochschild", "braided_line", "--p", "1")[0] == 2
    assert run(capsys, "hochschild", "braided_line", "--p", "2", "--symbolic")[0] == 2
    assert run(capsys, "transmute", "plane", "--check")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_cyclic_line(capsys):
    code, out, _ = run(capsys, "cyclic", "braided_line", "--lambda", "generic:3", "--max-n", "6",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    dims = [0] * 7
    for r in doc["results"]:
        dims[r["n"]] += r["dim"]
    assert dims == [1, 0, 1, 0, 1, 0, 1]


def test_hochschild_line_all_methods_agree(capsys):
    code, out, _ = run(capsys, "hochschild", "braided_line", "--lambda", "qpow:-4", "--method", "all",
                       "--max-weight", "8", "--max-n", "1", "--format", "json", "--workers", "2")
    assert code == 0
    docs = json.loads(out)
    assert [d["method"] for d in docs] == ["bar", "resolution"]
    for d in docs:
        jsonschema.validate(d, REPORT_SCHEMA)


def test_json_is_deterministic(capsys):
    args = ["hochschild", "quantum_plane", "--lambda", "qpow:-1", "--max-weight", "4",
            "--max-n", "2", "--format", "json"]
    first = run(capsys, *args, "--workers", "1")[1]
    second = run(capsys, *args, "--workers", "3")[1]
    assert first == second


def test_plane_method_disagreement_fails_loudly(capsys):
    code, out, err = run(capsys, "hochschild", "quantum_plane", "--lambda", "qpow:-1", "--method",
                         "all", "--max-weight", "6", "--max-n", "2", "--p", "2")
    assert code == 1
    assert "disagree" in err
    assert "MISMATCH" in out


def test_csv_output(capsys, tmp_path):
    path = tmp_path / "r.csv"
    code, out, _ = run(capsys, "tor", "quantum_plane", "--lambda", "qpow:0", "--max-weight", "4",
                       "--format", "csv", "--out", str(path))
    assert code == 0 and out == ""
    lines = path.read_text().splitlines()
    assert lines[0].startswith("example,method")
    assert len(lines) > 1


def test_slq2_certified(capsys):
    code, out, _ = run(capsys, "hochschild", "slq2_canonical", "--max-degree", "2", "--p", "2",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["results"][0]["soundness"] == "certified-zero"


def test_b_kernel_window(capsys):
    code, out, _ = run(capsys, "tor", "braided_B", "--max-degree", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["results"][0]["soundness"] == "kernel-window"


def test_transmute(capsys):
    assert run(capsys, "transmute", "slq2", "--check")[0] == 0


def test_twist_exit_codes(capsys):
    assert run(capsys, "twist", "slq2", "--check-coboundary", "--window", "2")[0] == 1
