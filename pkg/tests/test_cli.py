import json
import subprocess
import sys

import numpy as np
import pytest

from gmf import BlockMatrix, FormatError, random_psd, symmetric_group
from gmf.cli import run
from gmf.jsonio import (block_from_json, block_to_json, group_from_json, group_to_json, matrix_from_json,
                        matrix_to_json, spec_from_json)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


@pytest.fixture
def eye3(tmp_path):
    return write(tmp_path, "I3.json", matrix_to_json(np.eye(3)))


@pytest.fixture
def s3(tmp_path):
    return write(tmp_path, "S3.json", {"degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]})


def test_eval_identity(capsys, eye3, s3):
    code, out, _ = call(capsys, "eval", "--matrix", eye3, "--group", s3, "--char", "sign")
    assert code == 0 and out == {"value": [1.0, 0.0]}


def test_eval_family_and_no_fast(capsys, tmp_path):
    A = write(tmp_path, "A.json", matrix_to_json([[1, 2], [3, 4]]))
    assert call(capsys, "eval", "--matrix", A, "--group", "S", "--char", "trivial")[1] == {"value": [10.0, 0.0]}
    assert call(capsys, "eval", "--matrix", A, "--char", "sign", "--no-fast")[1]["value"] == [-2.0, 0.0]


def test_eval_non_multiplicative_table(capsys, tmp_path):
    A = write(tmp_path, "A.json", matrix_to_json([[1, 2], [3, 4]]))
    ch = write(tmp_path, "chi.json", {"values": [[1, 0], [2, 0]]})
    code, out, _ = call(capsys, "eval", "--matrix", A, "--char", ch)
    assert code == 0 and out == {"value": [16.0, 0.0], "evaluation_only": True}


def test_induced_modes_agree(capsys, tmp_path):
    A = write(tmp_path, "A.json", matrix_to_json(random_psd(3, 1)))
    _, comp, _ = call(capsys, "induced", "--matrix", A, "--char", "trivial", "--mode", "compression")
    _, entry, _ = call(capsys, "induced", "--matrix", A, "--char", "trivial", "--mode", "entrywise")
    assert comp["rows"] == entry["rows"] == 6
    assert comp["labels"] == entry["labels"] == [[1, 1], [1, 2], [1, 3], [2, 2], [2, 3], [3, 3]]
    np.testing.assert_allclose(matrix_from_json(comp), matrix_from_json(entry), atol=1e-12)


def test_induced_sign_is_determinant(capsys, tmp_path):
    M = random_psd(2, 4)
    A = write(tmp_path, "A.json", matrix_to_json(M))
    _, out, _ = call(capsys, "induced", "--matrix", A, "--char", "sign")
    assert out["labels"] == [[1, 2]]
    assert matrix_from_json(out)[0, 0] == pytest.approx(np.linalg.det(M))


def test_symclass_describe(capsys):
    code, out, _ = call(capsys, "symclass", "describe", "--m", "2", "--n", "2", "--char", "sign")
    assert code == 0
    assert out["delta"] == [[1, 1], [1, 2], [2, 2]]
    assert out["delta_bar"] == [[1, 2]] and out["nu"] == [1] and out["dim"] == 1


def test_verify_confirmation_run(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "css", "--m", "2", "--n", "2", "--char", "sign",
                        "--trials", "10", "--seed", "7")
    assert code == 0 and out["passed"]
    (report,) = out["reports"]
    assert set(report) >= {"suite", "config", "trials", "failures", "min_margin"}
    assert report["trials"] == 10 and report["failures"] == []


def test_verify_grid_and_all_characters(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "css,cp", "--m", "1,2", "--n", "2", "--group", "S,C",
                        "--trials", "3")
    assert code == 0
    # 2 suites x 2 block counts x 2 groups x 2 characters
    assert len(out["reports"]) == 16


def test_verify_all_suites(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "all", "--trials", "3")
    assert code == 0 and {r["suite"] for r in out["reports"]} >= {"thompson", "detm_superadd", "compression"}


def test_thompson_command(capsys):
    code, out, _ = call(capsys, "thompson", "--m", "2,3", "--n", "2", "--trials", "20")
    assert code == 0 and len(out["reports"]) == 2


def test_failing_suite_exits_one(capsys, monkeypatch):
    import gmf.cli as cli
    from gmf.harness import SuiteReport

    def broken(cfg):
        report = SuiteReport("css", cfg.describe())
        report.record(0, "main", -1.0, cfg.tol, -1.0, ())
        return report

    monkeypatch.setattr(cli, "run_suite", lambda name, cfg: broken(cfg))
    code, out, _ = call(capsys, "verify", "--suite", "css", "--trials", "1", "--char", "sign")
    assert code == 1 and not out["passed"]
    assert out["reports"][0]["failures"][0]["seed_offset"] == 0


@pytest.mark.parametrize("argv,error", [
    (["verify", "--suite", "css", "--trials", "0"], "usage"),
    (["verify", "--bogus"], "usage"),
    (["verify", "--suite", "nope"], "usage"),
    (["verify", "--tol", "0"], "usage"),
    (["verify", "--group", "Q"], "validation"),
    (["verify", "--char", "9"], "usage"),
    (["eval", "--matrix", "/nonexistent.json"], "format"),
    ([], "usage"),
])
def test_error_objects(capsys, argv, error):
    code, out, _ = call(capsys, *argv)
    assert code == 2
    assert out["error"] == error and isinstance(out["detail"], str)


def test_malformed_json_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2,\n  "cols": }')
    code, out, _ = call(capsys, "eval", "--matrix", str(bad))
    assert code == 2 and out["error"] == "format"
    assert "line 2" in out["detail"] and "column" in out["detail"]


def test_shape_error_object(capsys, tmp_path):
    A = write(tmp_path, "A.json", matrix_to_json(np.ones((2, 3))))
    code, out, _ = call(capsys, "eval", "--matrix", A)
    assert code == 2 and out["error"] == "shape"


def test_distinct_error_codes(capsys, tmp_path):
    codes = set()
    A = write(tmp_path, "A.json", matrix_to_json(np.ones((2, 3))))
    bad = write(tmp_path, "bad.json", {"rows": 1})
    for argv in (["eval", "--matrix", A], ["eval", "--matrix", bad], ["verify", "--bogus"],
                 ["verify", "--group", "Q"]):
        codes.add(call(capsys, *argv)[1]["error"])
    assert codes == {"shape", "format", "usage", "validation"}


def test_identical_bytes_and_out_file(capsys, tmp_path):
    argv = ["verify", "--suite", "detm", "--m", "2", "--n", "2", "--trials", "5", "--seed", "3"]
    _, _, first = call(capsys, *argv)
    out_path = tmp_path / "report.json"
    _, _, second = call(capsys, *argv, "--out", str(out_path))
    assert first == second
    assert out_path.read_text() == first


def test_size_cap_env_produces_capacity_error(tmp_path):
    A = write(tmp_path, "A.json", matrix_to_json(np.eye(4)))
    proc = subprocess.run([sys.executable, "-m", "gmf.cli", "induced", "--matrix", A, "--degree", "3",
                           "--char", "trivial"], capture_output=True, text=True,
                          env={"GMF_SIZE_CAP": "100", "PATH": ""})
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["error"] == "capacity"


def test_logs_go_to_stderr():
    proc = subprocess.run([sys.executable, "-m", "gmf.cli", "symclass", "describe", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    json.loads(proc.stdout)


def test_jsonio_roundtrips():
    M = random_psd(3, 2)
    np.testing.assert_array_equal(matrix_from_json(matrix_to_json(M)), M)
    B = BlockMatrix.from_flat(random_psd(4, 3), 2)
    np.testing.assert_array_equal(block_from_json(block_to_json(B)).blocks, B.blocks)
    G = symmetric_group(4)
    assert group_from_json(group_to_json(G)).elements == G.elements
    spec = spec_from_json({"generator_values": [[-1, 0]] * len(G.generators)}, G)
    assert spec.character.is_sign()


@pytest.mark.parametrize("obj", [
    {"rows": 2, "cols": 2, "entries": [[1, 0]] * 3},
    {"rows": 1, "cols": 1, "entries": [[1, 0, 0]]},
    {"rows": -1, "cols": 1, "entries": []},
    {"cols": 1, "entries": []},
    [1, 2],
])
def test_matrix_json_rejects_malformed(obj):
    with pytest.raises(FormatError):
        matrix_from_json(obj)
