import json

import numpy as np
import pytest

from immlift.cli import main
from immlift.matcore import matrix_to_json


@pytest.fixture
def matrix_file(tmp_path):
    def write(M, name="A.json"):
        path = tmp_path / name
        path.write_text(json.dumps(matrix_to_json(np.asarray(M, dtype=complex))))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_imm(capsys, matrix_file):
    code, out, _ = run(capsys, "imm", "--partition", "1,1", "--matrix", matrix_file([[1, 2], [3, 4]]))
    assert code == 0 and json.loads(out) == pytest.approx([-2, 0])
    code, out, _ = run(capsys, "imm", "--det", "--matrix", matrix_file(np.eye(3)))
    assert json.loads(out) == pytest.approx([1, 0])
    code, out, _ = run(capsys, "imm", "--per", "--matrix", matrix_file(np.ones((3, 3))))
    assert json.loads(out) == pytest.approx([6, 0])


def test_imm_errors(capsys, matrix_file, tmp_path):
    code, _, err = run(capsys, "imm", "--partition", "2,1", "--matrix", matrix_file(np.eye(2)))
    assert code == 2 and len(err.strip().splitlines()) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert run(capsys, "imm", "--det", "--matrix", str(bad))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["imm", "--matrix", "x.json"])
    assert exc.value.code == 2


def test_lift(capsys):
    code, out, _ = run(capsys, "lift", "--fn", "det", "--n", "2", "--emit", "text")
    assert code == 0 and out.strip() == "tr(X1)·1 − X1"
    code, out, _ = run(capsys, "lift", "--fn", "a4:chi1", "--n", "4")
    assert out.strip() == "3·1 − tr(X1X2)·X3 − tr(X1X3)·X2 − tr(X2X3)·X1"
    code, out, _ = run(capsys, "lift", "--fn", "per", "--n", "3", "--emit", "json")
    assert len(json.loads(out)["terms"]) == 6
    code, out, _ = run(capsys, "lift", "--fn", "2,1", "--emit", "latex")
    assert code == 0 and r"\operatorname{tr}" in out


def test_lift_errors(capsys):
    assert run(capsys, "lift", "--fn", "nonsense")[0] == 2
    assert run(capsys, "lift", "--fn", "det")[0] == 2
    assert run(capsys, "lift", "--fn", "a4:chi9")[0] == 2


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "lew-identity", "--trials", "200")
    assert code == 0
    data = json.loads(out)
    assert data["suite"] == "lew-identity" and data["reports"][0]["status"] == "pass"
    code, out, _ = run(capsys, "verify", "--suite", "appendix-scalar", "--n", "4", "--trials", "200", "--format", "text")
    assert code == 0 and "hadamard-n4" in out


def test_verify_byte_identical_across_threads(capsys, tmp_path):
    paths = []
    for threads in ("1", "4"):
        path = tmp_path / f"r{threads}.json"
        code, _, _ = run(capsys, "verify", "--suite", "a4-examples", "--trials", "300", "--m", "3", "--seed", "7",
                         "--threads", threads, "--out", str(path))
        assert code == 0
        paths.append(path)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "unknown"])
    assert exc.value.code == 2


def test_falsify(capsys):
    code, out, _ = run(capsys, "falsify", "--conjecture", "perm-dominance", "--n", "2", "--trials", "500")
    data = json.loads(out)
    assert code == 0 and data["status"] == "no counterexample" and data["worst_margin"] >= 0
    code, _, err = run(capsys, "falsify", "--conjecture", "nope", "--n", "3")
    assert code == 2 and err.count("\n") == 1
