import json
import subprocess
import sys

import pytest

from sympgrade.cli import main
from sympgrade.isom import isometry_from_json, word_from_json
from sympgrade.sympcore import make_shape


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sp_order(capsys):
    code, out, _ = run(capsys, "sp-order", "--shape", "2,2")
    assert code == 0 and out.strip() == "720"
    code, out, _ = run(capsys, "sp-order", "--shape", "3", "--format", "json")
    assert json.loads(out) == {"shape": [3], "order": 24}


def test_chain_violation_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--scope", "sympcore", "--shape", "4,3")
    assert code == 2 and "ChainViolation" in err


def test_bad_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--scope", "nope"])
    assert exc.value.code == 2


def test_grading_table(capsys):
    code, out, _ = run(capsys, "grading-table", "--shape", "2", "--algebra", "sl", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 3
    assert all(set(r) == {"label", "perm", "phase", "trace_zero"} for r in rows)
    code, out, _ = run(capsys, "grading-table", "--shape", "2,2", "--algebra", "gl")
    assert code == 0 and "16 rows" in out


def test_factor(tmp_path, capsys):
    s = make_shape([2, 2])
    swap = {"shape": [2, 2], "matrix": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]}
    src, dst = tmp_path / "M.json", tmp_path / "w.json"
    src.write_text(json.dumps(swap))
    code, out, _ = run(capsys, "factor", "--in", str(src), "--out", str(dst), "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert len(report["verification"]) == 4
    word = word_from_json(json.loads(dst.read_text()))
    assert word.to_isometry() == isometry_from_json(swap)
    assert word(s.u(0)) == s.u(1)


def test_factor_rejects_non_isometry(tmp_path, capsys):
    src = tmp_path / "bad.json"
    src.write_text(json.dumps({"shape": [2], "matrix": [[1, 0], [0, 0]]}))
    code, _, err = run(capsys, "factor", "--in", str(src))
    assert code == 2 and "NotIsometry" in err


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--shape", "4", "--element", "1,0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["size"] == 12


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "--shape", "4", "--delta", "1,0")
    assert code == 0 and "match: True" in out and "diag(Z)" in out
    code, _, err = run(capsys, "realize", "--shape", "4", "--delta", "1,1")
    assert code == 2 and "NotPureQ" in err


@pytest.mark.parametrize("scope", ["sympcore", "grading", "realize"])
def test_verify_scopes(capsys, scope):
    code, out, _ = run(capsys, "verify", "--scope", scope, "--n-max", "6", "--max-order", "64", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["reports"][0]["suite"] == scope


def test_verify_spgen(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "spgen", "--max-order", "81", "--trials", "20",
                       "--n-max", "6", "--format", "json")
    data = json.loads(out)
    assert code == 0
    names = [c["name"] for c in data["reports"][0]["checks"]]
    assert "q-equals-sp [3,3]" in names and "q-equals-sp [2,2]" in names


def test_verify_deterministic(capsys):
    argv = ["verify", "--scope", "spgen", "--shape", "4,2", "--trials", "30", "--seed", "5", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    strip = lambda s: [{k: v for k, v in c.items() if k != "seconds"} for c in json.loads(s)["reports"][0]["checks"]]
    assert strip(a) == strip(b)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "sympgrade.cli", "sp-order", "--shape", "2"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "6"
