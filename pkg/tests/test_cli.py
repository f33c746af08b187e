import json
import subprocess
import sys

import pytest

from wbinom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "--n", "3", "--weights", "generic", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["x^3", "(1 + w(2,1) + w(1,1)*w(2,1)) x^2 y",
                                "(1 + w(1,1) + w(1,1)*w(1,2)) x y^2", "y^3"]


def test_expand_json(capsys):
    code, out, _ = run(capsys, "expand", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert [(t["k"], t["l"]) for t in data] == [(2, 0), (1, 1), (0, 2)]


def test_coeff_json(capsys):
    code, out, _ = run(capsys, "coeff", "--weights", "stirling2", "--n", "4", "--k", "2")
    assert code == 0
    assert json.loads(out) == {"n": 4, "k": 2, "value": [{"monomial": [], "num": "7", "den": "1"}]}


def test_coeff_closed_form_agrees(capsys):
    flags = ["--weights", "elliptic", "--a", "0.21,0", "--b", "0.047,0", "--q", "0.7,0", "--p", "0.1,0"]
    _, rec, _ = run(capsys, "coeff", "--n", "5", "--k", "2", *flags)
    _, closed, _ = run(capsys, "coeff", "--n", "5", "--k", "2", "--closed-form", *flags)
    r, c = json.loads(rec)["value"], json.loads(closed)["value"]
    assert abs(complex(*r) - complex(*c)) < 1e-10 * abs(complex(*c))


def test_coeff_text(capsys):
    code, out, _ = run(capsys, "coeff", "--weights", "q", "--n", "2", "--k", "1", "--format", "text")
    assert out.strip() == "1 + q"


def test_paths_list(capsys):
    code, out, _ = run(capsys, "paths", "--to", "1,1", "--list")
    assert code == 0
    assert out.splitlines() == ["HV\t1", "VH\tw(1,1)", "GF\t1 + w(1,1)"]


def test_paths_json(capsys):
    code, out, _ = run(capsys, "paths", "--to", "2,1", "--list", "--weights", "generic-double", "--format", "json")
    data = json.loads(out)
    assert [p["steps"] for p in data["paths"]] == ["HHV", "HVH", "VHH"]


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--word", "x x y w(1,2) x")
    assert out.strip() == "w(3,1)*w(3,3) x^3 y"


def test_verify_v109_n0(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "v109", "--n", "0", "--trials", "1")
    assert code == 0
    data = json.loads(out)
    assert data["max_residual"] == 0 and data["pass"] is True


def test_verify_schur(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "schur-h", "--n", "4", "--m", "4", "--k", "2")
    assert code == 0
    assert json.loads(out)["max_residual"] == "exact-zero"


def test_verify_v109_example(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "v109", "--n", "5", "--trials", "50",
                       "--tol", "1e-8", "--seed", "42")
    data = json.loads(out)
    assert code == 0 and data["trials"] == 50 and data["max_residual"] < 1e-8


def test_verify_exceeding_tolerance_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "theta-inversion", "--tol", "1e-30", "--trials", "5")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    names = [line.split("\t")[0] for line in out.splitlines()]
    assert "v109" in names and "schur-h" in names


@pytest.mark.parametrize("argv,flag", [
    (["verify", "--identity", "nope"], "--identity"),
    (["coeff", "--weights", "elliptic", "--a", "0.2,0", "--n", "2", "--k", "1"], "--b"),
    (["coeff", "--weights", "generic", "--q", "0.2,0", "--n", "2", "--k", "1"], "--q"),
    (["coeff", "--n", "2", "--k", "3"], "--k"),
    (["coeff", "--weights", "bogus", "--n", "2", "--k", "1"], "--weights"),
    (["normalize", "--word", "x z"], "--word"),
    (["verify", "--identity", "v109", "--trials", "0"], "--trials"),
    (["report", "--jobs", "0"], "--jobs"),
])
def test_invalid_input_exits_2(capsys, argv, flag):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert flag in err
    assert out == ""


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["coeff", "--n", "x", "--k", "1"])
    assert exc.value.code == 2
    assert "--n" in capsys.readouterr().err


def test_bad_complex_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["coeff", "--weights", "q", "--q", "1,2,3", "--n", "1", "--k", "0"])
    assert exc.value.code == 2
    assert "--q" in capsys.readouterr().err


def test_weights_json_file(capsys, tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"family": "q", "params": {"q": [0.5, 0]}, "shift": [0, 0]}))
    code, out, _ = run(capsys, "coeff", "--weights-json", str(path), "--n", "2", "--k", "1")
    assert json.loads(out)["value"] == [1.5, 0.0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wbinom", "verify", "--identity", "theta-p0", "--trials", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["identity"] == "theta-p0"
