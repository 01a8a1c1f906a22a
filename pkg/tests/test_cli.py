import io
import json
import subprocess
import sys

import numpy as np
import pytest

from iepl.cli import main, to_json

SUBCOMMANDS = ["check", "realize", "lists", "mv", "sample", "distinct"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_check_boundary_true():
    code, text = run("check", "star", "0", "1", "3")
    assert code == 0 and json.loads(text)["realizable"] is True


def test_check_false_exit_2():
    code, text = run("check", "star", "0", "1", "2.9")
    assert code == 2 and json.loads(text)["realizable"] is False


def test_mv_c4():
    code, text = run("mv", "C4")
    d = json.loads(text)
    assert code == 0
    assert d["variance"] == pytest.approx(8 / 9, abs=1e-12)
    assert set(d) >= {"weights", "support", "objective", "variance", "solver", "eligible", "iterations"}


@pytest.mark.parametrize("solver", ["exact", "descent"])
def test_mv_solvers(solver):
    code, text = run("mv", "doublestar", "3", "3", "--solver", solver, "--tol", "1e-12")
    d = json.loads(text)
    assert code == 0 and d["solver"] == solver
    assert d["support"] == [0, 1, 2, 4, 5, 6]
    assert d["variance"] == pytest.approx(3.0, abs=1e-8)
    code, text = run("mv", "paw", "--solver", "descent", "--exact-step")
    assert code == 0


def test_mv_limit_is_runtime_error():
    code, _ = run("mv", "K7", "--solver", "exact")
    assert code == 1
    code, _ = run("mv", "K7", "--solver", "exact", "--max-edges", "21")
    assert code == 0


def test_realize_outputs_witness():
    code, text = run("realize", "paw", "0", "2", "8", "8")
    d = json.loads(text)
    assert code == 0
    assert np.allclose(d["spectrum"], [0, 2, 8, 8], atol=1e-9)
    assert np.allclose(d["matrix"], [[5, -3, 0, -2], [-3, 5, 0, -2], [0, 0, 2, -2], [-2, -2, -2, 6]])
    code, text = run("realize", "C4", "0", "1", "2", "2")
    assert code == 2 and json.loads(text)["realizable"] is False


def test_lists():
    code, text = run("lists", "C4")
    assert code == 0 and json.loads(text) == [[1, 1, 1, 1], [1, 2, 1]]
    code, text = run("lists", "K1,4")
    assert [1, 3, 1] in json.loads(text)
    code, _ = run("lists", "C6")
    assert code == 3


def test_distinct():
    code, text = run("distinct", "K4")
    ev = json.loads(text)["spectrum"]
    assert code == 0 and np.min(np.diff(ev)) > 1e-8


def test_graph_file(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("4 4\n1 2\n2 3\n3 4\n1 4\n")
    code, text = run("mv", str(f))
    assert code == 0 and json.loads(text)["variance"] == pytest.approx(8 / 9)


def test_sample(tmp_path):
    out = tmp_path / "s.csv"
    code, _ = run("sample", "C4", "--count", "50", "--seed", "3", "--out", str(out), "--anchor")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "lambda2,lambda3,lambda4" and len(lines) == 51
    assert [float(x) for x in lines[1].split(",")] == pytest.approx([2, 2, 4])
    assert (tmp_path / "s.meta.json").exists()
    code, text = run("sample", "K2", "--count", "3")
    assert text == "lambda2\n2\n2\n2\n"


@pytest.mark.parametrize("argv", [
    ["check", "star", "0", "3", "1"],       # not ascending
    ["check", "star", "1", "2", "3"],       # no leading zero
    ["check", "star", "0", "x"],
    ["mv", "notagraph"],
    ["frobnicate"],
    ["mv", "C4", "--solver", "simplex"],
])
def test_usage_errors_exit_64(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        code = main(argv, out=io.StringIO())
        raise SystemExit(code)
    assert exc.value.code == 64


def test_unsupported_exit_3():
    assert run("check", "C4", "0", "1", "2", "3")[0] == 3
    assert run("check", "C5", "0", "1", "2", "3", "4")[0] == 3


@pytest.mark.parametrize("sub", SUBCOMMANDS)
def test_help(sub, capsys):
    with pytest.raises(SystemExit) as exc:
        main([sub, "--help"])
    assert exc.value.code == 0
    assert "usage" in capsys.readouterr().out


def test_seventeen_digits():
    assert to_json(1 / 3) == "0.33333333333333331"
    assert float(to_json(0.1)) == 0.1
    assert to_json({"a": [1, 2.5, True, None]}) == '{\n  "a": [1, 2.5, true, null]\n}'


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "iepl", "check", "star", "0", "1", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["realizable"] is True
    proc = subprocess.run([sys.executable, "-m", "iepl", "check", "star", "0", "1", "2.9"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
