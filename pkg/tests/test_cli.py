import json
import subprocess
import sys

import pytest

from freespec.cli import EXIT_CAP, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out.strip(), err


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def test_gram_and_weingarten(capsys):
    code, out, _ = run(capsys, "gram", "--k", 2, "--n", 3)
    assert code == EXIT_OK
    assert json.loads(out) == {"k": 2, "n": 3, "matrix": [["9", "3"], ["3", "9"]]}
    code, out, _ = run(capsys, "weingarten", "--k", 2, "--n", 2)
    assert json.loads(out)["matrix"] == [["1/3", "-1/6"], ["-1/6", "1/3"]]


def test_scalar_outputs(capsys):
    assert run(capsys, "integrate", "--n", 2, "--monomial", "1,1;1,1;2,2;2,2")[1] == "1/3"
    assert run(capsys, "truncated", "--k", 2, "--n", 2, "--s", 1)[1] == "1/3"
    assert run(capsys, "law", "--name", "circular", "--word", "c c* c c*")[1] == "2"
    assert run(capsys, "integrate", "--n", 2, "--monomial", "1,1") == (EXIT_OK, "0", "")


def test_law_moments(capsys):
    code, out, _ = run(capsys, "law", "--name", "free_poisson", "--rate", "1", "--K", 6)
    assert json.loads(out) == {"moments": ["1", "2", "5", "14", "42", "132"]}
    code, out, _ = run(capsys, "law", "--name", "semicircle", "--K", 4, "--pretty")
    assert out == "0 1 0 2"


def test_semicircle_report(capsys):
    code, out, _ = run(capsys, "semicircle-report", "--k", 2, "--s", 1, "--n", "8,16")
    rows = json.loads(out)
    assert [r["n"] for r in rows] == [8, 16] and code == EXIT_OK


def test_freeconv(capsys, tmp_path):
    fp = write(tmp_path, "fp.json", {"moments": ["1", "2", "5"]})
    code, out, _ = run(capsys, "freeconv", "mult", "--mu", fp, "--nu", fp)
    assert json.loads(out) == {"moments": ["1", "3", "12"]}
    code, out, _ = run(capsys, "freeconv", "add", "--mu", fp, "--nu", fp)
    assert json.loads(out) == {"moments": ["2", "6", "22"]}


def test_graph_commands(capsys, tmp_path):
    c4 = write(tmp_path, "c4.json", {"n": 4, "root": 0, "edges": [[0, 1, "a"], [1, 2, "a"], [2, 3, "a"], [3, 0, "a"]]})
    k2 = write(tmp_path, "k2.json", {"n": 2, "edges": [[0, 1, "b"]]})
    assert json.loads(run(capsys, "graph", "loops", "--in", c4, "--K", 4)[1]) == {"moments": ["0", "2", "0", "8"]}
    measure = json.loads(run(capsys, "graph", "measure", "--in", c4)[1])
    assert sum(a["weight"] for a in measure["atoms"]) == pytest.approx(1)
    product = json.loads(run(capsys, "graph", "product", "--in", c4, "--in2", k2)[1])
    assert product["n"] == 8 and len(product["edges"]) == 2 * 4 + 16
    assert run(capsys, "graph", "product", "--in", c4)[0] == EXIT_INPUT
    assert run(capsys, "graph", "product", "--in", c4, "--in2", c4)[0] == EXIT_INPUT
    out = json.loads(run(capsys, "graph", "automorphism-moments", "--in", k2, "--K", 3)[1])
    assert out == {"moments": ["1", "2", "4"]}


def test_conjecture_exit_codes(capsys, tmp_path):
    k2 = write(tmp_path, "k2.json", {"moments": ["1", "2", "4"]})
    k4 = write(tmp_path, "k4.json", {"moments": ["1", "2", "5"]})
    pt = write(tmp_path, "pt.json", {"moments": ["1", "1", "1"]})
    code, out, _ = run(capsys, "conjecture", "--mu-x", k2, "--mu-y", k2, "--mu-product", k4)
    assert code == EXIT_MISMATCH and json.loads(out)["first_mismatch"] == 2
    code, _, _ = run(capsys, "conjecture", "--mu-x", k4, "--mu-y", pt, "--mu-product", k4)
    assert code == EXIT_OK


def test_ade_commands(capsys):
    code, out, _ = run(capsys, "ade", "verify", "--family", "D", "--n", 3, "--K", 4)
    assert code == EXIT_OK and json.loads(out)["pass"]
    code, out, _ = run(capsys, "ade", "verify", "--family", "A", "--n", 4, "--K", 6)
    assert code == EXIT_OK and len(json.loads(out)["cases"]) == 6
    code, out, _ = run(capsys, "ade", "measure", "--family", "Daff", "--n", 2)
    assert json.loads(out)["total_mass"] == "1"
    code, out, _ = run(capsys, "ade", "poincare", "--family", "Ainf", "--K", 4, "--pretty")
    assert out == "1 1 2 5 14"
    assert run(capsys, "ade", "verify", "--family", "D", "--n", 1)[0] == EXIT_INPUT
    assert run(capsys, "ade", "verify", "--family", "Ainf", "--K", 4, "--radius", 3)[0] == EXIT_INPUT


def test_model_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "model", "su2", "--powers", "2,0,0,0", "--samples", 20000, "--seed", 3)
    data = json.loads(out)
    assert data["weingarten"] == "1/3" and abs(data["mean"] - 1 / 3) < 5 * data["stderr"]
    assert json.loads(run(capsys, "model", "sn", "--n", 3, "--K", 5)[1]) == {"moments": ["1", "2", "5", "14", "41"]}
    csv = tmp_path / "hist.csv"
    code, out, _ = run(capsys, "model", "pauli", "--samples", 10000, "--K", 2, "--csv", csv)
    assert code == EXIT_OK and csv.read_text().startswith("value,count")


def test_error_exit_codes(capsys, tmp_path):
    assert run(capsys, "weingarten", "--k", 2, "--n", 1)[0] == EXIT_INPUT
    assert run(capsys, "gram", "--k", 9, "--n", 2)[0] == EXIT_CAP
    assert run(capsys, "model", "sn", "--n", 7)[0] == EXIT_CAP
    assert run(capsys, "integrate", "--n", 2, "--monomial", "1,5")[0] == EXIT_INPUT
    assert run(capsys, "law", "--name", "semicircle", "--variance", "x")[0] == EXIT_INPUT
    assert run(capsys, "law", "--name", "semicircle", "--variance", "-1")[0] == EXIT_INPUT
    assert run(capsys, "law", "--name", "circular")[0] == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "freeconv", "add", "--mu", bad, "--nu", bad)
    assert code == EXIT_INPUT and "error" in err
    assert run(capsys, "freeconv", "add", "--mu", tmp_path / "missing.json", "--nu", bad)[0] == EXIT_INPUT


def test_argparse_errors_use_input_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ade", "verify", "--family", "E8"])
    assert exc.value.code == EXIT_INPUT


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "laws")
    assert code == EXIT_OK and json.loads(out)["pass"]
    code, out, _ = run(capsys, "verify", "sn-model", "--pretty")
    assert out.startswith("[PASS]")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "freespec", "truncated", "--k", "1", "--n", "3", "--s", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "2/3"
