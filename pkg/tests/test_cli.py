import json
import subprocess
import sys

import pytest

from gl2struct.cli import run


@pytest.fixture
def form_file(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"linear": [[1, 0, 4]], "quadratic": [[0, 1, 2]]}))
    return str(path)


def test_classify(form_file, capsys):
    assert run(["classify", form_file]) == 0
    assert capsys.readouterr().out.strip() == "{4,[2,2]} dim=4 sym=5 planar=Goursat rank=4"
    assert run(["classify", "--float", "--eps", "1e-8", form_file]) == 0
    assert capsys.readouterr().out.startswith("{4,[2,2]}")


def test_classify_binomial_json(tmp_path, capsys):
    path = tmp_path / "v.json"
    path.write_text(json.dumps({"degree": 8, "coeffs": ["1", 0, "1/14", 0, "1/70", 0, 0, 0, 0]}))
    assert run(["classify", "--json", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"rootType": "{4,[2,2]}", "dim": 4, "sym": 5, "planar": "Goursat", "rank": 4}


def test_bad_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run(["classify", str(bad)]) == 2
    assert "malformed JSON" in capsys.readouterr().err
    assert run(["classify", str(tmp_path / "missing.json")]) == 2
    wrong = tmp_path / "w.json"
    wrong.write_text(json.dumps({"degree": 2, "coeffs": [1, 0, 1]}))
    assert run(["jmat", str(wrong)]) == 2
    with pytest.raises(SystemExit):
        run(["frobnicate"])


def test_jmat(form_file, capsys):
    assert run(["jmat", "--json", form_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["rank"] == 4 and out["det"] == "0" and out["discriminant"] == "0"
    assert len(out["J"]) == 9


def test_verify_absorption(capsys):
    assert run(["verify", "absorption"]) == 0
    out = capsys.readouterr().out
    assert "a2 = 3/10" in out and "d4 = -1/160" in out and out.strip().endswith("PASS")


def test_verify_closure(capsys):
    assert run(["verify", "closure"]) == 0
    out = capsys.readouterr().out
    assert out.count(": zero") == 18


def test_verify_tangency(capsys):
    assert run(["verify", "tangency", "--type", "{4,[2,2]}"]) == 0
    assert "rankJ=4" in capsys.readouterr().out
    assert run(["verify", "tangency"]) == 2


def test_verify_detdisc_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("GL2_SEED", "4")
    assert run(["verify", "detdisc", "--n", "3"]) == 0
    assert "seed 4" in capsys.readouterr().out
    assert run(["--seed", "9", "verify", "detdisc", "--n", "3"]) == 0
    assert "seed 9" in capsys.readouterr().out


def test_verify_x8(capsys):
    assert run(["verify", "x8"]) == 0
    assert "s = 1 (consistent)" in capsys.readouterr().out


def test_strata(tmp_path, capsys):
    dot = tmp_path / "p.dot"
    assert run(["strata", "--dot", str(dot)]) == 0
    assert "54 nontrivial types" in capsys.readouterr().out
    assert dot.read_text().startswith("digraph")


def test_pde(capsys):
    assert run(["pde", "reconstruct", "--type", "8", "--check", "20"]) == 0
    assert "U22 - U13 + 1/2*U33^2 = 0" in capsys.readouterr().out
    assert run(["pde", "check", "--name", "62", "--points", "3"]) == 0
    assert run(["pde", "check", "--name", "laplace", "--points", "2"]) == 1


def test_cone(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"symbol": [[0, 0, "-1/2"], [0, 1, 0], ["-1/2", 0, 0]]}))
    assert run(["cone", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["exact"] and out["rank"] == 5
    path.write_text(json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert run(["cone", str(path)]) == 2


def test_module_entry_point(form_file):
    res = subprocess.run([sys.executable, "-m", "gl2struct", "classify", form_file], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("{4,[2,2]}")
