import json
import os
import subprocess
import sys

from cliffmirror.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_square(capsys):
    code, out, _ = run(["analyze", "square", "--json", "-"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["pair"]["slice_K1_size"] == 9 and rep["pair"]["slice_Kdual1_size"] == 5
    assert len(rep["decompositions"]) == 3
    for res in rep["results"]:
        assert res["semiinvariance"]["ok"] and res["validation"]["ok"]
        assert res["centrality"] is True
        if res["decomposition"]["r"] == 1:
            assert res["flatness"]["verdict"] == "PASS"
            assert res["clifford_dimension"] == 2


def test_analyze_orthant(capsys):
    code, out, _ = run(["analyze", "orthant:3", "--json", "-"], capsys)
    assert code == 0
    assert len(json.loads(out)["decompositions"]) == 1


def test_human_summary(capsys):
    code, out, _ = run(["analyze", "square"], capsys)
    assert code == 0
    assert out.startswith("pair: rank 3, index 1")
    assert "flatness: PASS" in out


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rays": [[2, 1], [1, 2]]}')
    assert run(["analyze", str(bad)], capsys)[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{nope")
    assert run(["analyze", str(broken)], capsys)[0] == 1
    flat = tmp_path / "flat.json"
    flat.write_text('{"rays": [[1, 0, 0], [0, 1, 0]]}')
    assert run(["analyze", str(flat)], capsys)[0] == 1
    assert run(["analyze", "orthant:x"], capsys)[0] == 1
    assert run(["analyze", str(tmp_path / "missing.json")], capsys)[0] == 1
    assert run(["analyze", "square", "--r-min", "2", "--r-max", "1"], capsys)[0] == 1


def test_polytope_input(tmp_path, capsys):
    f = tmp_path / "square.json"
    f.write_text(json.dumps({"vertices": [[1, 1], [1, -1], [-1, -1], [-1, 1]]}))
    code, out, _ = run(["decompose", str(f), "--json", "-"], capsys)
    assert code == 0 and len(json.loads(out)["decompositions"]) == 3


def test_reproduce_exe(capsys):
    code, out, _ = run(["reproduce-exe"], capsys)
    assert code == 0 and "ramification identity: PASS (mu = 1, e = 0)" in out
    code, out, _ = run(["reproduce-exe", "--mutate", "5"], capsys)
    assert code == 3 and "D1 = " in out and "D2 = " in out


def test_subcommands(capsys):
    code, out, _ = run(["triangulate", "square", "--json", "-"], capsys)
    assert code == 0 and len(json.loads(out)["triangulations"]) == 3
    code, out, _ = run(["potential", "square", "--decomposition", "0"], capsys)
    assert code == 0 and out.count("f1 = ") == 1
    code, out, _ = run(["quadric", "square", "--json", "-"], capsys)
    assert code == 0 and len(json.loads(out)["quadrics"]) == 2
    code, out, _ = run(["clifford", "square", "--decomposition", "0", "--json", "-"], capsys)
    algebras = json.loads(out)["algebras"]
    assert code == 0 and algebras[0]["dim"] == 2
    code, out, _ = run(["quadric", "orthant:2", "--json", "-"], capsys)
    assert code == 0 and json.loads(out)["quadrics"] == []
    assert run(["quadric", "square", "--r-max", "0"], capsys)[0] == 1
    assert run(["potential", "square", "--decomposition", "7"], capsys)[0] == 1


def test_export(tmp_path, capsys):
    out_file = tmp_path / "pot.txt"
    code, _, _ = run(["export", "potential", "square", "--format", "text", "-o", str(out_file)], capsys)
    assert code == 0
    text = out_file.read_text().strip()
    assert len(text.split(" + ")) == 9
    tri = tmp_path / "tri.json"
    assert run(["export", "triangulation", "square", "-o", str(tri)], capsys)[0] == 0
    assert json.loads(tri.read_text())["data"]["weights"] is not None
    cl = tmp_path / "cl.json"
    assert run(["export", "clifford", "square", "--decomposition", "0", "-o", str(cl)], capsys)[0] == 0
    assert json.loads(cl.read_text())["data"]["algebras"][0]["dim"] == 2
    assert run(["export", "nonsense", "square"], capsys)[0] == 1


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CMIRROR_SEED", "42")
    code, out, _ = run(["potential", "square", "--json", "-"], capsys)
    assert json.loads(out)["seed"] == 42
    monkeypatch.setenv("CMIRROR_SEED", "nope")
    assert run(["potential", "square"], capsys)[0] == 1
    monkeypatch.delenv("CMIRROR_SEED")
    assert run(["potential", "square", "--seed", "-1"], capsys)[0] == 1


def test_seed_changes_coefficients(capsys):
    _, a, _ = run(["potential", "square", "--seed", "1", "--json", "-"], capsys)
    _, b, _ = run(["potential", "square", "--seed", "2", "--json", "-"], capsys)
    assert a != b


def test_module_entry_point():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "cliffmirror", "decompose", "square"], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 0 and proc.stdout.startswith("3 decompositions")
