import json
import subprocess
import sys

import pytest

from polyadjoint.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_drop_cube(capsys):
    code, out, _ = run(capsys, "drop", "cube", "--d", "3")
    assert code == 0 and json.loads(out) == {"drop": 2}


def test_verify_simplex_identity(capsys):
    code, out, _ = run(capsys, "verify", "simplex-identity", "--seed", "7", "--count", "50", "--d", "3")
    lines = out.strip().splitlines()
    reports = [json.loads(l) for l in lines if l.startswith("{")]
    assert code == 0 and len(reports) == 50 and all(r["pass"] for r in reports)
    assert lines[-1].split()[:4] == ["simplex-identity", "50", "50", "0"]


def test_classify_octahedron(capsys):
    code, out, _ = run(capsys, "classify", "--family", "octahedron")
    got = json.loads(out)
    assert code == 0 and got["drop"] == 0 and got["label"] == "P+(-P) not a zonotope"


def test_verify_writes_jsonl(tmp_path, capsys):
    out_file = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "verify", "triangle-facts", "--count", "3", "--out", str(out_file))
    assert code == 0
    assert len(out_file.read_text().strip().splitlines()) == 3
    assert "triangle-facts" in out


def test_verify_is_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "dual-volume", "--seed", "3", "--count", "2", "--d", "2")
    _, b, _ = run(capsys, "verify", "dual-volume", "--seed", "3", "--count", "2", "--d", "2")
    assert a == b and '"seed": 300009' in a


def test_verify_single_polytope(capsys):
    code, out, _ = run(capsys, "verify", "edge-identity", "cube")
    assert code == 0 and '"pass": true' in out


def test_input_file_and_gen_roundtrip(tmp_path, capsys):
    path = tmp_path / "rd.json"
    path.write_text('{"zonotope": [["1","0","0"],["0","1","0"],["0","0","1"],["1","1","1"]]}')
    code, out, _ = run(capsys, "drop", str(path))
    assert code == 0 and json.loads(out)["drop"] == 2
    code, out, _ = run(capsys, "gen", str(path), "--representation", "facets")
    saved = tmp_path / "rd_facets.json"
    saved.write_text(out)
    code, again, _ = run(capsys, "gen", str(saved), "--representation", "facets")
    assert "".join(out.split()) == "".join(again.split())


@pytest.mark.parametrize(
    "argv",
    [
        ["drop", "nosuchfamily"],
        ["drop", "missing.json"],
        ["omega-s", "cube"],
        ["verify", "nosuchlaw"],
        ["residue", "cube", "--facet", "99"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_malformed_file_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 2,\n "vertices": [["0", "0"],\n ["1.5", "0"], ["0", "1"]]}')
    code, _, err = run(capsys, "omega", str(path))
    assert code == 2 and f"{path}:3" in err


def test_verification_failure_exits_1(capsys, monkeypatch):
    from polyadjoint import theorems

    monkeypatch.setattr(theorems, "classify_polytope", lambda P: (_ for _ in ()).throw(theorems.ConsistencyError("forced")))
    code, out, _ = run(capsys, "verify", "classification", "--count", "1")
    assert code == 1 and '"pass": false' in out


@pytest.mark.parametrize(
    "argv, key",
    [
        (["adjoint", "cube", "--d", "2"], "adjoint"),
        (["omega", "simplex", "--d", "2"], "num"),
        (["omega0", "simplex", "--d", "2"], "omega0"),
        (["omega-s", "cube", "--d", "2", "--s", "1"], "omegaS"),
        (["residue", "cube", "--d", "3", "--facet", "0"], "residue"),
        (["decompose", "cube", "--d", "2", "--point", "1/3,1/5"], "cells"),
        (["gen", "--family", "24cell", "--d", "4"], "vertices"),
    ],
)
def test_verbs(capsys, argv, key):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and key in json.loads(out)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polyadjoint", "drop", "cube", "--d", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"drop": 1}
