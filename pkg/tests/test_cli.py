import json
import subprocess
import sys

import pytest

from conceptcat.cli import main
from conceptcat.io import context_to_json, emit_cxt, parse_cxt

from conftest import CHAIN, DIAG, FULL


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, ctx in (("diag", DIAG), ("chain", CHAIN), ("full", FULL)):
        path = tmp_path / f"{name}.cxt"
        path.write_text(emit_cxt(ctx, name))
        paths[name] = str(path)
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(context_to_json(CHAIN)))
    paths["chain_json"] = str(path)
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"alpha": {"g1": "g1", "g2": "g2"}, "beta": {"m1": "m1", "m2": "m2"}}))
    paths["id"] = str(path)
    paths["dir"] = tmp_path
    return paths


def test_lattice_text(files, capsys):
    assert main(["lattice", files["diag"], "--format", "text"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 4 and "({g1}, {m1})" in " ".join(out)


def test_lattice_dot_to_file(files):
    out = files["dir"] / "l.dot"
    assert main(["lattice", files["chain_json"], "--out", str(out)]) == 0
    assert "digraph" in out.read_text()


def test_classify(files, capsys):
    assert main(["classify", files["diag"], files["chain"], files["id"], "--json"]) == 0
    flags = json.loads(capsys.readouterr().out)["flags"]
    assert flags["conceptual"] is True and flags["concept_continuous"] is False


def test_lift(files, capsys):
    assert main(["lift", files["diag"], files["chain"], files["id"]]) == 0
    out = capsys.readouterr().out
    assert "alpha->" in out and "beta<-" in out


def test_transforms(files, capsys):
    assert main(["purify", files["full"]]) == 0
    assert parse_cxt(capsys.readouterr().out).n_objects == 1
    assert main(["reduce", files["chain"]]) == 0
    r = parse_cxt(capsys.readouterr().out)
    assert (r.n_objects, r.n_attributes, r.rows) == (1, 1, (0,))
    assert main(["standard", files["diag"], "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["objects"]) == 2


def test_dm(files, capsys):
    path = files["dir"] / "anti.json"
    path.write_text(json.dumps({"elements": ["a", "b"], "leq": []}))
    assert main(["dm", str(path), "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["concepts"]) == 4


def test_enumerate(files, capsys):
    assert main(["enumerate", files["diag"], files["diag"], "--class", "all"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 16
    assert main(["enumerate", files["diag"], files["diag"], "--class", "isomorphism"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2


def test_usage_errors(files, capsys):
    assert main(["enumerate", files["diag"], files["diag"], "--class", "nope"]) == 2
    bad = files["dir"] / "bad.cxt"
    bad.write_text("B\n\n1\n1\n\ng\nm\nQ\n")
    assert main(["lattice", str(bad)]) == 2
    assert "line 8" in capsys.readouterr().err
    assert main(["lattice", str(files["dir"] / "missing.cxt")]) == 2
    with pytest.raises(SystemExit):
        main(["lattice"])


def test_module_entry_point(files):
    r = subprocess.run([sys.executable, "-m", "conceptcat", "lattice", files["diag"], "--format", "text"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and len(r.stdout.splitlines()) == 4
