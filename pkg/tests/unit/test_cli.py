import json

import pytest

import rectipoly as rp
from rectipoly.cli import main


@pytest.fixture
def cube_path(tmp_path, cube_obj):
    path = tmp_path / "cube.obj"
    path.write_text(cube_obj)
    return str(path)


def test_build_octopus(tmp_path, capsys):
    path = tmp_path / "octopus.obj"

    assert main(["build", "octopus", "--L", "2.5", "--out", str(path)]) == 0

    records = path.read_text().splitlines()
    assert sum(r.startswith("v ") for r in records) == 30
    assert sum(r.startswith("f ") for r in records) == 42
    assert "30 vertices, 84 edges, 42 faces" in capsys.readouterr().out


def test_build_to_stdout(capsys):
    assert main(["build", "cube", "--size", "2"]) == 0

    mesh = rp.from_obj(capsys.readouterr().out)
    assert mesh.ortho.rectangle_check().labels() == {"2x2": 6}


def test_build_star_gadget(tmp_path):
    path = tmp_path / "star.obj"

    assert main(["build", "star:rgrg", "--seed", "1", "--out", str(path)]) == 0
    assert rp.read_obj(str(path), closed=False).n_faces == 4


def test_build_unrealizable_star(capsys):
    assert main(["build", "star:rggg", "--seed", "0"]) == 3
    assert "UnrealizablePattern" in capsys.readouterr().err


def test_build_unknown_model(capsys):
    assert main(["build", "dodecahedron"]) == 2
    assert "unknown model" in capsys.readouterr().err


def test_missing_command():
    assert main([]) == 2


def test_analyze(cube_path, tmp_path, capsys):
    out = tmp_path / "cube.json"

    assert main(["analyze", cube_path, "--json", str(out)]) == 0

    report = json.loads(out.read_text())
    assert report["certificate"]["status"] == "Pass"
    assert report["audit"]["verdict"] == "Consistent"
    assert "Pass" in capsys.readouterr().out


def test_analyze_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.obj"
    path.write_text("v 0 0 zero\n")

    assert main(["analyze", str(path)]) == 2
    assert "ParseError" in capsys.readouterr().err


def test_analyze_missing_file(tmp_path):
    assert main(["analyze", str(tmp_path / "missing.obj")]) == 2


def test_analyze_open_surface(tmp_path, cube_obj, capsys):
    path = tmp_path / "open.obj"
    path.write_text(cube_obj.rsplit("f ", 1)[0])

    assert main(["analyze", str(path)]) == 4
    assert "NonManifoldEdge" in capsys.readouterr().err


def test_unfold(cube_path, tmp_path, capsys):
    svg = tmp_path / "cube.svg"

    assert main(["unfold", cube_path, "--strategy", "dfs", "--svg", str(svg)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "Simple"
    assert svg.read_text().count("<polygon") == 6


def test_unfold_bad_strategy(cube_path):
    assert main(["unfold", cube_path, "--strategy", "random"]) == 2


def test_unfold_bad_root(cube_path):
    assert main(["unfold", cube_path, "--root", "6"]) == 2


def test_lemma_sweep(capsys):
    assert main(["lemma-sweep", "--samples", "1", "--seed", "0"]) == 0
    assert "red=" in capsys.readouterr().out


def test_lemma_sweep_bad_degrees():
    assert main(["lemma-sweep", "--degrees", "2..5"]) == 2


@pytest.mark.parametrize("strategy", ["bfs", "dfs", "steepest"])
def test_unfold_octopus(tmp_path, capsys, strategy):
    path = tmp_path / "octopus.obj"
    assert main(["build", "octopus", "--out", str(path)]) == 0
    capsys.readouterr()

    assert main(["unfold", str(path), "--strategy", strategy]) == 0

    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "Overlapping"
    assert "43 cuts, cycle rank 14" in lines


def test_unfold_frame_torus(tmp_path, capsys):
    path = tmp_path / "frame.obj"
    assert main(["build", "frame-torus", "--out", str(path)]) == 0
    capsys.readouterr()

    assert main(["unfold", str(path)]) == 0
    assert "25 cuts, cycle rank 2" in capsys.readouterr().out.splitlines()


def test_lemma_sweep_uniform_turns(capsys):
    assert main(["lemma-sweep", "--samples", "4", "--degrees", "5", "--seed", "0", "--green", "0"]) == 0
    assert "red=5" in capsys.readouterr().out
