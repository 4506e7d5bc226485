import numpy as np
import pytest

import rectipoly as rp
from rectipoly.errors import NonManifoldEdge, ParseError


def _records(text):
    return [line for line in text.splitlines() if line and not line.startswith("#")]


def test_read_cube(cube_obj):
    mesh = rp.from_obj(cube_obj)

    assert mesh.topology().as_dict() == {"V": 8, "E": 12, "F": 6, "chi": 2, "genus": 0, "components": 1}
    assert mesh.faces[0] == (0, 3, 2, 1)


def test_export_records(cube_obj):
    text = rp.from_obj(cube_obj).to_obj()

    assert text.startswith("# rectipoly OBJ export\n")
    assert _records(text) == _records(cube_obj)


def test_round_trip_octopus(octopus):
    mesh = rp.from_obj(octopus.to_obj())

    assert mesh.topology() == octopus.topology()
    assert np.array_equal(mesh.points, octopus.points)
    assert mesh.faces == octopus.faces


def test_write_and_read(octopus, tmp_path):
    path = tmp_path / "octopus.obj"
    assert octopus.to_obj(path) is None

    mesh = rp.read_obj(path)
    assert mesh.n_faces == 42


def test_ignored_records(cube_obj):
    text = "mtllib cube.mtl\no cube\n" + cube_obj.replace("f 1 4 3 2", "usemtl grey\ns off\ng side\nf 1/1/1 4/2/1 3//1 2/4")
    text += "vt 0.5 0.5\nvn 0 0 1\n\n# trailing comment\n"

    mesh = rp.from_obj(text)

    assert mesh.faces[0] == (0, 3, 2, 1)


def test_zero_index():
    text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n"

    with pytest.raises(ParseError) as e:
        rp.from_obj(text, closed=False)

    assert e.value.lineno == 4
    assert str(e.value).startswith("line 4:")


def test_index_past_end():
    text = "v 0 0 0\nv 1 0 0\n\nf 1 2 3\nv 0 1 0\n"

    # the face is read before the third vertex, but indices are checked at the end
    mesh = rp.from_obj(text, closed=False)
    assert mesh.n_vertices == 3

    with pytest.raises(ParseError) as e:
        rp.from_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n", closed=False)

    assert e.value.lineno == 4


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("v 0 0\n", 1),
        ("v 0 0 x\n", 1),
        ("v 0 0 0\nl 1 2\n", 2),
        ("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2\n", 4),
        ("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 c\n", 4),
    ],
)
def test_malformed_records(text, lineno):
    with pytest.raises(ParseError) as e:
        rp.from_obj(text, closed=False)

    assert e.value.lineno == lineno


def test_no_faces():
    with pytest.raises(ParseError):
        rp.from_obj("v 0 0 0\n")


def test_open_surface_rejected_when_closed(cube_obj):
    text = cube_obj.replace("f 1 4 3 2\n", "")

    with pytest.raises(NonManifoldEdge):
        rp.from_obj(text)

    assert rp.from_obj(text, closed=False).n_faces == 5


def test_parse_error_is_value_error():
    assert issubclass(ParseError, ValueError)
