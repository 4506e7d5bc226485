import numpy as np
import pytest

import rectipoly as rp
from rectipoly import constructions


@pytest.fixture(autouse=True, scope="session")
def numpy_seed():
    np.random.seed(42)


@pytest.fixture(autouse=True)
def add_np(doctest_namespace):
    doctest_namespace["np"] = np
    doctest_namespace["rp"] = rp


@pytest.fixture(scope="session")
def cube():
    return constructions.make_cube()


@pytest.fixture(scope="session")
def frame_torus():
    return constructions.make_frame_torus()


@pytest.fixture(scope="session")
def octopus():
    return constructions.make_octopus(3.0)


@pytest.fixture(scope="session")
def octopus_cubes():
    return constructions.make_octopus_cubes(3.0)


@pytest.fixture
def tetrahedron():
    vertices = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    faces = [(0, 2, 1), (0, 1, 3), (1, 2, 3), (0, 3, 2)]
    return vertices, faces


@pytest.fixture
def cube_lists(cube):
    return np.array(cube.points), [list(loop) for loop in cube.faces]


@pytest.fixture
def cube_obj():
    return """# unit cube
v 0 0 0
v 1 0 0
v 1 1 0
v 0 1 0
v 0 0 1
v 1 0 1
v 1 1 1
v 0 1 1
f 1 4 3 2
f 5 6 7 8
f 1 2 6 5
f 4 8 7 3
f 1 5 8 4
f 2 3 7 6
"""
