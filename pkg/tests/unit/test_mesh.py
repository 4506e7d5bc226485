import numpy as np
import pytest

import rectipoly as rp
from rectipoly.errors import (
    BadVertexLink,
    DegenerateFace,
    InconsistentOrientation,
    MeshValidationError,
    NonManifoldEdge,
    NonPlanarFace,
    OpenMesh,
)
from rectipoly.methods.topology import TopologyReport


def test_cube_counts(cube):
    assert (cube.n_vertices, cube.n_edges, cube.n_faces) == (8, 12, 6)
    assert len(cube) == 6


def test_degree_sums(cube, octopus, frame_torus):
    for mesh in [cube, octopus, frame_torus]:
        assert mesh.face_degrees.sum() == 2 * mesh.n_edges
        assert mesh.vertex_degrees.sum() == 2 * mesh.n_edges


def test_build_mesh_tetrahedron(tetrahedron):
    vertices, faces = tetrahedron
    mesh = rp.build_mesh(vertices, faces)

    assert mesh.topology() == TopologyReport(4, 6, 4, 2, 0, 1)
    np.testing.assert_allclose(mesh.areas, [0.5, 0.5, np.sqrt(3) / 2, 0.5])


def test_cube_missing_face_closed(cube_lists):
    points, faces = cube_lists

    with pytest.raises(NonManifoldEdge):
        rp.Mesh(points, faces[1:])


def test_cube_missing_face_open(cube_lists):
    points, faces = cube_lists
    mesh = rp.Mesh(points, faces[1:], closed=False)

    assert not mesh.closed
    assert (mesh.edges.Face2 == -1).sum() == 4

    with pytest.raises(OpenMesh):
        mesh.topology()


def test_edge_on_three_faces(cube_lists):
    points, faces = cube_lists

    with pytest.raises(NonManifoldEdge):
        rp.Mesh(points, faces + [faces[0]])


def test_flipped_face(cube_lists):
    points, faces = cube_lists
    faces[2] = faces[2][::-1]

    with pytest.raises(InconsistentOrientation):
        rp.Mesh(points, faces)


def test_inside_out(cube_lists):
    points, faces = cube_lists

    with pytest.raises(InconsistentOrientation):
        rp.Mesh(points, [f[::-1] for f in faces])


def test_non_planar_face():
    vertices = [(0, 0, 0), (1, 0, 0), (1, 1, 0.1), (0, 1, 0)]

    with pytest.raises(NonPlanarFace):
        rp.Mesh(vertices, [(0, 1, 2, 3)], closed=False)


@pytest.mark.parametrize(
    "vertices,face",
    [
        ([(0, 0, 0), (1, 0, 0), (1, 1, 0)], (0, 1, 1)),
        ([(0, 0, 0), (1, 0, 0), (2, 0, 0)], (0, 1, 2)),
        ([(0, 0, 0), (1, 1, 0), (1, 0, 0), (0, 1, 0)], (0, 1, 2, 3)),
        ([(0, 0, 0), (1, 0, 0), (1, 1, 0)], (0, 1)),
    ],
)
def test_degenerate_faces(vertices, face):
    with pytest.raises(DegenerateFace):
        rp.Mesh(vertices, [face], closed=False)


def test_index_out_of_range():
    with pytest.raises(MeshValidationError):
        rp.Mesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 3)], closed=False)


def test_cubes_sharing_a_vertex(cube_lists):
    points, faces = cube_lists

    # second cube [1, 2]^3 reuses vertex 6 = (1, 1, 1) as its corner 0
    extra = points[1:] + 1
    mapping = [6] + list(range(8, 15))
    all_points = np.vstack([points, extra])
    all_faces = faces + [[mapping[v] for v in loop] for loop in faces]

    with pytest.raises(BadVertexLink):
        rp.Mesh(all_points, all_faces)


def test_non_finite_coordinates(cube_lists):
    points, faces = cube_lists
    points = points.copy()
    points[0, 0] = np.nan

    with pytest.raises(MeshValidationError):
        rp.Mesh(points, faces)


def test_edge_table(cube):
    edges = cube.edges

    assert list(edges.columns) == ["V1", "V2", "Face1", "Face2"]
    assert (edges.V1 < edges.V2).all()
    pairs = list(zip(edges.V1, edges.V2))
    assert pairs == sorted(pairs)

    for row in edges.itertuples():
        assert cube.face_with_halfedge(row.V1, row.V2) == row.Face1
        assert cube.face_with_halfedge(row.V2, row.V1) == row.Face2
        assert cube.edge_id(row.V2, row.V1) == row.Index


def test_edge_id_missing(cube):
    with pytest.raises(MeshValidationError):
        cube.edge_id(0, 6)


def test_points_read_only(cube):
    with pytest.raises(ValueError):
        cube.points[0, 0] = 5.0


def test_vertex_star_cycle(octopus):
    for v in range(octopus.n_vertices):
        star = octopus.vertex_star(v)

        for k, (edge, face) in enumerate(star):
            previous_face = star[k - 1][1]
            edge_faces = set(octopus.edge_faces(edge))
            assert {face, previous_face} == edge_faces


def test_vertex_star_degrees(cube, octopus):
    assert len(cube.vertex_star(0)) == 3

    degrees = {v: len(octopus.vertex_star(v)) for v in range(octopus.n_vertices)}
    assert sorted(set(degrees.values())) == [5, 8]
    assert list(degrees.values()).count(8) == 6

    apexes = [v for v, d in degrees.items() if d == 8]
    assert all(np.count_nonzero(octopus.points[v]) == 1 for v in apexes)


def test_vertex_star_out_of_range(cube):
    with pytest.raises(IndexError):
        cube.vertex_star(8)


def test_star_neighbors(cube):
    assert cube.star_neighbors(0) == [1, 3, 4]


def test_topology(cube, octopus, frame_torus, octopus_cubes):
    assert cube.topology().as_dict() == {"V": 8, "E": 12, "F": 6, "chi": 2, "genus": 0, "components": 1}
    assert (octopus.topology().chi, octopus.topology().genus) == (-12, 7)
    assert (frame_torus.topology().chi, frame_torus.topology().genus) == (0, 1)
    assert (octopus_cubes.topology().V, octopus_cubes.topology().genus) == (54, 7)


def test_topology_two_components(cube_lists):
    points, faces = cube_lists
    all_points = np.vstack([points, points + [3, 0, 0]])
    all_faces = faces + [[v + 8 for v in loop] for loop in faces]

    topology = rp.Mesh(all_points, all_faces).topology()

    assert (topology.chi, topology.components, topology.genus) == (4, 2, 0)


def test_topology_face_order(octopus):
    faces = list(octopus.faces)[::-1]

    assert rp.Mesh(octopus.points, faces).topology() == octopus.topology()


def test_transform(octopus):
    moved = octopus.transform(np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]]), offset=[5, 0, -2])

    np.testing.assert_allclose(moved.areas, octopus.areas)
    assert moved.topology() == octopus.topology()


def test_vertices_frame(cube):
    df = cube.vertices

    assert list(df.columns) == ["X", "Y", "Z"]
    assert df.shape == (8, 3)


def test_face_table(cube):
    df = cube.face_table()

    assert df.Degree.tolist() == [4] * 6
    np.testing.assert_allclose(df.Area, 1.0)


def test_str(cube, octopus):
    assert str(cube).endswith("Closed Mesh with 8 vertices, 12 edges and 6 faces.")
    assert "..." in str(octopus)


def test_summary(octopus, capsys):
    df = octopus.summary(return_df=True)

    assert df.loc["genus", "mesh"] == 7
    assert df.loc["red edges", "mesh"] == 84
    assert df.loc["rectangle faces", "mesh"] == 42
    assert "genus" in capsys.readouterr().out
