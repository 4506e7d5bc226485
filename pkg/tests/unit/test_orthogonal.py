import numpy as np
import pytest

import rectipoly as rp
from rectipoly import orthogonal
from rectipoly.errors import OpenMesh

octopus_buckets = [
    (np.pi / 4, 24),
    (np.arctan(np.sqrt(2)), 24),
    (np.pi / 3, 24),
    (np.pi - 2 * np.arctan(np.sqrt(2)), 12),
]


def test_cube_dihedrals(cube):
    np.testing.assert_allclose(orthogonal.dihedral_angles(cube), np.pi / 2, atol=1e-12)
    assert orthogonal.dihedral_angle(cube, (1, 0)) == pytest.approx(np.pi / 2)
    assert cube.ortho.dihedral_angle(0) == pytest.approx(np.pi / 2)


def test_boundary_edge_has_no_dihedral(cube):
    mesh = rp.Mesh(cube.points, cube.faces[1:], closed=False)

    with pytest.raises(ValueError):
        orthogonal.dihedral_angle(mesh, (0, 1))

    with pytest.raises(OpenMesh):
        orthogonal.classify_edges(mesh)


def test_cube_green(cube):
    cls = orthogonal.classify_edges(cube)

    assert len(cls) == 12
    assert cls.n_red == 0
    assert (cls.green.NearestK == 1).all()
    assert str(orthogonal.orthogonality_certificate(cube)) == "Pass"


def test_octopus_all_red(octopus):
    cls = octopus.ortho.classify_edges()

    assert cls.n_red == 84
    assert cls.red_edges == list(range(84))
    assert "84 red and 0 green edges" in str(cls)

    certificate = octopus.ortho.certificate()
    assert not certificate.passed
    assert certificate.status == "Fail"
    assert len(certificate.red_edges) == 84


def test_octopus_folded_buckets(octopus):
    histogram = octopus.ortho.classify_edges().folded_histogram()

    assert len(histogram) == 4
    for (expected, count), row in zip(octopus_buckets, histogram.itertuples(index=False)):
        assert abs(row.Folded - expected) <= 1e-9
        assert row.Count == count

    assert histogram.Degrees.round(4).tolist() == [45.0, 54.7356, 60.0, 70.5288]


def test_octopus_interior_angles(octopus):
    angles = np.sort(octopus.ortho.dihedral_angles())
    expected = np.sort(
        np.repeat(
            [3 * np.pi / 4, np.arctan(np.sqrt(2)), np.pi - 2 * np.arctan(np.sqrt(2)), 5 * np.pi / 3],
            [24, 24, 12, 24],
        )
    )

    np.testing.assert_allclose(angles, expected, atol=1e-9)


def test_octopus_square_rim(octopus):
    cls = octopus.ortho.classify_edges()
    square = [f for f in range(42) if octopus.areas[f] == pytest.approx(1.0)]
    assert len(square) == 6

    rim = [octopus.edge_id(u, v) for u, v in zip(octopus.faces[square[0]], octopus.faces[square[0]][1:])]
    np.testing.assert_allclose(cls.df.loc[rim, "Folded"], np.pi / 4, atol=1e-12)


def test_octopus_cubes_mixed(octopus_cubes):
    cls = octopus_cubes.ortho.classify_edges()

    assert cls.n_red == 84
    assert len(cls.green) == 48
    assert octopus_cubes.ortho.certificate().status == "Fail"


def test_frame_torus_green(frame_torus):
    cls = frame_torus.ortho.classify_edges()

    assert cls.n_red == 0
    assert set(cls.df.NearestK) == {1, 2, 3}
    assert (cls.df.NearestK == 3).sum() == 4
    assert orthogonal.orthogonality_certificate(frame_torus).passed


def test_classify_angles():
    df = orthogonal.classify_angles([np.pi / 2 + 1e-12, 0.5, np.pi, 2.0, 3 * np.pi / 2])

    assert df.Color.tolist() == ["green", "red", "green", "red", "green"]
    assert df.NearestK.tolist() == [1, 0, 2, 1, 3]
    assert (df.Deviation <= np.pi / 4).all()


def test_classify_angles_reflex_invariance():
    angles = np.random.default_rng(0).uniform(0.01, 2 * np.pi - 0.01, 200)
    angles[::7] = np.rint(angles[::7] / (np.pi / 2)) * np.pi / 2

    colors = orthogonal.classify_angles(angles).Color
    reflected = orthogonal.classify_angles(2 * np.pi - angles).Color

    assert colors.tolist() == reflected.tolist()


def test_folded_angle():
    assert orthogonal.folded_angle(3 * np.pi / 4) == pytest.approx(np.pi / 4)
    assert orthogonal.folded_angle(5 * np.pi / 3) == pytest.approx(np.pi / 3)
    assert orthogonal.folded_angle(np.pi) == pytest.approx(0.0)


def test_tolerance_from_environment(monkeypatch):
    angle = [np.pi / 2 + 1e-4]
    assert orthogonal.classify_angles(angle).Color[0] == "red"

    monkeypatch.setenv("RECTIPOLY_TOL", "1e-3")
    assert orthogonal.classify_angles(angle).Color[0] == "green"
    assert orthogonal.classify_angles(angle, tol=1e-6).Color[0] == "red"

    monkeypatch.setenv("RECTIPOLY_TOL", "tight")
    with pytest.raises(ValueError):
        orthogonal.classify_angles(angle)


def test_rectangle_check_octopus(octopus):
    report = orthogonal.rectangle_check(octopus)

    assert report.all_rectangles
    assert report.counts() == {(3.0, 1.0): 12, (3.0, 0.866025): 24, (1.0, 1.0): 6}

    sides = report.verdicts.set_index("Face")
    long_thin = sides[(sides.Short - np.sqrt(3) / 2).abs() < 1e-9]
    assert len(long_thin) == 24
    np.testing.assert_allclose(long_thin.Long, 3.0, atol=1e-9)


def test_rectangle_check_frame_torus(frame_torus):
    report = frame_torus.ortho.rectangle_check()

    assert report.all_rectangles
    assert report.counts() == {(2.0, 1.0): 12, (1.0, 1.0): 8}
    assert report.labels() == {"1x1": 8, "2x1": 12}


def test_rectangle_check_parallelogram():
    mesh = rp.Mesh([(0, 0, 0), (2, 0, 0), (3, 1, 0), (1, 1, 0)], [(0, 1, 2, 3)], closed=False)
    report = orthogonal.rectangle_check(mesh)

    assert not report.all_rectangles
    assert report.non_rectangles == [0]
    assert report.inventory.empty


def test_rectangle_check_unequal_sides():
    # right angles at three corners only
    mesh = rp.Mesh([(0, 0, 0), (2, 0, 0), (2, 1, 0), (0, 1.5, 0)], [(0, 1, 2, 3)], closed=False)

    assert orthogonal.rectangle_check(mesh).non_rectangles == [0]
