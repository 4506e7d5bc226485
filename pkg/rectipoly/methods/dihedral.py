import numpy as np
import pandas as pd

QUARTER = np.pi / 2

CLASSIFICATION_COLUMNS = ["Angle", "Folded", "NearestK", "Deviation", "Color"]


def _dihedral_angles(mesh):
    """Interior dihedral angle of every edge, NaN on boundary edges.

    Face1 traverses V1 -> V2, so the edge direction seen from Face1 fixes the
    sign of the turn from Face1's normal to Face2's normal."""

    edges = mesh.edges
    angles = np.full(len(edges), np.nan)

    interior = (edges.Face2 >= 0).to_numpy()
    if not interior.any():
        return angles

    v1 = edges.V1.to_numpy()[interior]
    v2 = edges.V2.to_numpy()[interior]
    n1 = mesh.normals[edges.Face1.to_numpy()[interior]]
    n2 = mesh.normals[edges.Face2.to_numpy()[interior]]

    direction = mesh.points[v2] - mesh.points[v1]
    direction /= np.linalg.norm(direction, axis=1)[:, None]

    turn = np.arctan2(np.einsum("ij,ij->i", np.cross(n1, n2), direction), np.einsum("ij,ij->i", n1, n2))
    angles[interior] = np.pi - turn

    return angles


def _folded(angles):
    """Acute angle between the two face planes, in [0, pi/2]."""

    x = np.mod(angles, np.pi)
    return np.minimum(x, np.pi - x)


def _rectilinear(angles, tol):
    """True where an angle lies within tol of a multiple of pi/2."""

    angles = np.asarray(angles, dtype=float)
    return np.abs(angles - np.rint(angles / QUARTER) * QUARTER) <= tol


def _classify(angles, tol):
    angles = np.asarray(angles, dtype=float)

    nearest_k = np.rint(angles / QUARTER)
    deviation = np.abs(angles - nearest_k * QUARTER)

    return pd.DataFrame(
        {
            "Angle": angles,
            "Folded": _folded(angles),
            "NearestK": nearest_k.astype("int64"),
            "Deviation": deviation,
            "Color": np.where(deviation <= tol, "green", "red"),
        }
    )


def _folded_histogram(angles, bucket):
    df = pd.DataFrame({"Folded": _folded(np.asarray(angles, dtype=float))})
    df.insert(0, "Bucket", np.rint(df.Folded / bucket).astype("int64"))

    histogram = df.groupby("Bucket").Folded.agg(["mean", "size"]).reset_index(drop=True)
    histogram.columns = ["Folded", "Count"]
    histogram.insert(1, "Degrees", np.degrees(histogram.Folded))

    return histogram
