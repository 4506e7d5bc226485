import numpy as np
import pandas as pd

from rectipoly.helpers import bucket_values


def _vertex_angles(pts):
    to_prev = np.roll(pts, 1, axis=0) - pts
    to_next = np.roll(pts, -1, axis=0) - pts

    return np.arctan2(
        np.linalg.norm(np.cross(to_prev, to_next), axis=1),
        np.einsum("ij,ij->i", to_prev, to_next),
    )


def _rectangle_sides(pts, tol):
    """Side lengths (long, short) if the polygon is a rectangle, else None.

    Vertices with a straight angle lie on a side and are not corners."""

    angles = _vertex_angles(pts)
    is_corner = np.abs(angles - np.pi) > tol

    if is_corner.sum() != 4:
        return None

    if (np.abs(angles[is_corner] - np.pi / 2) > tol).any():
        return None

    corners = pts[is_corner]
    sides = np.linalg.norm(np.roll(corners, -1, axis=0) - corners, axis=1)

    scale = sides.max()
    if abs(sides[0] - sides[2]) > tol * scale or abs(sides[1] - sides[3]) > tol * scale:
        return None

    return max(sides[0], sides[1]), min(sides[0], sides[1])


def _rectangle_verdicts(mesh, tol):
    rows = []
    for f, loop in enumerate(mesh.faces):
        sides = _rectangle_sides(mesh.points[list(loop)], tol)
        if sides is None:
            rows.append((f, False, np.nan, np.nan))
        else:
            rows.append((f, True, sides[0], sides[1]))

    return pd.DataFrame(rows, columns=["Face", "IsRectangle", "Long", "Short"])


def _inventory(verdicts, bucket):
    rectangles = verdicts[verdicts.IsRectangle]
    if rectangles.empty:
        return pd.DataFrame(columns=["Long", "Short", "Count"])

    df = rectangles[["Long", "Short"]].copy()
    df.insert(0, "LongBucket", bucket_values(df.Long, bucket))
    df.insert(1, "ShortBucket", bucket_values(df.Short, bucket))

    inventory = df.groupby(["LongBucket", "ShortBucket"]).agg(
        Long=("Long", "mean"), Short=("Short", "mean"), Count=("Long", "size")
    )

    return inventory.sort_values(["Long", "Short"], ascending=False).reset_index(drop=True)
