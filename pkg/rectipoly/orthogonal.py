"""Dihedral angles, red/green edge colors and rectangle faces.

An angle is rectilinear when it is a multiple of pi/2. Edges with a
rectilinear dihedral angle are green, all others red; a closed mesh is
orthogonal when all its edges are green.
"""

from dataclasses import dataclass

import numpy as np
import pandas as pd
from natsort import natsorted  # type: ignore
from tabulate import tabulate

from rectipoly.errors import OpenMesh
from rectipoly.helpers import fill_kwargs
from rectipoly.methods.dihedral import _classify, _dihedral_angles, _folded, _folded_histogram
from rectipoly.methods.rectangles import _inventory, _rectangle_verdicts

__all__ = [
    "OrthoMethods",
    "DihedralClassification",
    "RectangleReport",
    "Certificate",
    "dihedral_angle",
    "dihedral_angles",
    "folded_angle",
    "classify_angles",
    "classify_edges",
    "rectangle_check",
    "orthogonality_certificate",
]


class DihedralClassification:
    """Interior dihedral angle and color of every edge of a closed mesh.

    The underlying DataFrame `df` is indexed by edge id and has the columns
    V1, V2, Angle (interior, radians in (0, 2pi)), Folded (acute angle
    between the face planes), NearestK, Deviation (from NearestK * pi/2) and
    Color ("red" or "green")."""

    def __init__(self, df, tol):
        self.df = df
        self.tol = tol

    def __len__(self):
        return len(self.df)

    def __str__(self):
        df = self.df.reset_index().rename(columns={"index": "Edge"})
        str_repr = tabulate(df.head(8), headers=df.columns, tablefmt="psql", showindex=False)
        if len(df) > 8:
            str_repr += "\n..."
        return str_repr + f"\n{self.n_red} red and {len(self) - self.n_red} green edges (tol={self.tol:g})."

    def __repr__(self):
        return str(self)

    @property
    def red(self):
        return self.df[self.df.Color == "red"]

    @property
    def green(self):
        return self.df[self.df.Color == "green"]

    @property
    def n_red(self):
        return int((self.df.Color == "red").sum())

    @property
    def red_edges(self):
        return self.red.index.to_list()

    def folded_histogram(self, bucket=None):
        """Count edges per folded angle, bucketed at `bucket` radians."""

        bucket = fill_kwargs({"bucket": bucket})["bucket"]
        return _folded_histogram(self.df.Angle, bucket)


@dataclass(frozen=True)
class RectangleReport:
    """Per-face rectangle verdicts and the inventory of rectangle sizes.

    `verdicts` has columns Face, IsRectangle, Long and Short; `inventory`
    groups rectangles by (Long, Short) with columns Long, Short and Count."""

    verdicts: pd.DataFrame
    inventory: pd.DataFrame

    @property
    def all_rectangles(self):
        return bool(self.verdicts.IsRectangle.all())

    @property
    def non_rectangles(self):
        return self.verdicts[~self.verdicts.IsRectangle].Face.to_list()

    def counts(self, decimals=6):
        """Inventory as a dict {(long, short): count} with rounded sides.

        Examples
        --------
        >>> import rectipoly as rp
        >>> rp.constructions.make_cube().ortho.rectangle_check().counts()
        {(1.0, 1.0): 6}
        """

        return {
            (round(float(row.Long), decimals), round(float(row.Short), decimals)): int(row.Count)
            for row in self.inventory.itertuples(index=False)
        }

    def labels(self, decimals=6):
        """Inventory keyed by "long x short" strings, in natural order."""

        counts = {f"{long:g}x{short:g}": n for (long, short), n in self.counts(decimals).items()}
        return {k: counts[k] for k in natsorted(counts)}


@dataclass(frozen=True)
class Certificate:
    passed: bool
    red_edges: pd.DataFrame

    @property
    def status(self):
        return "Pass" if self.passed else "Fail"

    def __str__(self):
        if self.passed:
            return "Pass"
        return f"Fail ({len(self.red_edges)} red edges)"


def _require_closed(mesh, what):
    if not mesh.closed:
        raise OpenMesh(f"{what} needs a closed mesh")


def dihedral_angles(mesh):
    """Interior dihedral angle of every edge, indexed by edge id."""

    return _dihedral_angles(mesh)


def dihedral_angle(mesh, edge):
    """Interior dihedral angle of one edge, in radians.

    The angle is measured inside the solid: convex edges are below pi and
    reflex edges above.

    Parameters
    ----------
    mesh : Mesh

    edge : int or tuple of (int, int)
        Edge id or vertex pair.

    Examples
    --------
    >>> import rectipoly as rp
    >>> cube = rp.constructions.make_cube()
    >>> round(rp.orthogonal.dihedral_angle(cube, (0, 1)), 12) == round(np.pi / 2, 12)
    True
    """

    if isinstance(edge, tuple):
        edge = mesh.edge_id(*edge)

    _, face2 = mesh.edge_faces(edge)
    if face2 < 0:
        raise ValueError(f"edge {edge} lies on the boundary and has no dihedral angle")

    return float(_dihedral_angles(mesh)[edge])


def folded_angle(angle):
    """Acute angle between two planes meeting at the given dihedral angle."""

    return float(_folded(np.asarray(angle, dtype=float)))


def classify_angles(angles, tol=None):
    """Classify angles as rectilinear (green) or not (red).

    Parameters
    ----------
    angles : array-like of float
        Angles in radians.

    tol : float, default None
        Largest deviation from a multiple of pi/2 still counted as green.
        Defaults to 1e-9 or the RECTIPOLY_TOL environment variable.

    Returns
    -------
    DataFrame with columns Angle, Folded, NearestK, Deviation and Color.

    Examples
    --------
    >>> import rectipoly as rp
    >>> rp.orthogonal.classify_angles([np.pi / 2, 1.0, 3 * np.pi / 2]).Color.to_list()
    ['green', 'red', 'green']
    """

    tol = fill_kwargs({"tol": tol})["tol"]
    return _classify(angles, tol)


def classify_edges(mesh, tol=None):
    """Color every edge of a closed mesh by its dihedral angle.

    Returns
    -------
    DihedralClassification

    Examples
    --------
    >>> import rectipoly as rp
    >>> rp.orthogonal.classify_edges(rp.constructions.make_octopus()).n_red
    84
    """

    _require_closed(mesh, "edge classification")
    tol = fill_kwargs({"tol": tol})["tol"]

    df = _classify(_dihedral_angles(mesh), tol)
    edges = mesh.edges
    df.insert(0, "V1", edges.V1)
    df.insert(1, "V2", edges.V2)

    return DihedralClassification(df, tol)


def rectangle_check(mesh, tol=None):
    """Test every face for being a rectangle and inventory the sizes.

    Vertices with a straight angle are not corners, so a rectangle may carry
    extra vertices on its sides.

    Returns
    -------
    RectangleReport
    """

    kwargs = fill_kwargs({"tol": tol})
    verdicts = _rectangle_verdicts(mesh, kwargs["tol"])

    return RectangleReport(verdicts, _inventory(verdicts, kwargs["bucket"]))


def orthogonality_certificate(mesh, tol=None):
    """Pass iff every edge of the closed mesh is green.

    Examples
    --------
    >>> import rectipoly as rp
    >>> str(rp.orthogonal.orthogonality_certificate(rp.constructions.make_cube()))
    'Pass'
    >>> str(rp.orthogonal.orthogonality_certificate(rp.constructions.make_octopus()))
    'Fail (84 red edges)'
    """

    classification = classify_edges(mesh, tol=tol)
    red = classification.red[["V1", "V2", "Angle", "Deviation"]]

    return Certificate(red.empty, red)


class OrthoMethods:
    """Namespace for orthogonality analysis.

    Accessed through `mesh.ortho`."""

    mesh = None

    def __init__(self, mesh):
        self.mesh = mesh

    def dihedral_angle(self, edge):
        return dihedral_angle(self.mesh, edge)

    def dihedral_angles(self):
        return dihedral_angles(self.mesh)

    def classify_edges(self, tol=None):
        return classify_edges(self.mesh, tol=tol)

    def rectangle_check(self, tol=None):
        return rectangle_check(self.mesh, tol=tol)

    def certificate(self, tol=None):
        return orthogonality_certificate(self.mesh, tol=tol)

    def spherical_link(self, v, tol=None):
        from rectipoly.spherical import spherical_link

        return spherical_link(self.mesh, v, tol=tol)

    def red_graphs(self, tol=None, collinear_tol=None):
        from rectipoly.redgraph import build_red_graph

        return build_red_graph(self.mesh, self.classify_edges(tol=tol), collinear_tol=collinear_tol)

    def audit(self, tol=None):
        from rectipoly.redgraph import g01_audit

        return g01_audit(self.mesh, tol=tol)
